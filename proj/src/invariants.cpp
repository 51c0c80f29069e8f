#include "braidknots/invariants.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <mutex>
#include <sstream>

#include "json.hpp"

#include "braidknots/braid_ops.hpp"
#include "braidknots/errors.hpp"
#include "modular.hpp"

namespace braidknots {

namespace modular {

u64 large_prime(std::size_t k) {
  static std::mutex mu;
  static std::vector<u64> primes;
  std::lock_guard lock(mu);
  u64 candidate = primes.empty() ? (1ull << 62) - 1 : primes.back() - 2;
  while (primes.size() <= k) {
    while (!is_prime(candidate)) candidate -= 2;
    primes.push_back(candidate);
    candidate -= 2;
  }
  return primes[k];
}

u64 determinant(std::vector<u64>& a, std::size_t n, u64 p) {
  u64 det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot * n + col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[pivot * n + j], a[col * n + j]);
      det = sub(0, det, p);
    }
    const u64 pv = a[col * n + col];
    det = mul(det, pv, p);
    const u64 inv = inverse(pv, p);
    for (std::size_t r = col + 1; r < n; ++r) {
      const u64 f = mul(a[r * n + col], inv, p);
      if (f == 0) continue;
      for (std::size_t j = col; j < n; ++j) a[r * n + j] = sub(a[r * n + j], mul(f, a[col * n + j], p), p);
    }
  }
  return det;
}

}  // namespace modular

namespace {

using modular::u64;

/// t^neg * det(I - reducedBurau(w)(x)) mod p.
u64 burau_value(const BraidWord& w, u64 x, u64 p) {
  const auto m = static_cast<std::size_t>(w.strands() - 1);
  // column-major: cols[j * m + i] = M[i][j]
  std::vector<u64> cols(m * m, 0);
  for (std::size_t i = 0; i < m; ++i) cols[i * m + i] = 1;
  const u64 x_inv = modular::inverse(x, p);
  std::vector<u64> fresh(m);
  std::size_t negatives = 0;
  for (Letter l : w.letters()) {
    // The generator matrix differs from the identity only in column b.
    const auto b = static_cast<std::size_t>(letter_index(l) - 1);
    const bool has_a = b >= 1;
    const bool has_c = b + 1 < m;
    u64 ca, cb, cc;
    if (l > 0) {
      ca = x;
      cb = modular::sub(0, x, p);
      cc = 1;
    } else {
      ++negatives;
      ca = 1;
      cb = modular::sub(0, x_inv, p);
      cc = x_inv;
    }
    for (std::size_t i = 0; i < m; ++i) {
      u64 v = modular::mul(cb, cols[b * m + i], p);
      if (has_a) v = modular::add(v, modular::mul(ca, cols[(b - 1) * m + i], p), p);
      if (has_c) v = modular::add(v, modular::mul(cc, cols[(b + 1) * m + i], p), p);
      fresh[i] = v;
    }
    std::copy(fresh.begin(), fresh.end(), cols.begin() + static_cast<std::ptrdiff_t>(b * m));
  }
  // I - M, row-major
  std::vector<u64> a(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const u64 v = modular::sub(0, cols[j * m + i], p);
      a[i * m + j] = i == j ? modular::add(v, 1, p) : v;
    }
  }
  const u64 det = modular::determinant(a, m, p);
  return modular::mul(det, modular::pow(x, negatives, p), p);
}

/// Coefficients (degree 0..d) of the polynomial through (xs[k], ys[k]).
std::vector<u64> interpolate(const std::vector<u64>& xs, std::vector<u64> ys, u64 p) {
  const std::size_t n = xs.size();
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = n - 1; i >= j; --i) {
      const u64 num = modular::sub(ys[i], ys[i - 1], p);
      const u64 den = modular::sub(xs[i], xs[i - j], p);
      ys[i] = modular::mul(num, modular::inverse(den, p), p);
    }
  }
  std::vector<u64> poly(n, 0);
  poly[0] = ys[n - 1];
  std::size_t deg = 0;
  for (std::size_t k = n - 1; k-- > 0;) {
    // poly = poly * (x - xs[k]) + ys[k]
    for (std::size_t i = deg + 1; i > 0; --i) {
      poly[i] = modular::sub(poly[i - 1], modular::mul(poly[i], xs[k], p), p);
    }
    poly[0] = modular::add(modular::sub(0, modular::mul(poly[0], xs[k], p), p), ys[k], p);
    ++deg;
  }
  return poly;
}

u64 horner(const std::vector<u64>& poly, u64 x, u64 p) {
  u64 v = 0;
  for (std::size_t i = poly.size(); i-- > 0;) v = modular::add(modular::mul(v, x, p), poly[i], p);
  return v;
}

/// Exact integer coefficients of t^neg * det(I - reducedBurau(w)), a
/// polynomial of degree at most |w|. Chinese remaindering over 62-bit primes
/// until the symmetric lift is stable across two consecutive primes.
std::vector<BigInt> burau_determinant(const BraidWord& w) {
  const std::size_t degree = w.size();
  std::vector<u64> xs(degree + 1);
  for (std::size_t k = 0; k <= degree; ++k) xs[k] = k + 1;
  const u64 check_x = degree + 2;

  std::vector<BigInt> residue(degree + 1, 0);
  BigInt modulus = 1;
  std::vector<BigInt> previous;
  constexpr std::size_t kMaxPrimes = 256;
  for (std::size_t k = 0; k < kMaxPrimes; ++k) {
    const u64 p = modular::large_prime(k);
    std::vector<u64> ys(degree + 1);
    for (std::size_t j = 0; j <= degree; ++j) ys[j] = burau_value(w, xs[j], p);
    const auto coeffs = interpolate(xs, ys, p);
    if (horner(coeffs, check_x, p) != burau_value(w, check_x, p)) {
      throw InternalConsistencyError("Burau determinant exceeds its degree bound");
    }
    const u64 mod_p = static_cast<u64>(modulus % p);
    const u64 inv = modular::inverse(mod_p, p);
    for (std::size_t i = 0; i <= degree; ++i) {
      const u64 r_p = static_cast<u64>(residue[i] % p);
      const u64 step = modular::mul(modular::sub(coeffs[i], r_p, p), inv, p);
      residue[i] += modulus * step;
    }
    modulus *= p;
    const BigInt half = modulus / 2;
    std::vector<BigInt> lifted(degree + 1);
    for (std::size_t i = 0; i <= degree; ++i) lifted[i] = residue[i] > half ? BigInt(residue[i] - modulus) : residue[i];
    if (k > 0 && lifted == previous) return lifted;
    previous = std::move(lifted);
  }
  throw ResourceError("Alexander polynomial: coefficient reconstruction did not stabilize");
}

}  // namespace

BigPoly alexander(const BraidWord& w) {
  const int comps = closure_components(w);
  if (comps != 1) throw NotAKnotError(comps);
  const int n = w.strands();
  if (n == 1) return BigPoly::constant(1);

  std::size_t negatives = 0;
  for (Letter l : w.letters()) negatives += l < 0 ? 1 : 0;
  const auto coeffs = burau_determinant(w);
  std::map<int, BigInt> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) terms[static_cast<int>(i) - static_cast<int>(negatives)] = coeffs[i];
  }
  const BigPoly det = BigPoly::from_terms(terms);
  std::map<int, BigInt> geometric;
  for (int e = 0; e < n; ++e) geometric[e] = 1;
  BigPoly delta = divide_exact(det, BigPoly::from_terms(geometric));
  if (delta.is_zero() || delta.span() % 2 != 0) {
    throw InternalConsistencyError("Alexander polynomial of a knot must have even span");
  }
  delta = delta.shifted(-(delta.min_exponent() + delta.span() / 2));
  const BigInt at_one = delta.evaluate_unit(1);
  if (at_one == -1) {
    delta = -delta;
  } else if (at_one != 1) {
    throw InternalConsistencyError("Alexander polynomial of a knot must satisfy |Delta(1)| = 1");
  }
  if (!delta.is_palindromic()) throw InternalConsistencyError("Alexander polynomial is not symmetric");
  return delta;
}

int arf_from_alexander(const BigPoly& delta) {
  BigInt v = delta.evaluate_unit(-1);
  if (v < 0) v = -v;
  const int r = static_cast<int>(v % 8);
  if (r == 1 || r == 7) return 0;
  if (r == 3 || r == 5) return 1;
  throw InternalConsistencyError("Delta(-1) is even; not the Alexander polynomial of a knot");
}

int arf(const BraidWord& w) { return arf_from_alexander(alexander(w)); }

std::string_view to_string(FilterVerdict v) {
  return v == FilterVerdict::PassesUnknotValues ? "PassesUnknotValues" : "ProvablyNontrivial";
}

InvariantFingerprint fingerprint(const BraidWord& w, std::size_t jones_cap) {
  InvariantFingerprint fp;
  fp.components = closure_components(w);
  if (fp.components != 1) throw NotAKnotError(fp.components);
  fp.alexander = alexander(w);
  fp.arf = arf_from_alexander(fp.alexander);
  if (w.size() <= jones_cap) fp.jones = jones(w, jones_cap);
  return fp;
}

FilterVerdict unknot_filter(const InvariantFingerprint& fp) {
  if (fp.arf != 0) return FilterVerdict::ProvablyNontrivial;
  if (!(fp.alexander == BigPoly::constant(1))) return FilterVerdict::ProvablyNontrivial;
  if (fp.jones && !(*fp.jones == Poly::constant(1))) return FilterVerdict::ProvablyNontrivial;
  return FilterVerdict::PassesUnknotValues;
}

FilterVerdict unknot_filter(const BraidWord& w, std::size_t jones_cap) {
  return unknot_filter(fingerprint(w, jones_cap));
}

std::string poly_key(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  os << p.min_exponent();
  for (int e = p.min_exponent(); e <= p.max_exponent(); ++e) os << ',' << p.coefficient(e);
  return os.str();
}

int crossings_from_name(std::string_view name) {
  std::size_t i = 0;
  while (i < name.size() && !std::isdigit(static_cast<unsigned char>(name[i]))) ++i;
  int value = 0;
  const auto res = std::from_chars(name.data() + i, name.data() + name.size(), value);
  if (res.ec != std::errc() || res.ptr == name.data() + i) {
    throw std::invalid_argument("cannot read crossing number from knot name '" + std::string(name) + "'");
  }
  return value;
}

void KnotReferenceTable::add(const Poly& jones, Match match) {
  auto [it, inserted] = by_jones_.emplace(poly_key(jones), match);
  if (!inserted && it->second.name != match.name) collisions_.push_back(match.name);
}

KnotReferenceTable KnotReferenceTable::from_jsonl(std::string_view text) {
  KnotReferenceTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      Entry e;
      e.name = j.at("name").get<std::string>();
      e.braid = BraidWord(j.at("braid").get<std::vector<Letter>>());
      if (j.contains("mirror_of")) e.mirror_of = j.at("mirror_of").get<std::string>();
      e.crossings = crossings_from_name(e.name);
      e.jones = jones(e.braid);
      table.entries_.push_back(std::move(e));
    } catch (const nlohmann::json::exception& ex) {
      throw std::invalid_argument("knot table line " + std::to_string(line_no) + ": " + ex.what());
    }
  }

  table.add(Poly::constant(1), {"0_1", 0, false});
  for (const auto& e : table.entries_) table.add(e.jones, {e.name, e.crossings, true});

  // connected sums with total crossing number <= 9; components listed in
  // table order, repetition allowed
  struct Partial {
    std::size_t last;
    int crossings;
    Poly jones;
    std::vector<std::string> names;
  };
  std::vector<Partial> frontier;
  for (std::size_t i = 0; i < table.entries_.size(); ++i) {
    const auto& e = table.entries_[i];
    frontier.push_back({i, e.crossings, e.jones, {e.name}});
  }
  while (!frontier.empty()) {
    std::vector<Partial> grown;
    for (const auto& part : frontier) {
      for (std::size_t i = part.last; i < table.entries_.size(); ++i) {
        const auto& e = table.entries_[i];
        if (part.crossings + e.crossings > 9) continue;
        Partial next{i, part.crossings + e.crossings, part.jones * e.jones, part.names};
        next.names.push_back(e.name);
        std::string name;
        for (std::size_t k = 0; k < next.names.size(); ++k) name += (k ? " # " : "") + next.names[k];
        table.add(next.jones, {name, next.crossings, false});
        ++table.composite_count_;
        grown.push_back(std::move(next));
      }
    }
    frontier = std::move(grown);
  }
  return table;
}

const KnotReferenceTable::Match* KnotReferenceTable::lookup(const Poly& jones) const {
  const auto it = by_jones_.find(poly_key(jones));
  return it == by_jones_.end() ? nullptr : &it->second;
}

extern const char* const kBuiltinKnotTable;

const KnotReferenceTable& KnotReferenceTable::builtin() {
  static const KnotReferenceTable table = from_jsonl(kBuiltinKnotTable);
  return table;
}

Identification identify_small_knot(const BraidWord& w, const KnotReferenceTable& table, std::size_t crossing_cap) {
  Identification id;
  Poly v;
  try {
    v = jones(w, crossing_cap);
  } catch (const ResourceError&) {
    id.resource_limited = true;
    return id;
  }
  if (const auto* m = table.lookup(v)) id.match = *m;
  return id;
}

}  // namespace braidknots
