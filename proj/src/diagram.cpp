#include "braidknots/diagram.hpp"

#include <cstdlib>
#include <string>
#include <unordered_map>

#include "braidknots/braid_ops.hpp"
#include "braidknots/errors.hpp"

namespace braidknots {

KnotDiagram closure_diagram(const BraidWord& w) {
  KnotDiagram d;
  d.strands = w.strands();
  d.crossings.reserve(w.size());
  for (Letter l : w.letters()) d.crossings.push_back({letter_sign(l), letter_index(l) - 1});

  for (const auto& cycle : closure_cycles(w)) {
    std::vector<Visit> walk;
    const int start = cycle.front();
    int pos = start;
    do {
      for (std::size_t t = 0; t < d.crossings.size(); ++t) {
        const Crossing& c = d.crossings[t];
        if (pos == c.position) {
          // leaving the left slot: over for sigma_i, under for its inverse
          walk.push_back({static_cast<int>(t), c.sign > 0});
          pos = c.position + 1;
        } else if (pos == c.position + 1) {
          walk.push_back({static_cast<int>(t), c.sign < 0});
          pos = c.position;
        }
      }
    } while (pos != start);
    d.components.push_back(std::move(walk));
  }
  return d;
}

namespace {

bool dt_less(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int x = std::abs(a[i]);
    const int y = std::abs(b[i]);
    if (x != y) return x < y;
    if (a[i] != b[i]) return a[i] > b[i];  // positive first
  }
  return false;
}

}  // namespace

std::vector<int> dt_code(const KnotDiagram& d) {
  if (d.components.size() != 1) throw NotAKnotError(static_cast<int>(d.components.size()));
  const auto& walk = d.components.front();
  const std::size_t c = d.crossings.size();
  if (c == 0) return {};
  const std::size_t len = walk.size();
  if (len != 2 * c) throw InternalConsistencyError("traversal does not visit every crossing twice");

  std::vector<int> best;
  std::vector<int> odd_label(c), even_label(c);
  std::vector<char> even_over(c);
  for (int orientation = 0; orientation < 2; ++orientation) {
    for (std::size_t r = 0; r < len; ++r) {
      std::fill(odd_label.begin(), odd_label.end(), 0);
      std::fill(even_label.begin(), even_label.end(), 0);
      for (std::size_t k = 0; k < len; ++k) {
        const std::size_t idx = orientation == 0 ? (r + k) % len : (r + len - k) % len;
        const Visit& v = walk[idx];
        const int label = static_cast<int>(k) + 1;
        const auto x = static_cast<std::size_t>(v.crossing);
        if (label % 2 == 1) {
          if (odd_label[x] != 0) throw InternalConsistencyError("crossing received two odd labels");
          odd_label[x] = label;
        } else {
          if (even_label[x] != 0) throw InternalConsistencyError("crossing received two even labels");
          even_label[x] = label;
          even_over[x] = v.over;
        }
      }
      std::vector<int> code(c);
      for (std::size_t x = 0; x < c; ++x) {
        const auto slot = static_cast<std::size_t>(odd_label[x] / 2);
        code[slot] = even_over[x] ? -even_label[x] : even_label[x];
      }
      if (best.empty() || dt_less(code, best)) best = std::move(code);
    }
  }
  return best;
}

Poly kauffman_bracket(const KnotDiagram& d, std::size_t crossing_cap) {
  if (d.crossings.size() > crossing_cap) {
    throw ResourceError("Kauffman bracket: " + std::to_string(d.crossings.size()) +
                        " crossings exceed cap " + std::to_string(crossing_cap));
  }
  const int n = d.strands;
  if (2 * n + 1 > 127) throw ResourceError("Kauffman bracket: too many strands");
  // Key: partner of each of the 2n cut points (tops 0..n-1, current bottoms
  // n..2n-1), followed by the number of loops already closed off.
  std::string init(static_cast<std::size_t>(2 * n + 1), '\0');
  for (int k = 0; k < n; ++k) {
    init[static_cast<std::size_t>(k)] = static_cast<char>(n + k);
    init[static_cast<std::size_t>(n + k)] = static_cast<char>(k);
  }
  const auto loops_slot = static_cast<std::size_t>(2 * n);
  std::unordered_map<std::string, Poly> states{{init, Poly::constant(1)}};

  for (const Crossing& c : d.crossings) {
    std::unordered_map<std::string, Poly> next;
    next.reserve(states.size() * 2);
    // sigma = A * id + A^{-1} * e ; sigma^{-1} = A^{-1} * id + A * e
    const int id_shift = c.sign > 0 ? 1 : -1;
    const int e_shift = -id_shift;
    const auto bp = static_cast<std::size_t>(n + c.position);
    const auto bq = bp + 1;
    for (auto& [key, poly] : states) {
      next[key] += poly.shifted(id_shift);
      std::string m = key;
      const auto x = static_cast<std::size_t>(m[bp]);
      const auto y = static_cast<std::size_t>(m[bq]);
      if (x == bq) {
        m[loops_slot] = static_cast<char>(m[loops_slot] + 1);
      } else {
        m[x] = static_cast<char>(y);
        m[y] = static_cast<char>(x);
      }
      m[bp] = static_cast<char>(bq);
      m[bq] = static_cast<char>(bp);
      next[m] += poly.shifted(e_shift);
    }
    states = std::move(next);
  }

  const Poly delta = Poly::monomial(-1, 2) + Poly::monomial(-1, -2);
  std::vector<Poly> delta_pow{Poly::constant(1)};
  Poly result;
  std::vector<char> seen(static_cast<std::size_t>(2 * n));
  for (const auto& [key, poly] : states) {
    if (poly.is_zero()) continue;
    std::fill(seen.begin(), seen.end(), 0);
    int loops = key[loops_slot];
    for (int s = 0; s < 2 * n; ++s) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      ++loops;
      // alternate matching edges and closure arcs (top k <-> bottom n+k)
      int p = s;
      do {
        seen[static_cast<std::size_t>(p)] = 1;
        const int q = key[static_cast<std::size_t>(p)];
        seen[static_cast<std::size_t>(q)] = 1;
        p = q < n ? q + n : q - n;
      } while (!seen[static_cast<std::size_t>(p)]);
    }
    while (delta_pow.size() < static_cast<std::size_t>(loops)) delta_pow.push_back(delta_pow.back() * delta);
    result += poly * delta_pow[static_cast<std::size_t>(loops - 1)];
  }
  return result;
}

int writhe(const BraidWord& w) { return w.writhe(); }

Poly jones(const BraidWord& w, std::size_t crossing_cap) {
  const Poly bracket = kauffman_bracket(closure_diagram(w), crossing_cap);
  const int wr = writhe(w);
  const Poly normalized = Poly::monomial(wr % 2 == 0 ? 1 : -1, -3 * wr) * bracket;
  return normalized.reflected();  // A = q^{-1}
}

Poly jones_t(const BraidWord& w, std::size_t crossing_cap) {
  return jones(w, crossing_cap).compress_exponents(4);
}

}  // namespace braidknots
