#pragma once

// Slow, independent reference implementations used only by the tests.

#include <cstdint>
#include <numeric>
#include <vector>

#include "braidknots/braid_ops.hpp"
#include "braidknots/braid_word.hpp"
#include "braidknots/errors.hpp"
#include "braidknots/laurent.hpp"
#include "braidknots/rng.hpp"

namespace oracle {

using braidknots::BigInt;
using braidknots::BigPoly;
using braidknots::BraidWord;
using braidknots::Poly;

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }
  std::size_t classes() {
    std::size_t n = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i) n += find(i) == i ? 1 : 0;
    return n;
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Kauffman bracket by enumerating all 2^c smoothings of the closure.
/// Node (level, position): the strand piece at `position` just above letter
/// `level` (level c is the bottom, glued to level 0 by the closure).
/// sigma_i weighs the vertical smoothing by A and the cup-cap one by A^-1;
/// the inverse letter swaps the weights.
inline Poly kauffman_bracket_bruteforce(const BraidWord& w) {
  const std::size_t c = w.size();
  const auto n = static_cast<std::size_t>(w.strands());
  auto node = [n](std::size_t level, std::size_t pos) { return level * n + pos; };
  const Poly delta = Poly::monomial(-1, 2) + Poly::monomial(-1, -2);
  Poly total;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << c); ++mask) {
    UnionFind uf((c + 1) * n);
    for (std::size_t k = 0; k < n; ++k) uf.unite(node(c, k), node(0, k));
    int a_power = 0;
    for (std::size_t t = 0; t < c; ++t) {
      const auto p = static_cast<std::size_t>(braidknots::letter_index(w[t]) - 1);
      for (std::size_t k = 0; k < n; ++k) {
        if (k != p && k != p + 1) uf.unite(node(t, k), node(t + 1, k));
      }
      const bool vertical = ((mask >> t) & 1) == 0;
      if (vertical) {
        uf.unite(node(t, p), node(t + 1, p));
        uf.unite(node(t, p + 1), node(t + 1, p + 1));
      } else {
        uf.unite(node(t, p), node(t, p + 1));
        uf.unite(node(t + 1, p), node(t + 1, p + 1));
      }
      const int sign = braidknots::letter_sign(w[t]);
      a_power += vertical ? sign : -sign;
    }
    Poly term = Poly::monomial(1, a_power);
    for (std::size_t l = 1; l < uf.classes(); ++l) term = term * delta;
    total += term;
  }
  return total;
}

/// Reduced Burau matrix of one letter with Laurent-polynomial entries in t,
/// as a dense (n-1)x(n-1) matrix. Columns b-1, b, b+1 of sigma_b carry
/// (t, -t, 1) in row b; the inverse letter carries (1, -1/t, 1/t).
inline std::vector<std::vector<BigPoly>> burau_letter(int letter, int strands) {
  const auto m = static_cast<std::size_t>(strands - 1);
  std::vector<std::vector<BigPoly>> g(m, std::vector<BigPoly>(m));
  for (std::size_t i = 0; i < m; ++i) g[i][i] = BigPoly::constant(1);
  const auto b = static_cast<std::size_t>(braidknots::letter_index(letter) - 1);
  // the letter acts on column b: column_b' = ca * col_{b-1} + cb * col_b + cc * col_{b+1}
  BigPoly ca, cb, cc;
  if (letter > 0) {
    ca = BigPoly::monomial(1, 1);
    cb = BigPoly::monomial(-1, 1);
    cc = BigPoly::constant(1);
  } else {
    ca = BigPoly::constant(1);
    cb = BigPoly::monomial(-1, -1);
    cc = BigPoly::monomial(1, -1);
  }
  g[b][b] = cb;
  if (b >= 1) g[b - 1][b] = ca;
  if (b + 1 < m) g[b + 1][b] = cc;
  return g;
}

inline std::vector<std::vector<BigPoly>> multiply(const std::vector<std::vector<BigPoly>>& x,
                                                  const std::vector<std::vector<BigPoly>>& y) {
  const std::size_t m = x.size();
  std::vector<std::vector<BigPoly>> z(m, std::vector<BigPoly>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < m; ++k) {
      if (x[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) z[i][j] += x[i][k] * y[k][j];
    }
  return z;
}

/// Fraction-free (Bareiss) determinant over Z[t, t^-1].
inline BigPoly bareiss_determinant(std::vector<std::vector<BigPoly>> a) {
  const std::size_t n = a.size();
  if (n == 0) return BigPoly::constant(1);
  BigPoly prev = BigPoly::constant(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a[r][k].is_zero()) ++r;
      if (r == n) return {};
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = divide_exact(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
      }
      a[i][k] = BigPoly();
    }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

/// Alexander polynomial from the symbolic reduced Burau matrix:
/// det(I - rho(w)) / (1 + t + ... + t^{n-1}), centred and with value +1 at t = 1.
inline BigPoly alexander_symbolic(const BraidWord& w) {
  const int n = w.strands();
  if (n == 1) return BigPoly::constant(1);
  const auto m = static_cast<std::size_t>(n - 1);
  std::vector<std::vector<BigPoly>> rho(m, std::vector<BigPoly>(m));
  for (std::size_t i = 0; i < m; ++i) rho[i][i] = BigPoly::constant(1);
  for (int l : w.letters()) rho = multiply(rho, burau_letter(l, n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) rho[i][j] = (i == j ? BigPoly::constant(1) : BigPoly()) - rho[i][j];
  std::map<int, BigInt> geo;
  for (int e = 0; e < n; ++e) geo[e] = 1;
  BigPoly d = divide_exact(bareiss_determinant(rho), BigPoly::from_terms(geo));
  d = d.shifted(-(d.min_exponent() + d.span() / 2));
  if (d.evaluate_unit(1) < 0) d = -d;
  return d;
}

/// Uniform random word with up to `max_len` letters over Br_{strands}.
inline BraidWord random_word(braidknots::Rng& rng, std::size_t min_len, std::size_t max_len, int strands) {
  const auto len = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(min_len),
                                                            static_cast<std::int64_t>(max_len)));
  std::vector<int> letters;
  for (std::size_t i = 0; i < len; ++i) {
    const int g = static_cast<int>(rng.uniform_int(1, strands - 1));
    letters.push_back(rng.coin() ? -g : g);
  }
  return BraidWord(std::move(letters), strands);
}

/// Random word whose closure is a knot: random letters, then knotify.
inline BraidWord random_knot_word(braidknots::Rng& rng, std::size_t max_len, int strands) {
  return braidknots::knotify(random_word(rng, 1, max_len, strands), rng);
}

}  // namespace oracle
