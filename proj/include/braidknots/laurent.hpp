#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace braidknots {

using BigInt = boost::multiprecision::cpp_int;

/// Integer Laurent polynomial, stored densely as coefficients of
/// x^lo, x^(lo+1), ... . The leading and trailing stored coefficients are
/// never zero; the zero polynomial has no coefficients.
template <class Coeff>
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;

  static LaurentPolynomial constant(Coeff c) { return monomial(std::move(c), 0); }

  static LaurentPolynomial monomial(Coeff c, int exponent) {
    LaurentPolynomial p;
    if (c != 0) {
      p.lo_ = exponent;
      p.coeffs_.push_back(std::move(c));
    }
    return p;
  }

  /// From (exponent, coefficient) pairs; duplicates are summed.
  static LaurentPolynomial from_terms(const std::map<int, Coeff>& terms) {
    LaurentPolynomial p;
    if (terms.empty()) return p;
    p.lo_ = terms.begin()->first;
    p.coeffs_.assign(static_cast<std::size_t>(terms.rbegin()->first - p.lo_ + 1), Coeff(0));
    for (const auto& [e, c] : terms) p.coeffs_[static_cast<std::size_t>(e - p.lo_)] += c;
    p.trim();
    return p;
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  int min_exponent() const { require_nonzero(); return lo_; }
  int max_exponent() const { require_nonzero(); return lo_ + static_cast<int>(coeffs_.size()) - 1; }
  /// max_exponent - min_exponent; 0 for the zero polynomial.
  int span() const noexcept { return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1; }

  Coeff coefficient(int exponent) const {
    if (coeffs_.empty() || exponent < lo_ || exponent > max_exponent()) return Coeff(0);
    return coeffs_[static_cast<std::size_t>(exponent - lo_)];
  }

  std::map<int, Coeff> terms() const {
    std::map<int, Coeff> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0) out.emplace(lo_ + static_cast<int>(i), coeffs_[i]);
    }
    return out;
  }

  /// Multiply by x^k.
  LaurentPolynomial shifted(int k) const {
    LaurentPolynomial p = *this;
    if (!p.coeffs_.empty()) p.lo_ += k;
    return p;
  }

  /// x -> x^factor (factor may be negative).
  LaurentPolynomial scale_exponents(int factor) const {
    if (factor == 0) throw std::invalid_argument("scale_exponents: factor 0");
    std::map<int, Coeff> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] != 0) out[(lo_ + static_cast<int>(i)) * factor] += coeffs_[i];
    }
    return from_terms(out);
  }

  /// x -> x^{-1}
  LaurentPolynomial reflected() const { return scale_exponents(-1); }

  /// Every exponent divisible by k; then x^k -> x.
  LaurentPolynomial compress_exponents(int k) const {
    std::map<int, Coeff> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const int e = lo_ + static_cast<int>(i);
      if (coeffs_[i] == 0) continue;
      if (e % k != 0) throw std::domain_error("exponent not divisible by " + std::to_string(k));
      out[e / k] += coeffs_[i];
    }
    return from_terms(out);
  }

  /// Value at an integer point; x must be +-1 if negative exponents occur
  /// and the result is to stay integral.
  Coeff evaluate_unit(int x) const {
    if (x != 1 && x != -1) throw std::invalid_argument("evaluate_unit: x must be +-1");
    Coeff sum(0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const int e = lo_ + static_cast<int>(i);
      if (x == -1 && (e % 2 != 0)) {
        sum -= coeffs_[i];
      } else {
        sum += coeffs_[i];
      }
    }
    return sum;
  }

  bool is_palindromic() const {
    if (coeffs_.empty()) return true;
    if (lo_ != -max_exponent()) return false;
    return std::equal(coeffs_.begin(), coeffs_.end(), coeffs_.rbegin());
  }

  LaurentPolynomial& operator+=(const LaurentPolynomial& o) { return accumulate(o, false); }
  LaurentPolynomial& operator-=(const LaurentPolynomial& o) { return accumulate(o, true); }

  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }

  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    LaurentPolynomial p;
    if (a.coeffs_.empty() || b.coeffs_.empty()) return p;
    p.lo_ = a.lo_ + b.lo_;
    p.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) p.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    p.trim();
    return p;
  }

  LaurentPolynomial& operator*=(const LaurentPolynomial& o) { return *this = *this * o; }

  friend LaurentPolynomial operator*(const Coeff& s, LaurentPolynomial a) {
    if (s == 0) return {};
    for (auto& c : a.coeffs_) c *= s;
    return a;
  }

  /// Exact quotient a / b in Z[x, x^-1]; throws std::domain_error if b does
  /// not divide a.
  friend LaurentPolynomial divide_exact(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return {};
    std::vector<Coeff> rem(a.coeffs_);
    const std::size_t nb = b.coeffs_.size();
    if (rem.size() < nb) throw std::domain_error("inexact polynomial division");
    const std::size_t nq = rem.size() - nb + 1;
    std::vector<Coeff> q(nq, Coeff(0));
    const Coeff& lead = b.coeffs_.back();
    for (std::size_t k = nq; k-- > 0;) {
      const Coeff& top = rem[k + nb - 1];
      if (top == 0) continue;
      if (top % lead != 0) throw std::domain_error("inexact polynomial division");
      const Coeff f = top / lead;
      for (std::size_t j = 0; j < nb; ++j) rem[k + j] -= f * b.coeffs_[j];
      q[k] = f;
    }
    for (const auto& r : rem) {
      if (r != 0) throw std::domain_error("inexact polynomial division");
    }
    LaurentPolynomial p;
    p.lo_ = a.lo_ - b.lo_;
    p.coeffs_ = std::move(q);
    p.trim();
    return p;
  }

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.coeffs_ == b.coeffs_ && (a.coeffs_.empty() || a.lo_ == b.lo_);
  }

  /// Human-readable form such as "-t^-4 + t^-3 + t^-1". Exponents are shown
  /// divided by `exponent_divisor` (e.g. 4 for the quarter-power basis).
  std::string to_string(const std::string& var = "t", int exponent_divisor = 1) const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      const Coeff& c = coeffs_[i];
      if (c == 0) continue;
      const int e = lo_ + static_cast<int>(i);
      const bool neg = c < 0;
      Coeff mag = neg ? Coeff(-c) : c;
      if (first) {
        if (neg) os << '-';
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      if (e == 0) {
        os << mag;
        continue;
      }
      if (mag != 1) os << mag << '*';
      os << var;
      if (e % exponent_divisor == 0) {
        const int d = e / exponent_divisor;
        if (d != 1) os << '^' << d;
      } else {
        os << "^(" << e << '/' << exponent_divisor << ')';
      }
    }
    return os.str();
  }

 private:
  void require_nonzero() const {
    if (coeffs_.empty()) throw std::domain_error("zero polynomial has no degree");
  }

  void trim() {
    std::size_t b = 0;
    while (b < coeffs_.size() && coeffs_[b] == 0) ++b;
    if (b == coeffs_.size()) {
      coeffs_.clear();
      lo_ = 0;
      return;
    }
    std::size_t e = coeffs_.size();
    while (coeffs_[e - 1] == 0) --e;
    if (b > 0 || e < coeffs_.size()) {
      coeffs_ = std::vector<Coeff>(coeffs_.begin() + static_cast<std::ptrdiff_t>(b),
                                   coeffs_.begin() + static_cast<std::ptrdiff_t>(e));
      lo_ += static_cast<int>(b);
    }
  }

  LaurentPolynomial& accumulate(const LaurentPolynomial& o, bool subtract) {
    if (o.coeffs_.empty()) return *this;
    if (coeffs_.empty()) {
      lo_ = o.lo_;
      coeffs_.assign(o.coeffs_.size(), Coeff(0));
    }
    const int new_lo = std::min(lo_, o.lo_);
    const int new_hi = std::max(max_exponent(), o.max_exponent());
    if (new_lo < lo_ || new_hi > max_exponent()) {
      std::vector<Coeff> grown(static_cast<std::size_t>(new_hi - new_lo + 1), Coeff(0));
      for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        grown[static_cast<std::size_t>(lo_ - new_lo) + i] = std::move(coeffs_[i]);
      }
      coeffs_ = std::move(grown);
      lo_ = new_lo;
    }
    const auto off = static_cast<std::size_t>(o.lo_ - lo_);
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
      if (subtract) {
        coeffs_[off + i] -= o.coeffs_[i];
      } else {
        coeffs_[off + i] += o.coeffs_[i];
      }
    }
    trim();
    return *this;
  }

  int lo_ = 0;
  std::vector<Coeff> coeffs_;
};

using Poly = LaurentPolynomial<std::int64_t>;
using BigPoly = LaurentPolynomial<BigInt>;

}  // namespace braidknots
