#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "numeric.hpp"

namespace cyclehopf {

/// Polynomial in z truncated above degree `cap`, exact coefficients.
/// Coefficients live in a dense vector of length cap + 1.
template <class Coeff>
class TruncPoly {
 public:
  using coeff_type = Coeff;

  explicit TruncPoly(std::size_t cap = 0) : c_(cap + 1, Coeff(0)) {}

  TruncPoly(std::size_t cap, std::initializer_list<Coeff> low) : c_(cap + 1, Coeff(0)) {
    std::size_t i = 0;
    for (const auto& x : low) {
      if (i > cap) break;
      c_[i++] = x;
    }
  }

  static TruncPoly monomial(const Coeff& coeff, std::size_t degree, std::size_t cap) {
    TruncPoly p(cap);
    if (degree <= cap) p.c_[degree] = coeff;
    return p;
  }

  static TruncPoly constant(const Coeff& coeff, std::size_t cap) { return monomial(coeff, 0, cap); }

  std::size_t cap() const { return c_.size() - 1; }

  const Coeff& operator[](std::size_t i) const { return c_.at(i); }
  Coeff& operator[](std::size_t i) { return c_.at(i); }

  /// Coefficient of z^i, zero above the cap.
  Coeff coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Coeff(0); }

  const std::vector<Coeff>& coefficients() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  TruncPoly& operator+=(const TruncPoly& o) {
    check_cap(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }

  TruncPoly& operator-=(const TruncPoly& o) {
    check_cap(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }

  TruncPoly& operator*=(const Coeff& k) {
    for (auto& x : c_) x *= k;
    return *this;
  }

  friend TruncPoly operator+(TruncPoly a, const TruncPoly& b) { return a += b; }
  friend TruncPoly operator-(TruncPoly a, const TruncPoly& b) { return a -= b; }
  friend TruncPoly operator-(TruncPoly a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend TruncPoly operator*(TruncPoly a, const Coeff& k) { return a *= k; }

  /// Cauchy product, truncated at the common cap.
  friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
    a.check_cap(b);
    TruncPoly r(a.cap());
    const std::size_t cap = a.cap();
    for (std::size_t i = 0; i <= cap; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; i + j <= cap; ++j) {
        if (b.c_[j] == 0) continue;
        r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }

  friend bool operator==(const TruncPoly&, const TruncPoly&) = default;

  /// Same coefficients under a different cap (extra degrees are dropped or zero-filled).
  TruncPoly with_cap(std::size_t cap) const {
    TruncPoly r(cap);
    for (std::size_t i = 0; i <= std::min(cap, this->cap()); ++i) r.c_[i] = c_[i];
    return r;
  }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      Coeff mag = c_[i] < 0 ? Coeff(-c_[i]) : c_[i];
      if (first) {
        if (c_[i] < 0) os << '-';
      } else {
        os << (c_[i] < 0 ? " - " : " + ");
      }
      first = false;
      if (i == 0 || mag != 1) os << mag;
      if (i >= 1) os << 'z';
      if (i >= 2) os << '^' << i;
    }
    if (first) os << '0';
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const TruncPoly& p) { return os << p.str(); }

 private:
  void check_cap(const TruncPoly& o) const {
    if (o.c_.size() != c_.size()) {
      throw std::invalid_argument("TruncPoly: cap mismatch (" + std::to_string(cap()) + " vs " +
                                  std::to_string(o.cap()) + ")");
    }
  }

  std::vector<Coeff> c_;
};

using IntPoly = TruncPoly<BigInt>;
using RatPoly = TruncPoly<Rational>;

/// Length-weighting derivation: sum f_l z^l  ->  sum l f_l z^l, i.e. z d/dz.
template <class Coeff>
TruncPoly<Coeff> weighted_derivative(const TruncPoly<Coeff>& a) {
  TruncPoly<Coeff> r(a.cap());
  for (std::size_t i = 1; i <= a.cap(); ++i) r[i] = a[i] * Coeff(static_cast<long long>(i));
  return r;
}

/// Ordinary d/dz; the top coefficient of the result is zero.
template <class Coeff>
TruncPoly<Coeff> formal_derivative(const TruncPoly<Coeff>& a) {
  TruncPoly<Coeff> r(a.cap());
  for (std::size_t i = 1; i <= a.cap(); ++i) r[i - 1] = a[i] * Coeff(static_cast<long long>(i));
  return r;
}

}  // namespace cyclehopf
