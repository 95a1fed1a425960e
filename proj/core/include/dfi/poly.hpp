#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "dfi/rational.hpp"

namespace dfi {

// Dense univariate polynomial over an exact coefficient ring T.
// Coefficients are stored ascending (c[i] is the x^i coefficient) and the
// vector is always trimmed, so the zero polynomial has no coefficients.
//
// T needs +, -, *, == and a zero test; division is used only by divrem/gcd
// and must be exact for the coefficient ring at hand.
template <typename T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> ascending) : c_(std::move(ascending)) { trim(); }
  static Poly constant(T v) { return Poly(std::vector<T>{std::move(v)}); }

  bool is_zero() const { return c_.empty(); }
  // degree of the zero polynomial is -1 by convention
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<T>& coeffs() const { return c_; }
  const T& operator[](size_t i) const { return c_[i]; }
  const T& lc() const { return c_.back(); }

  T coeff_or(size_t i, const T& zero) const {
    return i < c_.size() ? c_[i] : zero;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) {
      if (i < a.c_.size() && i < b.c_.size()) r[i] = a.c_[i] + b.c_[i];
      else if (i < a.c_.size()) r[i] = a.c_[i];
      else r[i] = b.c_[i];
    }
    return Poly(std::move(r));
  }

  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) {
      if (i < a.c_.size() && i < b.c_.size()) r[i] = a.c_[i] - b.c_[i];
      else if (i < a.c_.size()) r[i] = a.c_[i];
      else r[i] = T() - b.c_[i];
    }
    return Poly(std::move(r));
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T());
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }

  Poly scaled(const T& s) const {
    std::vector<T> r = c_;
    for (auto& x : r) x = x * s;
    return Poly(std::move(r));
  }

  Poly shifted(size_t k) const {  // multiply by x^k
    if (is_zero()) return Poly();
    std::vector<T> r(c_.size() + k, T());
    std::copy(c_.begin(), c_.end(), r.begin() + k);
    return Poly(std::move(r));
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<T> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) {
      T k = T();
      for (size_t j = 0; j < i; ++j) k = k + c_[i];  // i * c_[i] without int ctor
      r[i - 1] = k;
    }
    return Poly(std::move(r));
  }

  T eval(const T& x) const {
    T acc = T();
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  bool operator==(const Poly& o) const { return c_ == o.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T()) c_.pop_back();
  }
  std::vector<T> c_;
};

using QPoly = Poly<BigRational>;
using ZPoly = Poly<BigInt>;

// Euclidean division over a field: a = q*b + r with deg r < deg b.
template <typename T, typename DivFn>
std::pair<Poly<T>, Poly<T>> divrem(const Poly<T>& a, const Poly<T>& b,
                                   DivFn div) {
  if (b.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
  std::vector<T> rem(a.coeffs());
  long db = b.degree();
  long da = a.degree();
  if (da < db) return {Poly<T>(), a};
  std::vector<T> quot(da - db + 1, T());
  for (long i = da; i >= db; --i) {
    if (rem[i] == T()) continue;
    T q = div(rem[i], b.lc());
    quot[i - db] = q;
    for (long j = 0; j <= db; ++j) rem[i - db + j] = rem[i - db + j] - q * b[j];
  }
  return {Poly<T>(std::move(quot)), Poly<T>(std::move(rem))};
}

inline std::pair<QPoly, QPoly> qdivrem(const QPoly& a, const QPoly& b) {
  return divrem(a, b, [](const BigRational& x, const BigRational& y) { return x / y; });
}

// Monic gcd over the rationals.
QPoly qgcd(QPoly a, QPoly b);

// Content (gcd of coefficients, sign of lc) and primitive part.
BigInt zcontent(const ZPoly& f);
ZPoly zprimitive(const ZPoly& f);

inline QPoly to_qpoly(const ZPoly& f) {
  std::vector<BigRational> c(f.coeffs().begin(), f.coeffs().end());
  return QPoly(std::move(c));
}

// Requires all denominators 1.
ZPoly to_zpoly(const QPoly& f);

/// Clears denominators: returns (g, d) with d the positive lcm of the
// coefficient denominators and g = d * f integral.
std::pair<ZPoly, BigInt> clear_denominators(const QPoly& f);

std::string poly_str(const QPoly& f, const std::string& var = "t");
std::string poly_str(const ZPoly& f, const std::string& var = "t");

}  // namespace dfi
