#pragma once

#include <mpfr.h>

#include <optional>
#include <string>

#include "dfi/rational.hpp"

namespace dfi {

// Outward-rounded real interval on MPFR. The working precision is a
// property of each value; binary operations widen to the larger precision.
// Endpoints are finite dyadic rationals unless an operation overflows, in
// which case the offending endpoint saturates to +/-inf.
class RealInterval {
 public:
  RealInterval();                       // [0,0] at default precision
  explicit RealInterval(mpfr_prec_t prec);
  RealInterval(const RealInterval& o);
  RealInterval(RealInterval&& o) noexcept;
  RealInterval& operator=(const RealInterval& o);
  RealInterval& operator=(RealInterval&& o) noexcept;
  ~RealInterval();

  static RealInterval from_rational(const BigRational& q, mpfr_prec_t prec);
  static RealInterval from_long(long v, mpfr_prec_t prec);
  static RealInterval exact_zero(mpfr_prec_t prec);
  static RealInterval hull(const BigRational& lo, const BigRational& hi,
                           mpfr_prec_t prec);

  mpfr_prec_t precision() const { return prec_; }

  // Exact dyadic endpoints.
  BigRational lower() const;
  BigRational upper() const;
  BigRational width() const { return upper() - lower(); }

  bool contains(const BigRational& q) const;
  bool contains_zero() const;
  bool overlaps(const RealInterval& o) const;

  // Tri-state comparison against an exact rational: nullopt when undecided.
  std::optional<bool> certainly_le(const BigRational& q) const;
  std::optional<bool> certainly_lt(const BigRational& q) const;

  RealInterval operator+(const RealInterval& o) const;
  RealInterval operator-(const RealInterval& o) const;
  RealInterval operator*(const RealInterval& o) const;
  RealInterval operator/(const RealInterval& o) const;  // 0 not in o
  RealInterval operator-() const;

  RealInterval& operator+=(const RealInterval& o) { return *this = *this + o; }
  RealInterval& operator-=(const RealInterval& o) { return *this = *this - o; }
  RealInterval& operator*=(const RealInterval& o) { return *this = *this * o; }

  RealInterval abs() const;
  RealInterval sqrt() const;           // requires lower() >= 0 after max(.,0)
  RealInterval log() const;            // requires lower() > 0
  RealInterval exp() const;
  RealInterval pow_int(long e) const;  // integer power
  RealInterval scale(const BigRational& q) const;
  static RealInterval max(const RealInterval& a, const RealInterval& b);

  double mid_double() const;
  std::string str(size_t digits = 20) const;

 private:
  mpfr_t lo_, hi_;
  mpfr_prec_t prec_;
  friend class ComplexBox;
};

// Axis-aligned complex box with interval real and imaginary parts.
class ComplexBox {
 public:
  ComplexBox() = default;
  ComplexBox(RealInterval re, RealInterval im)
      : re_(std::move(re)), im_(std::move(im)) {}

  const RealInterval& re() const { return re_; }
  const RealInterval& im() const { return im_; }

  ComplexBox operator+(const ComplexBox& o) const {
    return {re_ + o.re_, im_ + o.im_};
  }
  ComplexBox operator*(const ComplexBox& o) const {
    return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
  }
  ComplexBox conj() const { return {re_, -im_}; }

  RealInterval abs() const {
    return (re_ * re_ + im_ * im_).sqrt();
  }

 private:
  RealInterval re_, im_;
};

// Interval view of heights and other logarithmic quantities; endpoints are
// dyadic rationals.
using LogInterval = RealInterval;

}  // namespace dfi
