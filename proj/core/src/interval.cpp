#include "dfi/interval.hpp"

#include <algorithm>
#include <cstdio>

namespace dfi {

namespace {
constexpr mpfr_prec_t kDefaultPrec = 64;
}

RealInterval::RealInterval() : RealInterval(kDefaultPrec) {}

RealInterval::RealInterval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set_zero(lo_, 0);
  mpfr_set_zero(hi_, 0);
}

RealInterval::RealInterval(const RealInterval& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RealInterval::RealInterval(RealInterval&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

RealInterval& RealInterval::operator=(const RealInterval& o) {
  if (this == &o) return *this;
  mpfr_set_prec(lo_, o.prec_);
  mpfr_set_prec(hi_, o.prec_);
  prec_ = o.prec_;
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
  return *this;
}

RealInterval& RealInterval::operator=(RealInterval&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  std::swap(prec_, o.prec_);
  return *this;
}

RealInterval::~RealInterval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

RealInterval RealInterval::from_rational(const BigRational& q,
                                         mpfr_prec_t prec) {
  RealInterval r(prec);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

RealInterval RealInterval::from_long(long v, mpfr_prec_t prec) {
  RealInterval r(prec);
  mpfr_set_si(r.lo_, v, MPFR_RNDD);
  mpfr_set_si(r.hi_, v, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::exact_zero(mpfr_prec_t prec) {
  return RealInterval(prec);
}

RealInterval RealInterval::hull(const BigRational& lo, const BigRational& hi,
                                mpfr_prec_t prec) {
  RealInterval r(prec);
  mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

namespace {
BigRational mpfr_to_q(const mpfr_t x) {
  if (!mpfr_number_p(x)) fail(ErrorCode::PrecisionCapExceeded,
                              "non-finite interval endpoint");
  if (mpfr_zero_p(x)) return BigRational(0);
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  BigRational q(m);
  if (e >= 0) {
    mpz_mul_2exp(q.get_num_mpz_t(), q.get_num().get_mpz_t(),
                 static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(q.get_den_mpz_t(), q.get_den().get_mpz_t(),
                 static_cast<mp_bitcnt_t>(-e));
  }
  q.canonicalize();
  return q;
}
}  // namespace

BigRational RealInterval::lower() const { return mpfr_to_q(lo_); }
BigRational RealInterval::upper() const { return mpfr_to_q(hi_); }

bool RealInterval::contains(const BigRational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 &&
         mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool RealInterval::contains_zero() const {
  return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool RealInterval::overlaps(const RealInterval& o) const {
  return mpfr_cmp(lo_, o.hi_) <= 0 && mpfr_cmp(o.lo_, hi_) <= 0;
}

std::optional<bool> RealInterval::certainly_le(const BigRational& q) const {
  if (mpfr_cmp_q(hi_, q.get_mpq_t()) <= 0) return true;
  if (mpfr_cmp_q(lo_, q.get_mpq_t()) > 0) return false;
  return std::nullopt;
}

std::optional<bool> RealInterval::certainly_lt(const BigRational& q) const {
  if (mpfr_cmp_q(hi_, q.get_mpq_t()) < 0) return true;
  if (mpfr_cmp_q(lo_, q.get_mpq_t()) >= 0) return false;
  return std::nullopt;
}

RealInterval RealInterval::operator+(const RealInterval& o) const {
  RealInterval r(std::max(prec_, o.prec_));
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::operator-(const RealInterval& o) const {
  RealInterval r(std::max(prec_, o.prec_));
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::operator-() const {
  RealInterval r(prec_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::operator*(const RealInterval& o) const {
  RealInterval r(std::max(prec_, o.prec_));
  mpfr_t t;
  mpfr_init2(t, r.prec_);
  // min/max over the four endpoint products, rounded outward.
  mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_mul(t, lo_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_mul(t, hi_, o.lo_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_mul(t, hi_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);

  mpfr_mul(r.hi_, lo_, o.lo_, MPFR_RNDU);
  mpfr_mul(t, lo_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_mul(t, hi_, o.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_mul(t, hi_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

RealInterval RealInterval::operator/(const RealInterval& o) const {
  if (o.contains_zero())
    fail(ErrorCode::DivisionByZero, "interval division by zero");
  RealInterval r(std::max(prec_, o.prec_));
  mpfr_t t;
  mpfr_init2(t, r.prec_);
  mpfr_div(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_div(t, lo_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_div(t, hi_, o.lo_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_div(t, hi_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);

  mpfr_div(r.hi_, lo_, o.lo_, MPFR_RNDU);
  mpfr_div(t, lo_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_div(t, hi_, o.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_div(t, hi_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

RealInterval RealInterval::abs() const {
  RealInterval r(prec_);
  if (mpfr_sgn(lo_) >= 0) {
    mpfr_set(r.lo_, lo_, MPFR_RNDD);
    mpfr_set(r.hi_, hi_, MPFR_RNDU);
  } else if (mpfr_sgn(hi_) <= 0) {
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  } else {
    mpfr_set_zero(r.lo_, 0);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, hi_, MPFR_RNDU);
  }
  return r;
}

RealInterval RealInterval::sqrt() const {
  RealInterval r(prec_);
  if (mpfr_sgn(lo_) < 0) {
    // clamp tiny negative lower bounds arising from abs-squares
    mpfr_set_zero(r.lo_, 0);
  } else {
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  }
  if (mpfr_sgn(hi_) < 0)
    fail(ErrorCode::PrecisionCapExceeded, "sqrt of negative interval");
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::log() const {
  if (mpfr_sgn(lo_) <= 0)
    fail(ErrorCode::PrecisionCapExceeded,
         "log of interval touching zero; raise precision");
  RealInterval r(prec_);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::exp() const {
  RealInterval r(prec_);
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::pow_int(long e) const {
  if (e == 0) return from_long(1, prec_);
  RealInterval base = *this;
  bool invert = e < 0;
  unsigned long n = invert ? -static_cast<unsigned long>(e) : e;
  RealInterval acc = from_long(1, prec_);
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  if (invert) acc = from_long(1, prec_) / acc;
  return acc;
}

RealInterval RealInterval::scale(const BigRational& q) const {
  return *this * from_rational(q, prec_);
}

RealInterval RealInterval::max(const RealInterval& a, const RealInterval& b) {
  RealInterval r(std::max(a.prec_, b.prec_));
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

double RealInterval::mid_double() const {
  return (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)) / 2.0;
}

std::string RealInterval::str(size_t digits) const {
  char buf[128];
  std::string out = "[";
  mpfr_snprintf(buf, sizeof(buf), "%.*Rg", static_cast<int>(digits), lo_);
  out += buf;
  out += ", ";
  mpfr_snprintf(buf, sizeof(buf), "%.*Rg", static_cast<int>(digits), hi_);
  out += buf;
  out += "]";
  return out;
}

}  // namespace dfi
