#include "dfi/numberfield.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "dfi/linalg.hpp"
#include "dfi/modp.hpp"

namespace dfi {

namespace {
std::atomic<long> g_precision_cap{1L << 16};
}

void set_precision_cap(long bits) { g_precision_cap.store(bits); }
long precision_cap() { return g_precision_cap.load(); }

// ---------------------------------------------------------------------------
// Irreducibility over Z (monic, degree <= 8): mod-p factor patterns first,
// then Zassenhaus recombination at a prime with squarefree reduction.

namespace {

QPoly fpoly_q(const ZPoly& f) { return to_qpoly(f); }

bool divides_over_z(const ZPoly& g, const ZPoly& f) {
  auto [q, r] = qdivrem(fpoly_q(f), fpoly_q(g));
  if (!r.is_zero()) return false;
  for (const auto& c : q.coeffs())
    if (c.get_den() != 1) return false;
  return true;
}

std::string zz(const ZPoly& f) { return poly_str(f); }

}  // namespace

void verify_irreducible(const ZPoly& f) {
  long d = f.degree();
  if (d < 1) fail(ErrorCode::Reducible, "constant polynomial");
  if (f.lc() != 1) fail(ErrorCode::NotMonic, zz(f));
  if (d > 8) fail(ErrorCode::DegreeTooLarge, "degree " + std::to_string(d) + " > 8");
  if (d == 1) return;

  // squarefree over Q?
  QPoly g = qgcd(fpoly_q(f), fpoly_q(f).derivative());
  if (g.degree() > 0) {
    auto [w, mult] = clear_denominators(g);
    fail(ErrorCode::Reducible, zz(f) + " has repeated factor " + zz(zprimitive(w)));
  }

  // rational roots (also catches most small cases with a crisp witness)
  BigInt a0 = f.coeffs()[0];
  if (a0 == 0) fail(ErrorCode::Reducible, zz(f) + " has factor t");
  {
    BigInt bound = abs(a0);
    if (bound > 10000) bound = 10000;  // large tails are caught by Zassenhaus
    for (BigInt r = 1; r <= bound; ++r) {
      if (!mpz_divisible_p(a0.get_mpz_t(), r.get_mpz_t())) continue;
      for (int sgn : {1, -1}) {
        BigInt root = sgn * r;
        BigRational val = fpoly_q(f).eval(BigRational(root));
        if (val == 0)
          fail(ErrorCode::Reducible,
               zz(f) + " has factor " + zz(ZPoly({-root, BigInt(1)})));
      }
    }
  }

  // mod-p degree patterns
  long best_p = 0;
  size_t best_count = SIZE_MAX;
  for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L}) {
    if (!squarefree_mod_p(f, BigInt(p))) continue;
    auto fac = factor_mod_p(f, BigInt(p));
    if (fac.factors.size() == 1) return;  // irreducible mod p
    if (fac.factors.size() < best_count) {
      best_count = fac.factors.size();
      best_p = p;
    }
  }
  if (best_p == 0)
    fail(ErrorCode::Reducible,
         zz(f) + ": no usable prime for irreducibility testing");

  // Zassenhaus: lift mod best_p^k past twice the Mignotte bound, try factor
  // subsets of the lifted factorization.
  BigInt p(best_p);
  auto fac = factor_mod_p(f, p);
  // Mignotte: |b_i| <= 2^d * l2norm(f)
  BigRational n2 = 0;
  for (const auto& c : f.coeffs()) n2 += BigRational(c) * BigRational(c);
  BigInt bound = 1;
  while (BigRational(bound * bound) < n2) bound *= 2;
  bound <<= static_cast<unsigned>(d + 1);
  int k = 1;
  BigInt pk = p;
  while (pk <= 2 * bound) {
    pk *= p;
    ++k;
  }
  std::vector<ZPoly> base;
  for (auto& [fp, m] : fac.factors) base.push_back(fp.lift_nonneg());
  std::vector<ZPoly> lifted = hensel_lift(f, base, p, k);

  size_t r = lifted.size();
  for (size_t mask = 1; mask < (size_t(1) << r) - 1; ++mask) {
    // candidate = product of chosen lifted factors, symmetric lift
    ModPoly prod(pk, {BigInt(1)});
    long deg = 0;
    for (size_t i = 0; i < r; ++i)
      if (mask & (size_t(1) << i)) {
        prod = prod * ModPoly::from_zpoly(lifted[i], pk);
        deg += lifted[i].degree();
      }
    if (deg == 0 || deg > d / 2) continue;
    ZPoly cand = prod.lift_symmetric();
    if (divides_over_z(cand, f))
      fail(ErrorCode::Reducible, zz(f) + " has factor " + zz(cand));
  }
}

// ---------------------------------------------------------------------------
// Root isolation: Durand-Kerner at increasing precision with certified
// inclusion disks of radius d*|f(z)/f'(z)|.

namespace {

// minimal RAII real at fixed precision, round-to-nearest
struct MpReal {
  mpfr_t v;
  explicit MpReal(mpfr_prec_t p) { mpfr_init2(v, p); mpfr_set_zero(v, 0); }
  MpReal(const MpReal& o) { mpfr_init2(v, mpfr_get_prec(o.v)); mpfr_set(v, o.v, MPFR_RNDN); }
  MpReal& operator=(const MpReal& o) { mpfr_set(v, o.v, MPFR_RNDN); return *this; }
  ~MpReal() { mpfr_clear(v); }
};

struct MpComplex {
  MpReal re, im;
  explicit MpComplex(mpfr_prec_t p) : re(p), im(p) {}
};

void c_sub(MpComplex& r, const MpComplex& a, const MpComplex& b) {
  mpfr_sub(r.re.v, a.re.v, b.re.v, MPFR_RNDN);
  mpfr_sub(r.im.v, a.im.v, b.im.v, MPFR_RNDN);
}

void c_mul(MpComplex& r, const MpComplex& a, const MpComplex& b, MpReal& t1,
           MpReal& t2) {
  // r may not alias a or b
  mpfr_mul(t1.v, a.re.v, b.re.v, MPFR_RNDN);
  mpfr_mul(t2.v, a.im.v, b.im.v, MPFR_RNDN);
  mpfr_sub(t1.v, t1.v, t2.v, MPFR_RNDN);
  mpfr_mul(t2.v, a.re.v, b.im.v, MPFR_RNDN);
  mpfr_fma(t2.v, a.im.v, b.re.v, t2.v, MPFR_RNDN);
  mpfr_set(r.re.v, t1.v, MPFR_RNDN);
  mpfr_set(r.im.v, t2.v, MPFR_RNDN);
}

void c_div(MpComplex& r, const MpComplex& a, const MpComplex& b, MpReal& t1,
           MpReal& t2, MpReal& t3) {
  mpfr_mul(t3.v, b.re.v, b.re.v, MPFR_RNDN);
  mpfr_fma(t3.v, b.im.v, b.im.v, t3.v, MPFR_RNDN);  // |b|^2
  mpfr_mul(t1.v, a.re.v, b.re.v, MPFR_RNDN);
  mpfr_fma(t1.v, a.im.v, b.im.v, t1.v, MPFR_RNDN);
  mpfr_mul(t2.v, a.im.v, b.re.v, MPFR_RNDN);
  mpfr_mul(r.im.v, a.re.v, b.im.v, MPFR_RNDN);
  mpfr_sub(t2.v, t2.v, r.im.v, MPFR_RNDN);
  mpfr_div(r.re.v, t1.v, t3.v, MPFR_RNDN);
  mpfr_div(r.im.v, t2.v, t3.v, MPFR_RNDN);
}

BigRational dyadic_of(const mpfr_t x) {
  if (mpfr_zero_p(x)) return BigRational(0);
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  BigRational q(m);
  if (e >= 0)
    mpz_mul_2exp(q.get_num_mpz_t(), q.get_num().get_mpz_t(), e);
  else
    mpz_mul_2exp(q.get_den_mpz_t(), q.get_den().get_mpz_t(), -e);
  q.canonicalize();
  return q;
}

// Sturm count of distinct real roots (f squarefree).
long sturm_real_count(const ZPoly& f) {
  std::vector<QPoly> chain{fpoly_q(f), fpoly_q(f).derivative()};
  while (!chain.back().is_zero()) {
    QPoly r = qdivrem(chain[chain.size() - 2], chain.back()).second;
    chain.push_back(r.scaled(BigRational(-1)));
  }
  chain.pop_back();
  auto sign_changes = [&](bool at_plus_inf) {
    int changes = 0, last = 0;
    for (const auto& g : chain) {
      if (g.is_zero()) continue;
      int s = sgn(g.lc());
      if (!at_plus_inf && g.degree() % 2 == 1) s = -s;
      if (last != 0 && s != last) ++changes;
      last = s;
    }
    return changes;
  };
  return sign_changes(false) - sign_changes(true);
}

struct IsolatedRoots {
  std::vector<ComplexBox> boxes;
  BigRational max_radius;
  long r1 = 0;
};

// interval Horner at a complex box
ComplexBox horner_box(const std::vector<BigRational>& coeffs_desc,
                      const ComplexBox& z, mpfr_prec_t prec) {
  ComplexBox acc(RealInterval::exact_zero(prec), RealInterval::exact_zero(prec));
  for (const auto& c : coeffs_desc) {
    acc = acc * z;
    acc = ComplexBox(acc.re() + RealInterval::from_rational(c, prec), acc.im());
  }
  return acc;
}

std::vector<BigRational> coeffs_desc_of(const ZPoly& f) {
  std::vector<BigRational> c;
  for (long i = f.degree(); i >= 0; --i) c.emplace_back(f.coeffs()[i]);
  return c;
}

std::vector<BigRational> coeffs_desc_of(const QPoly& f) {
  std::vector<BigRational> c;
  for (long i = f.degree(); i >= 0; --i) c.push_back(f.coeffs()[i]);
  return c;
}

bool try_isolate(const ZPoly& f, const BigRational& radius, mpfr_prec_t prec,
                 long r1_expected, IsolatedRoots& out) {
  const long d = f.degree();
  const auto fd = coeffs_desc_of(f);
  const auto fpd = coeffs_desc_of(to_qpoly(f).derivative() /*rational*/);

  // --- Durand-Kerner at point precision ---
  std::vector<MpComplex> z(d, MpComplex(prec));
  {
    // Cauchy bound R = 1 + max |a_i|
    BigRational mx = 0;
    for (const auto& c : f.coeffs())
      if (abs(BigRational(c)) > mx) mx = abs(BigRational(c));
    MpReal R(prec), ang(prec);
    mpfr_set_q(R.v, BigRational(mx + 1).get_mpq_t(), MPFR_RNDN);
    for (long i = 0; i < d; ++i) {
      mpfr_const_pi(ang.v, MPFR_RNDN);
      mpfr_mul_si(ang.v, ang.v, 2 * i, MPFR_RNDN);
      mpfr_div_si(ang.v, ang.v, d, MPFR_RNDN);
      mpfr_add_d(ang.v, ang.v, 0.4, MPFR_RNDN);  // avoid symmetry lock-in
      mpfr_cos(z[i].re.v, ang.v, MPFR_RNDN);
      mpfr_sin(z[i].im.v, ang.v, MPFR_RNDN);
      mpfr_mul(z[i].re.v, z[i].re.v, R.v, MPFR_RNDN);
      mpfr_mul(z[i].im.v, z[i].im.v, R.v, MPFR_RNDN);
    }
  }
  {
    MpReal t1(prec), t2(prec), t3(prec), step(prec), tol(prec);
    MpComplex fv(prec), den(prec), diff(prec), corr(prec);
    mpfr_set_ui_2exp(tol.v, 1, -(static_cast<long>(prec) - 8), MPFR_RNDN);
    std::vector<MpReal> fcoef;
    fcoef.reserve(fd.size());
    for (const auto& c : fd) {
      fcoef.emplace_back(prec);
      mpfr_set_q(fcoef.back().v, c.get_mpq_t(), MPFR_RNDN);
    }
    for (int iter = 0; iter < 500; ++iter) {
      mpfr_set_zero(step.v, 0);
      for (long i = 0; i < d; ++i) {
        // fv = f(z_i) by Horner
        mpfr_set_zero(fv.re.v, 0);
        mpfr_set_zero(fv.im.v, 0);
        for (const auto& c : fcoef) {
          c_mul(fv, fv, z[i], t1, t2);
          mpfr_add(fv.re.v, fv.re.v, c.v, MPFR_RNDN);
        }
        // den = prod_{j != i} (z_i - z_j)
        mpfr_set_ui(den.re.v, 1, MPFR_RNDN);
        mpfr_set_zero(den.im.v, 0);
        for (long j = 0; j < d; ++j) {
          if (j == i) continue;
          c_sub(diff, z[i], z[j]);
          c_mul(den, den, diff, t1, t2);
        }
        c_div(corr, fv, den, t1, t2, t3);
        mpfr_sub(z[i].re.v, z[i].re.v, corr.re.v, MPFR_RNDN);
        mpfr_sub(z[i].im.v, z[i].im.v, corr.im.v, MPFR_RNDN);
        mpfr_hypot(t1.v, corr.re.v, corr.im.v, MPFR_RNDN);
        mpfr_max(step.v, step.v, t1.v, MPFR_RNDN);
      }
      if (mpfr_cmp(step.v, tol.v) < 0) break;
    }
  }

  // --- certification ---
  struct Cand {
    BigRational re, im, r;
  };
  std::vector<Cand> cands(d);
  for (long i = 0; i < d; ++i) {
    cands[i].re = dyadic_of(z[i].re.v);
    cands[i].im = dyadic_of(z[i].im.v);
  }
  auto radius_at = [&](const BigRational& re, const BigRational& im,
                       BigRational& r_out) -> bool {
    ComplexBox zb(RealInterval::from_rational(re, prec),
                  RealInterval::from_rational(im, prec));
    ComplexBox fv = horner_box(fd, zb, prec);
    ComplexBox fpv = horner_box(fpd, zb, prec);
    RealInterval fa = fv.abs(), fpa = fpv.abs();
    if (fpa.lower() <= 0) return false;
    RealInterval r = fa / fpa;
    r_out = r.upper() * d;
    return true;
  };
  for (auto& c : cands)
    if (!radius_at(c.re, c.im, c.r)) return false;

  // classify: the r1 candidates nearest the real axis become real roots
  std::vector<size_t> order(d);
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return abs(cands[a].im) < abs(cands[b].im);
  });
  for (long i = 0; i < r1_expected; ++i) {
    Cand& c = cands[order[i]];
    c.im = 0;
    if (!radius_at(c.re, c.im, c.r)) return false;
  }
  for (size_t i = r1_expected; i < order.size(); ++i) {
    Cand& c = cands[order[i]];
    if (abs(c.im) <= c.r) return false;  // cannot separate from the axis yet
  }

  // exact conjugate pairing for the complex ones
  {
    std::vector<size_t> pos, neg;
    for (size_t i = r1_expected; i < order.size(); ++i)
      (cands[order[i]].im > 0 ? pos : neg).push_back(order[i]);
    if (pos.size() != neg.size()) return false;
    for (size_t pi : pos) {
      // nearest negative partner gets the mirrored coordinates
      size_t best = SIZE_MAX;
      BigRational bestd;
      for (size_t ni : neg) {
        BigRational dre = cands[ni].re - cands[pi].re;
        BigRational dim = cands[ni].im + cands[pi].im;
        BigRational dist = dre * dre + dim * dim;
        if (best == SIZE_MAX || dist < bestd) {
          best = ni;
          bestd = dist;
        }
      }
      cands[best].re = cands[pi].re;
      cands[best].im = -cands[pi].im;
      cands[best].r = cands[pi].r;
    }
  }

  // radius target
  for (const auto& c : cands)
    if (c.r > radius) return false;

  // pairwise disjoint boxes
  for (long i = 0; i < d; ++i)
    for (long j = i + 1; j < d; ++j) {
      bool re_dis = abs(cands[i].re - cands[j].re) > cands[i].r + cands[j].r;
      bool im_dis = abs(cands[i].im - cands[j].im) > cands[i].r + cands[j].r;
      if (!re_dis && !im_dis) return false;
    }

  // deterministic order: by real part, then imaginary part (boxes disjoint
  // in at least one axis, so this never relabels on refinement)
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  });

  out.boxes.clear();
  out.max_radius = 0;
  for (const auto& c : cands) {
    out.boxes.emplace_back(
        RealInterval::hull(c.re - c.r, c.re + c.r, prec),
        c.im == 0 ? RealInterval::exact_zero(prec)
                  : RealInterval::hull(c.im - c.r, c.im + c.r, prec));
    if (c.r > out.max_radius) out.max_radius = c.r;
  }
  out.r1 = r1_expected;
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------

struct NumberField::Data {
  ZPoly f;
  QPoly fq;
  long degree = 0;
  long r1 = -1;
  mutable std::mutex mu;
  mutable IsolatedRoots cache;  // cache.boxes empty until first isolation
};

NumberField NumberField::create(const ZPoly& f) {
  if (f.degree() < 1)
    fail(ErrorCode::ValidationError, "defining polynomial must have degree >= 1");
  if (f.lc() != 1) fail(ErrorCode::NotMonic, poly_str(f));
  verify_irreducible(f);
  NumberField k;
  k.d_ = std::make_shared<Data>();
  k.d_->f = f;
  k.d_->fq = to_qpoly(f);
  k.d_->degree = f.degree();
  k.d_->r1 = f.degree() == 1 ? 1 : sturm_real_count(f);
  return k;
}

NumberField NumberField::rationals() {
  static NumberField q = create(ZPoly({BigInt(0), BigInt(1)}));
  return q;
}

long NumberField::degree() const { return d_->degree; }
const ZPoly& NumberField::defining_poly() const { return d_->f; }
long NumberField::real_root_count() const { return d_->r1; }

FieldElement NumberField::element(std::vector<BigRational> coords) const {
  if (static_cast<long>(coords.size()) > degree())
    fail(ErrorCode::DimensionMismatch, "too many coordinates");
  coords.resize(degree(), BigRational(0));
  // mpq_class(a, b) does not canonicalize; normalize raw caller input
  for (auto& c : coords) c.canonicalize();
  return FieldElement(*this, std::move(coords));
}

FieldElement NumberField::from_rational(const BigRational& q) const {
  std::vector<BigRational> c(degree(), BigRational(0));
  c[0] = q;
  return FieldElement(*this, std::move(c));
}

FieldElement NumberField::generator() const {
  if (degree() == 1) {
    // t == root of the degree-1 defining polynomial
    return from_rational(BigRational(-d_->f.coeffs()[0]));
  }
  std::vector<BigRational> c(degree(), BigRational(0));
  c[1] = 1;
  return FieldElement(*this, std::move(c));
}

FieldElement NumberField::zero() const { return from_rational(0); }
FieldElement NumberField::one() const { return from_rational(1); }

std::vector<ComplexBox> NumberField::embeddings(const BigRational& radius) const {
  if (radius <= 0) fail(ErrorCode::ValidationError, "radius must be positive");
  std::lock_guard<std::mutex> lock(d_->mu);
  if (!d_->cache.boxes.empty() && d_->cache.max_radius <= radius)
    return d_->cache.boxes;
  mpfr_prec_t prec = 96;
  // need at least enough bits to express the radius
  BigRational r = radius;
  while (r < 1) {
    r *= 2;
    prec += 1;
  }
  prec += 32;
  for (;;) {
    if (prec > precision_cap())
      fail(ErrorCode::PrecisionCapExceeded,
           "root isolation beyond precision cap");
    IsolatedRoots out;
    if (try_isolate(d_->f, radius, prec, d_->r1, out)) {
      d_->cache = std::move(out);
      return d_->cache.boxes;
    }
    prec *= 2;
  }
}

std::vector<ComplexBox> NumberField::embeddings_bits(long bits) const {
  BigRational r(1);
  mpz_mul_2exp(r.get_den_mpz_t(), r.get_den().get_mpz_t(), bits);
  r.canonicalize();
  return embeddings(r);
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(NumberField f, std::vector<BigRational> c)
    : field_(std::move(f)), coords_(std::move(c)) {}

bool FieldElement::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool FieldElement::is_rational() const {
  for (size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

BigRational FieldElement::rational_value() const {
  if (!is_rational())
    fail(ErrorCode::ValidationError, "element is not rational: " + str());
  return coords_[0];
}

QPoly FieldElement::as_poly() const { return QPoly(coords_); }

namespace {
void check_same_field(const FieldElement& a, const FieldElement& b) {
  if (!a.is_valid() || !b.is_valid())
    fail(ErrorCode::FieldMismatch, "uninitialized field element");
  if (!a.field().same_as(b.field()))
    fail(ErrorCode::FieldMismatch, "elements of different fields");
}
}  // namespace

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  check_same_field(a, b);
  std::vector<BigRational> c(a.coords().size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coords()[i] + b.coords()[i];
  return a.field().element(std::move(c));
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  check_same_field(a, b);
  std::vector<BigRational> c(a.coords().size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = a.coords()[i] - b.coords()[i];
  return a.field().element(std::move(c));
}

FieldElement FieldElement::operator-() const {
  std::vector<BigRational> c(coords_.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
  return field_.element(std::move(c));
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  check_same_field(a, b);
  QPoly prod = a.as_poly() * b.as_poly();
  QPoly rem = qdivrem(prod, to_qpoly(a.field().defining_poly())).second;
  std::vector<BigRational> c = rem.coeffs();
  return a.field().element(std::move(c));
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero");
  // extended Euclid in Q[t]: s*a + t*f = 1
  QPoly r0 = as_poly(), r1 = to_qpoly(field_.defining_poly());
  QPoly s0 = QPoly::constant(BigRational(1)), s1;
  while (!r1.is_zero()) {
    auto [q, r] = qdivrem(r0, r1);
    QPoly s2 = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant gcd (f irreducible, a != 0)
  QPoly inv = s0.scaled(1 / r0.coeffs()[0]);
  QPoly rem = qdivrem(inv, to_qpoly(field_.defining_poly())).second;
  return field_.element(rem.coeffs());
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  check_same_field(a, b);
  return a * b.inverse();
}

FieldElement FieldElement::pow(long e) const {
  FieldElement base = e < 0 ? inverse() : *this;
  unsigned long n = e < 0 ? -static_cast<unsigned long>(e) : e;
  FieldElement acc = field_.one();
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

bool FieldElement::operator==(const FieldElement& b) const {
  check_same_field(*this, b);
  return coords_ == b.coords_;
}

BigRational FieldElement::norm() const {
  const long d = field_.degree();
  // columns: coordinates of this * t^j
  Matrix<BigRational> m(d, std::vector<BigRational>(d, BigRational(0)));
  FieldElement col = *this;
  for (long j = 0; j < d; ++j) {
    for (long i = 0; i < d; ++i) m[i][j] = col.coords()[i];
    col = col * field_.generator();
  }
  return det_bareiss(std::move(m),
                     [](const BigRational& a, const BigRational& b) { return a / b; });
}

ComplexBox FieldElement::embed(size_t embedding_index, long prec_bits) const {
  auto roots = field_.embeddings_bits(prec_bits);
  if (embedding_index >= roots.size())
    fail(ErrorCode::DimensionMismatch, "embedding index out of range");
  std::vector<BigRational> desc(coords_.rbegin(), coords_.rend());
  return horner_box(desc, roots[embedding_index],
                    static_cast<mpfr_prec_t>(prec_bits));
}

std::string FieldElement::str() const { return poly_str(as_poly(), "t"); }

// ---------------------------------------------------------------------------
// Recursive-descent parser for element literals like "1/2*t^2 - t + 3".

namespace {

class ElemParser {
 public:
  ElemParser(const NumberField& k, const std::string& s) : k_(k), s_(s) {}

  FieldElement parse() {
    FieldElement v = expr();
    skip_ws();
    if (pos_ != s_.size())
      fail(ErrorCode::ValidationError,
           "trailing garbage in element literal '" + s_ + "'");
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool eat(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  FieldElement expr() {
    FieldElement v = term();
    for (;;) {
      if (eat('+')) v = v + term();
      else if (eat('-')) v = v - term();
      else return v;
    }
  }

  FieldElement term() {
    FieldElement v = unary();
    for (;;) {
      if (eat('*')) v = v * unary();
      else if (eat('/')) {
        FieldElement d = unary();
        if (d.is_zero())
          fail(ErrorCode::DivisionByZero, "division by zero in '" + s_ + "'");
        v = v / d;
      } else if (peek('t') || peek('(')) {
        v = v * unary();  // implicit multiplication: "2t", "3(t+1)"
      } else {
        return v;
      }
    }
  }

  FieldElement unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  FieldElement power() {
    FieldElement base = atom();
    if (eat('^')) {
      skip_ws();
      bool neg = eat('-');
      std::string digits;
      while (pos_ < s_.size() && isdigit(static_cast<unsigned char>(s_[pos_])))
        digits += s_[pos_++];
      if (digits.empty())
        fail(ErrorCode::ValidationError, "missing exponent in '" + s_ + "'");
      long e = std::stol(digits);
      return base.pow(neg ? -e : e);
    }
    return base;
  }

  FieldElement atom() {
    skip_ws();
    if (pos_ >= s_.size())
      fail(ErrorCode::ValidationError, "unexpected end of element literal '" + s_ + "'");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      FieldElement v = expr();
      if (!eat(')'))
        fail(ErrorCode::ValidationError, "missing ')' in '" + s_ + "'");
      return v;
    }
    if (c == 't') {
      ++pos_;
      return k_.generator();
    }
    if (isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < s_.size() && isdigit(static_cast<unsigned char>(s_[pos_])))
        digits += s_[pos_++];
      return k_.from_rational(BigRational(digits));
    }
    fail(ErrorCode::ValidationError,
         std::string("unexpected character '") + c + "' in '" + s_ + "'");
  }

  const NumberField& k_;
  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

FieldElement NumberField::parse_element(const std::string& text) const {
  return ElemParser(*this, text).parse();
}

// ---------------------------------------------------------------------------

SubfieldMap::SubfieldMap(NumberField k, NumberField g, FieldElement image_of_gen)
    : k_(std::move(k)), g_(std::move(g)), gen_image_(std::move(image_of_gen)) {
  if (!gen_image_.field().same_as(g_))
    fail(ErrorCode::FieldMismatch, "generator image not in the big field");
  if (g_.degree() % k_.degree() != 0)
    fail(ErrorCode::EmbeddingUndefined,
         "degree of K does not divide degree of G");
  // the image must be a root of K's defining polynomial
  std::vector<BigRational> desc;
  for (long i = k_.defining_poly().degree(); i >= 0; --i)
    desc.emplace_back(k_.defining_poly().coeffs()[i]);
  FieldElement acc = g_.zero();
  for (const auto& c : desc) acc = acc * gen_image_ + g_.from_rational(c);
  if (!acc.is_zero())
    fail(ErrorCode::EmbeddingUndefined,
         "generator image does not satisfy K's defining polynomial");
}

SubfieldMap SubfieldMap::identity(const NumberField& k) {
  return SubfieldMap(k, k, k.generator());
}

long SubfieldMap::relative_degree() const { return g_.degree() / k_.degree(); }

FieldElement SubfieldMap::embed(const FieldElement& alpha) const {
  if (!alpha.field().same_as(k_))
    fail(ErrorCode::FieldMismatch, "element not in K");
  FieldElement acc = g_.zero();
  FieldElement pw = g_.one();
  for (const auto& c : alpha.coords()) {
    acc = acc + pw * g_.from_rational(c);
    pw = pw * gen_image_;
  }
  return acc;
}

FieldElement SubfieldMap::restrict(const FieldElement& alpha) const {
  if (!alpha.field().same_as(g_))
    fail(ErrorCode::FieldMismatch, "element not in G");
  const long dk = k_.degree(), dg = g_.degree();
  Matrix<BigRational> m(dg, std::vector<BigRational>(dk, BigRational(0)));
  FieldElement pw = g_.one();
  for (long j = 0; j < dk; ++j) {
    for (long i = 0; i < dg; ++i) m[i][j] = pw.coords()[i];
    pw = pw * gen_image_;
  }
  auto sol = solve_linear(std::move(m), alpha.coords(),
                          [](const BigRational& a, const BigRational& b) { return a / b; });
  if (!sol)
    fail(ErrorCode::EmbeddingUndefined, alpha.str() + " is not in the subfield");
  return k_.element(*sol);
}

bool SubfieldMap::in_subfield(const FieldElement& alpha) const {
  try {
    restrict(alpha);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::EmbeddingUndefined) return false;
    throw;
  }
}

}  // namespace dfi
