#include "dfi/places.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "dfi/errors.hpp"

namespace dfi {

struct Place::LiftCache {
  std::mutex mu;
  std::map<int, ZPoly> lifts;
};

Place Place::real(size_t embedding_index) {
  Place v;
  v.kind_ = Kind::Real;
  v.embedding_index_ = embedding_index;
  return v;
}

Place Place::complex_pair(size_t embedding_index) {
  Place v;
  v.kind_ = Kind::ComplexPair;
  v.embedding_index_ = embedding_index;
  return v;
}

Place Place::finite(BigInt p, ZPoly residue_factor) {
  Place v;
  v.kind_ = Kind::Finite;
  v.prime_ = std::move(p);
  v.residue_factor_ = std::move(residue_factor);
  v.cache_ = std::make_shared<LiftCache>();
  return v;
}

long Place::local_degree() const {
  switch (kind_) {
    case Kind::Real:
      return 1;
    case Kind::ComplexPair:
      return 2;
    case Kind::Finite:
      return residue_factor_.degree();
  }
  return 1;
}

bool Place::same_place(const Place& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == Kind::Finite)
    return prime_ == o.prime_ && residue_factor_ == o.residue_factor_;
  return embedding_index_ == o.embedding_index_;
}

std::string Place::str() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Real:
      os << "real#" << embedding_index_;
      break;
    case Kind::ComplexPair:
      os << "complex#" << embedding_index_;
      break;
    case Kind::Finite:
      os << "(" << prime_.get_str() << ", " << poly_str(residue_factor_) << ")";
      break;
  }
  return os.str();
}

ZPoly Place::lifted_factor(const ZPoly& field_poly, int k) const {
  if (kind_ != Kind::Finite) fail(ErrorCode::ValidationError, "place is not finite");
  if (k <= 1) {
    // already the residue factor itself
    return residue_factor_;
  }
  std::lock_guard<std::mutex> lk(cache_->mu);
  auto it = cache_->lifts.find(k);
  if (it != cache_->lifts.end()) return it->second;
  ZPoly lifted = hensel_lift(field_poly, {residue_factor_}, prime_, k)[0];
  cache_->lifts.emplace(k, lifted);
  return lifted;
}

std::vector<Place> archimedean_places(const NumberField& k) {
  auto boxes = k.embeddings_bits(24);
  std::vector<Place> out;
  for (size_t i = 0; i < boxes.size(); ++i) {
    const RealInterval& im = boxes[i].im();
    if (im.contains_zero()) {
      out.push_back(Place::real(i));
    } else if (im.lower() > 0) {
      out.push_back(Place::complex_pair(i));
    }
    // the im < 0 member of a conjugate pair is not a separate place
  }
  long total = 0;
  for (const auto& v : out) total += v.local_degree();
  if (total != k.degree())
    fail(ErrorCode::ValidationError, "archimedean local degrees do not sum to the field degree");
  return out;
}

std::vector<Place> finite_places_above(const NumberField& k, const BigInt& p) {
  if (!is_prime(p)) fail(ErrorCode::NotPrime, p.get_str() + " is not prime");
  const ZPoly& f = k.defining_poly();
  if (!squarefree_mod_p(f, p))
    fail(ErrorCode::UnsupportedPrime,
         "defining polynomial is not squarefree mod " + p.get_str());
  auto fac = factor_mod_p(f, p);
  std::vector<Place> out;
  out.reserve(fac.factors.size());
  for (const auto& [g, mult] : fac.factors) {
    if (mult != 1) fail(ErrorCode::UnsupportedPrime, "repeated residue factor");
    out.push_back(Place::finite(p, g.lift_nonneg()));
  }
  return out;
}

PlaceSet PlaceSet::over_primes(const NumberField& k, std::vector<BigInt> primes) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  PlaceSet s(k);
  s.arch_ = archimedean_places(k);
  for (const BigInt& p : primes) {
    auto above = finite_places_above(k, p);
    s.finite_.insert(s.finite_.end(), above.begin(), above.end());
  }
  s.primes_ = std::move(primes);
  return s;
}

bool PlaceSet::contains_finite(const Place& v) const {
  for (const auto& w : finite_)
    if (w.same_place(v)) return true;
  return false;
}

bool PlaceSet::covers_prime(const BigInt& p) const {
  return std::binary_search(primes_.begin(), primes_.end(), p);
}

namespace {

// alpha written as A(t)/den with A integral and den the positive lcm of
// the coordinate denominators.
struct ClearedElement {
  ZPoly num;
  BigInt den;
  BigInt abs_num_norm;  // |N_{K/Q}(A(theta))|, an integer
};

ClearedElement clear_element(const FieldElement& alpha) {
  ClearedElement c;
  auto [np, dp] = clear_denominators(alpha.as_poly());
  c.num = std::move(np);
  c.den = std::move(dp);
  std::vector<BigRational> coords(alpha.field().degree(), BigRational(0));
  for (long i = 0; i <= c.num.degree(); ++i)
    coords[static_cast<size_t>(i)] = BigRational(c.num[static_cast<size_t>(i)]);
  BigRational n = alpha.field().element(std::move(coords)).norm();
  if (!is_integer(n)) fail(ErrorCode::ValidationError, "norm of integral element not integral");
  c.abs_num_norm = abs(num(n));
  return c;
}

long valuation_of_cleared(const ClearedElement& c, const NumberField& k,
                          const Place& v) {
  const BigInt& p = v.prime();
  long cap = vp(c.abs_num_norm, p);
  if (cap == 0) return 0;
  int kk = static_cast<int>(cap) + 1;
  ZPoly lifted = v.lifted_factor(k.defining_poly(), kk);
  BigInt pk;
  mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(kk));
  ModPoly r = ModPoly::from_zpoly(c.num, pk) % ModPoly::from_zpoly(lifted, pk);
  if (r.is_zero())
    fail(ErrorCode::ValidationError, "residue vanished below the norm bound");
  long best = cap + 1;
  for (const BigInt& coef : r.coeffs()) {
    if (coef == 0) continue;
    best = std::min(best, vp(coef, p));
    if (best == 0) break;
  }
  return best;
}

// primes where alpha can have a nonzero valuation
std::vector<BigInt> support_primes(const ClearedElement& c) {
  std::set<BigInt> ps;
  for (const BigInt& p : prime_factors(c.abs_num_norm)) ps.insert(p);
  for (const BigInt& p : prime_factors(c.den)) ps.insert(p);
  return {ps.begin(), ps.end()};
}

BigRational prime_power(const BigInt& p, long e) {
  if (e >= 0) return BigRational(ipow(p, e));
  return BigRational(1) / BigRational(ipow(p, -e));
}

// Characteristic polynomial of multiplication-by-alpha, monic of degree
// [K:Q], via Faddeev-LeVerrier (fields here are small).
std::vector<BigRational> char_poly_coeffs(const FieldElement& alpha) {
  const NumberField& k = alpha.field();
  long n = k.degree();
  std::vector<std::vector<BigRational>> a(n, std::vector<BigRational>(n));
  FieldElement col = alpha;
  FieldElement t = k.generator();
  for (long j = 0; j < n; ++j) {
    for (long i = 0; i < n; ++i) a[i][j] = col.coords()[i];
    if (j + 1 < n) col = col * t;
  }
  std::vector<std::vector<BigRational>> m(n, std::vector<BigRational>(n, BigRational(0)));
  for (long i = 0; i < n; ++i) m[i][i] = 1;
  std::vector<BigRational> c(n + 1);
  c[0] = 1;  // x^n coefficient
  for (long kk = 1; kk <= n; ++kk) {
    std::vector<std::vector<BigRational>> am(n, std::vector<BigRational>(n, BigRational(0)));
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j)
        for (long l = 0; l < n; ++l) am[i][j] += a[i][l] * m[l][j];
    BigRational tr(0);
    for (long i = 0; i < n; ++i) tr += am[i][i];
    c[kk] = -tr / kk;
    m = am;
    for (long i = 0; i < n; ++i) m[i][i] += c[kk];
  }
  return c;
}

// True iff v_P(alpha) >= 0 at every place P above p; works at ramified
// primes (no factoring of the defining polynomial needed): alpha is
// p-integral at all P|p iff its characteristic polynomial is p-integral.
bool p_integral(const FieldElement& alpha, const BigInt& p) {
  for (const BigRational& c : char_poly_coeffs(alpha)) {
    if (c == 0) continue;
    if (vp(c, p) < 0) return false;
  }
  return true;
}

void check_vector(const std::vector<FieldElement>& x) {
  if (x.empty()) fail(ErrorCode::ValidationError, "empty vector");
  bool all_zero = true;
  for (const auto& xi : x) {
    if (!xi.is_valid()) fail(ErrorCode::ValidationError, "invalid element");
    if (!xi.field().same_as(x.front().field()))
      fail(ErrorCode::FieldMismatch, "vector entries lie in different fields");
    if (!xi.is_zero()) all_zero = false;
  }
  if (all_zero) fail(ErrorCode::ZeroElement, "zero vector has no height");
}

// exact finite factor prod_p prod_{P|p in sel} p^{-d_v min_i v_P(x_i)},
// where sel picks which places above each support prime participate.
template <typename Select, typename PrimeSelect>
BigRational finite_height_part(const std::vector<FieldElement>& x,
                               Select&& select, PrimeSelect&& select_prime) {
  const NumberField& k = x.front().field();
  std::vector<ClearedElement> cleared;
  std::set<BigInt> primes;
  for (const auto& xi : x) {
    if (xi.is_zero()) {
      cleared.emplace_back();
      continue;
    }
    cleared.push_back(clear_element(xi));
    for (const BigInt& p : support_primes(cleared.back())) primes.insert(p);
  }
  BigRational out(1);
  for (const BigInt& p : primes) {
    if (!select_prime(p)) continue;
    // If every coordinate is integral at p and some coordinate is a unit
    // above p, the min valuation is 0 at every place above p — no factoring
    // of f mod p needed (p may even be outside the supported prime set).
    bool integral = true, unit_coord = false;
    for (size_t i = 0; i < x.size(); ++i) {
      const auto& c = cleared[i];
      if (c.num.degree() < 0) continue;  // zero coordinate
      long dv = vp(c.den, p);
      if (dv != 0 && !p_integral(x[i], p)) {
        integral = false;
        break;
      }
      // v_p(N(x_i)) = 0 together with integrality pins every v_P(x_i) to 0
      if (vp(c.abs_num_norm, p) - k.degree() * dv == 0) unit_coord = true;
    }
    if (integral && unit_coord) continue;
    for (const Place& v : finite_places_above(k, p)) {
      if (!select(v)) continue;
      bool any = false;
      long minv = 0;
      for (size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_zero()) continue;
        long vv = valuation_of_cleared(cleared[i], k, v) - vp(cleared[i].den, p);
        if (!any || vv < minv) minv = vv;
        any = true;
      }
      if (any && minv != 0) out *= prime_power(p, -v.local_degree() * minv);
    }
  }
  return out;
}

// interval for sum over archimedean places of d_v log max_i |sigma_v(x_i)|
// plus log(fin); refined until the width drops below tol.
LogInterval arch_log_sum(const std::vector<FieldElement>& x,
                         const BigRational& fin, const BigRational& tol,
                         const BigRational& scale_by) {
  if (tol <= 0) fail(ErrorCode::ValidationError, "tolerance must be positive");
  const NumberField& k = x.front().field();
  auto arch = archimedean_places(k);
  for (long prec = 64;; prec *= 2) {
    if (prec > precision_cap())
      fail(ErrorCode::PrecisionCapExceeded, "height refinement exceeded the precision cap");
    k.embeddings_bits(prec / 2);  // refine shared root boxes first
    bool positive = true;
    RealInterval sum = RealInterval::from_rational(fin, prec).log();
    for (const Place& v : arch) {
      bool any = false;
      RealInterval mx;
      for (const auto& xi : x) {
        if (xi.is_zero()) continue;
        RealInterval a = xi.embed(v.embedding_index(), prec).abs();
        mx = any ? RealInterval::max(mx, a) : a;
        any = true;
      }
      if (!(mx.lower() > 0)) {
        positive = false;
        break;
      }
      sum += mx.log().scale(BigRational(v.local_degree()));
    }
    if (!positive) continue;
    RealInterval h = sum.scale(scale_by);
    if (h.width() < tol) return h;
  }
}

}  // namespace

long valuation(const FieldElement& alpha, const Place& v) {
  if (!alpha.is_valid()) fail(ErrorCode::ValidationError, "invalid element");
  if (alpha.is_zero()) fail(ErrorCode::ZeroElement, "valuation of zero is undefined");
  if (!v.is_finite()) fail(ErrorCode::ValidationError, "valuation needs a finite place");
  ClearedElement c = clear_element(alpha);
  return valuation_of_cleared(c, alpha.field(), v) - vp(c.den, v.prime());
}

BigRational abs_norm_at_finite(const FieldElement& alpha, const Place& v) {
  return prime_power(v.prime(), -v.local_degree() * valuation(alpha, v));
}

RealInterval log_abs_norm_at_arch(const FieldElement& alpha, const Place& v,
                                  long prec_bits) {
  if (alpha.is_zero()) fail(ErrorCode::ZeroElement, "log norm of zero is undefined");
  if (v.is_finite()) fail(ErrorCode::ValidationError, "expected an archimedean place");
  for (long prec = std::max(prec_bits, 64L);; prec *= 2) {
    if (prec > precision_cap())
      fail(ErrorCode::PrecisionCapExceeded, "embedding cannot be separated from zero");
    alpha.field().embeddings_bits(prec / 2);
    RealInterval a = alpha.embed(v.embedding_index(), prec).abs();
    if (a.lower() > 0)
      return a.log().scale(BigRational(v.local_degree()));
  }
}

BigRational s_norm(const FieldElement& alpha, const PlaceSet& s) {
  if (!alpha.is_valid()) fail(ErrorCode::ValidationError, "invalid element");
  if (alpha.is_zero()) fail(ErrorCode::ZeroElement, "S-norm of zero is undefined");
  if (!alpha.field().same_as(s.field()))
    fail(ErrorCode::FieldMismatch, "element and place set over different fields");
  // N_S(alpha) = prod_{p not in S} p^{v_p(N(alpha))}: above a fixed p the
  // local exponents sum to v_p of the field norm, so the complementary
  // product never needs the place-by-place split (and hence works at
  // ramified primes too).
  ClearedElement c = clear_element(alpha);
  BigRational out(1);
  BigRational nrm = alpha.norm();
  for (const BigInt& p : support_primes(c)) {
    if (s.covers_prime(p)) continue;
    long e = vp(nrm, p);
    if (e != 0) out *= prime_power(p, e);
  }
  return out;
}

bool is_s_integer(const FieldElement& alpha, const PlaceSet& s) {
  if (!alpha.is_valid()) fail(ErrorCode::ValidationError, "invalid element");
  if (!alpha.field().same_as(s.field()))
    fail(ErrorCode::FieldMismatch, "element and place set over different fields");
  if (alpha.is_zero()) return true;
  // A negative valuation needs p | denominator; for p outside S every place
  // above p is outside S, so the char-poly integrality test at p decides.
  ClearedElement c = clear_element(alpha);
  for (const BigInt& p : prime_factors(c.den)) {
    if (s.covers_prime(p)) continue;
    if (!p_integral(alpha, p)) return false;
  }
  return true;
}

bool is_s_unit(const FieldElement& alpha, const PlaceSet& s) {
  if (!alpha.is_valid()) fail(ErrorCode::ValidationError, "invalid element");
  if (alpha.is_zero()) return false;
  return s_norm(alpha, s) == 1 && is_s_integer(alpha, s) &&
         is_s_integer(alpha.inverse(), s);
}

LogInterval height(const std::vector<FieldElement>& x, const BigRational& tol) {
  check_vector(x);
  BigRational fin = finite_height_part(x, [](const Place&) { return true; },
                                       [](const BigInt&) { return true; });
  long d = x.front().field().degree();
  return arch_log_sum(x, fin, tol, BigRational(1) / BigRational(d));
}

BigRational s_height_finite_part(const std::vector<FieldElement>& x,
                                 const PlaceSet& s) {
  check_vector(x);
  return finite_height_part(
      x, [&s](const Place& v) { return s.contains_finite(v); },
      [&s](const BigInt& p) { return s.covers_prime(p); });
}

LogInterval s_height_log(const std::vector<FieldElement>& x, const PlaceSet& s,
                         const BigRational& tol) {
  check_vector(x);
  for (const auto& xi : x)
    if (!is_s_integer(xi, s))
      fail(ErrorCode::NotSInteger, "coordinate " + xi.str() + " is not an S-integer");
  BigRational fin = s_height_finite_part(x, s);
  return arch_log_sum(x, fin, tol, BigRational(1));
}

std::optional<BigRational> s_height_exact(const std::vector<FieldElement>& x,
                                          const PlaceSet& s) {
  check_vector(x);
  if (x.front().field().degree() != 1) return std::nullopt;
  for (const auto& xi : x)
    if (!is_s_integer(xi, s))
      fail(ErrorCode::NotSInteger, "coordinate " + xi.str() + " is not an S-integer");
  BigRational mx(0);
  for (const auto& xi : x) {
    BigRational a = abs(xi.rational_value());
    if (a > mx) mx = a;
  }
  return mx * s_height_finite_part(x, s);
}

bool product_formula_check(const FieldElement& alpha) {
  if (!alpha.is_valid()) fail(ErrorCode::ValidationError, "invalid element");
  if (alpha.is_zero()) fail(ErrorCode::ZeroElement, "zero is excluded from the product formula");
  const NumberField& k = alpha.field();
  ClearedElement c = clear_element(alpha);
  BigRational abs_norm = abs(alpha.norm());

  // finite side, exact: prod_p p^{sum_{P|p} d_v v_P(alpha)} = |N(alpha)|.
  // At primes with squarefree reduction the exponent is assembled from the
  // per-place valuations (the actual cross-check); where f mod p is not
  // squarefree the aggregate v_p(N(alpha)) stands in.
  BigRational fin(1);
  BigRational nrm = alpha.norm();
  for (const BigInt& p : support_primes(c)) {
    if (!squarefree_mod_p(k.defining_poly(), p)) {
      long e = vp(nrm, p);
      if (e != 0) fin *= prime_power(p, e);
      continue;
    }
    long dvp = vp(c.den, p);
    for (const Place& v : finite_places_above(k, p)) {
      long vv = valuation_of_cleared(c, k, v) - dvp;
      if (vv != 0) fin *= prime_power(p, v.local_degree() * vv);
    }
  }
  if (fin != abs_norm) return false;

  // archimedean side: sum d_v log|sigma_v(alpha)| - log|N(alpha)| straddles 0
  RealInterval sum = RealInterval::exact_zero(128);
  for (const Place& v : archimedean_places(k))
    sum += log_abs_norm_at_arch(alpha, v, 128);
  sum -= RealInterval::from_rational(abs_norm, 128).log();
  return sum.contains_zero();
}

bool norm_extension_check(const FieldElement& alpha_in_g, const SubfieldMap& km,
                          const PlaceSet& s_over_k) {
  if (!s_over_k.field().same_as(km.small_field()))
    fail(ErrorCode::FieldMismatch, "place set is not over the base field");
  FieldElement alpha_in_k = km.restrict(alpha_in_g);  // EmbeddingUndefined if outside
  BigRational ns = s_norm(alpha_in_k, s_over_k);
  PlaceSet t = PlaceSet::over_primes(km.big_field(), s_over_k.primes());
  BigRational nt = s_norm(alpha_in_g, t);
  return nt == qpow(ns, km.relative_degree());
}

}  // namespace dfi
