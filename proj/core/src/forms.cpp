#include "dfi/forms.hpp"

#include <algorithm>
#include <sstream>

#include "dfi/errors.hpp"
#include "dfi/linalg.hpp"

namespace dfi {

namespace {

void check_same_field(const std::vector<FieldElement>& v) {
  for (const auto& e : v) {
    if (!e.is_valid()) fail(ErrorCode::ValidationError, "invalid element");
    if (!e.field().same_as(v.front().field()))
      fail(ErrorCode::FieldMismatch, "coefficients lie in different fields");
  }
}

FieldElement fe_div(const FieldElement& a, const FieldElement& b) {
  return a / b;
}

}  // namespace

LinearForm::LinearForm(std::vector<FieldElement> coeffs)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) fail(ErrorCode::ValidationError, "linear form needs coefficients");
  check_same_field(coeffs_);
  bool all_zero = true;
  for (const auto& c : coeffs_)
    if (!c.is_zero()) all_zero = false;
  if (all_zero) fail(ErrorCode::ZeroPolynomial, "linear form is identically zero");
}

FieldElement LinearForm::eval(const std::vector<FieldElement>& x) const {
  if (x.size() != coeffs_.size())
    fail(ErrorCode::DimensionMismatch, "point has the wrong number of coordinates");
  FieldElement s = field().zero();
  for (size_t i = 0; i < coeffs_.size(); ++i) s = s + coeffs_[i] * x[i];
  return s;
}

std::string LinearForm::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << coeffs_[i].str() << ")*X" << i;
    first = false;
  }
  return os.str();
}

MPoly::MPoly(NumberField k, size_t nvars)
    : field_(std::move(k)), nvars_(nvars) {
  if (nvars_ == 0) fail(ErrorCode::ValidationError, "polynomial needs at least one variable");
}

MPoly MPoly::constant(const NumberField& k, size_t nvars,
                      const FieldElement& c) {
  MPoly p(k, nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

long MPoly::total_degree() const {
  long d = -1;
  for (const auto& [e, c] : terms_) {
    long s = 0;
    for (unsigned ei : e) s += ei;
    d = std::max(d, s);
  }
  return d;
}

void MPoly::add_term(const Monomial& e, const FieldElement& c) {
  if (e.size() != nvars_)
    fail(ErrorCode::DimensionMismatch, "exponent vector has the wrong length");
  if (!c.is_valid() || !c.field().same_as(field_))
    fail(ErrorCode::FieldMismatch, "coefficient lies in the wrong field");
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

MPoly MPoly::operator+(const MPoly& o) const {
  if (!field_.same_as(o.field_) || nvars_ != o.nvars_)
    fail(ErrorCode::FieldMismatch, "polynomials are not compatible");
  MPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
  if (!field_.same_as(o.field_) || nvars_ != o.nvars_)
    fail(ErrorCode::FieldMismatch, "polynomials are not compatible");
  MPoly r(field_, nvars_);
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) {
      Monomial e(nvars_);
      for (size_t i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, c1 * c2);
    }
  }
  return r;
}

FieldElement MPoly::eval(const std::vector<FieldElement>& x) const {
  if (x.size() != nvars_)
    fail(ErrorCode::DimensionMismatch, "point has the wrong number of coordinates");
  check_same_field(x);
  if (!x.empty() && !x.front().field().same_as(field_))
    fail(ErrorCode::FieldMismatch, "point lies in the wrong field");
  FieldElement s = field_.zero();
  for (const auto& [e, c] : terms_) {
    FieldElement t = c;
    for (size_t i = 0; i < nvars_; ++i)
      if (e[i] > 0) t = t * x[i].pow(static_cast<long>(e[i]));
    s = s + t;
  }
  return s;
}

std::vector<FieldElement> MPoly::coefficient_vector() const {
  std::vector<FieldElement> out;
  out.reserve(terms_.size());
  for (const auto& [e, c] : terms_) out.push_back(c);
  return out;
}

std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    os << "(" << c.str() << ")";
    for (size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      os << "*X" << i;
      if (e[i] > 1) os << "^" << e[i];
    }
    first = false;
  }
  return os.str();
}

GeneralPositionResult general_position(const std::vector<LinearForm>& factors,
                                       long m) {
  if (factors.empty()) fail(ErrorCode::EmptyFactorList, "no linear forms given");
  if (m < 1) fail(ErrorCode::ValidationError, "need at least two variables");
  const size_t n = static_cast<size_t>(m) + 1;
  const NumberField& g = factors.front().field();
  for (const auto& lf : factors) {
    if (lf.nvars() != n)
      fail(ErrorCode::DimensionMismatch, "form has the wrong number of variables");
    if (!lf.field().same_as(g))
      fail(ErrorCode::FieldMismatch, "forms lie in different fields");
  }
  const size_t q = factors.size();
  const FieldElement zero = g.zero();

  if (q < n) {
    Matrix<FieldElement> a;
    for (const auto& lf : factors) a.push_back(lf.coeffs());
    if (rank_exact(a, fe_div, zero) == q) return {true, {}};
    GeneralPositionResult r;
    r.witness.resize(q);
    for (size_t i = 0; i < q; ++i) r.witness[i] = i;
    return r;
  }

  // all (m+1)-subsets, lexicographic
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    Matrix<FieldElement> a;
    for (size_t i : idx) a.push_back(factors[i].coeffs());
    if (det_bareiss(a, fe_div, zero).is_zero()) return {false, idx};
    // next combination
    size_t i = n;
    while (i > 0) {
      --i;
      if (idx[i] != q - n + i) break;
      if (i == 0) return {true, {}};
    }
    ++idx[i];
    for (size_t j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
}

DecomposableForm::DecomposableForm(FieldElement a,
                                   std::vector<LinearForm> factors,
                                   SubfieldMap km, MPoly expanded,
                                   size_t nvars)
    : a_(std::move(a)),
      factors_(std::move(factors)),
      km_(std::move(km)),
      expanded_(std::move(expanded)),
      nvars_(nvars) {}

DecomposableForm DecomposableForm::build(const FieldElement& a,
                                         std::vector<LinearForm> factors,
                                         const SubfieldMap& km,
                                         const PlaceSet& s_over_k) {
  if (factors.empty()) fail(ErrorCode::EmptyFactorList, "form needs at least one factor");
  const NumberField& g = km.big_field();
  const NumberField& k = km.small_field();
  if (!s_over_k.field().same_as(k))
    fail(ErrorCode::FieldMismatch, "place set is not over the coefficient field");
  if (!a.is_valid() || !a.field().same_as(g))
    fail(ErrorCode::FieldMismatch, "scalar lies in the wrong field");
  if (a.is_zero()) fail(ErrorCode::ZeroElement, "scalar must be nonzero");
  const size_t nvars = factors.front().nvars();
  if (nvars < 2) fail(ErrorCode::ValidationError, "need at least two variables");
  for (const auto& lf : factors) {
    if (lf.nvars() != nvars)
      fail(ErrorCode::DimensionMismatch, "factors use different variable counts");
    if (!lf.field().same_as(g))
      fail(ErrorCode::FieldMismatch, "factor lies in the wrong field");
  }

  MPoly acc = MPoly::constant(g, nvars, a);
  for (const auto& lf : factors) {
    MPoly lin(g, nvars);
    for (size_t i = 0; i < nvars; ++i) {
      Monomial e(nvars, 0);
      e[i] = 1;
      lin.add_term(e, lf.coeffs()[i]);
    }
    acc = acc * lin;
  }

  MPoly table(k, nvars);
  for (const auto& [e, c] : acc.terms()) {
    FieldElement ck;
    try {
      ck = km.restrict(c);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::EmbeddingUndefined)
        fail(ErrorCode::CoefficientNotInK,
             "expanded coefficient " + c.str() + " is outside the base field");
      throw;
    }
    if (!is_s_integer(ck, s_over_k))
      fail(ErrorCode::NotSIntegral,
           "expanded coefficient " + ck.str() + " is not an S-integer");
    table.add_term(e, ck);
  }
  return DecomposableForm(a, std::move(factors), km, std::move(table), nvars);
}

FieldElement DecomposableForm::eval(const std::vector<FieldElement>& x) const {
  return expanded_.eval(x);
}

FieldElement DecomposableForm::eval_factored(
    const std::vector<FieldElement>& x) const {
  if (x.size() != nvars_)
    fail(ErrorCode::DimensionMismatch, "point has the wrong number of coordinates");
  std::vector<FieldElement> xg;
  xg.reserve(x.size());
  for (const auto& xi : x) xg.push_back(km_.embed(xi));
  FieldElement p = a_;
  for (const auto& lf : factors_) p = p * lf.eval(xg);
  return km_.restrict(p);
}

std::string DecomposableForm::str() const { return expanded_.str(); }

FactorHeightReport factor_heights(const DecomposableForm& f,
                                  const BigRational& tol) {
  FactorHeightReport r;
  r.form_height = height(f.expanded().coefficient_vector(), tol);
  RealInterval mx;
  for (size_t j = 0; j < f.factors().size(); ++j) {
    r.factor_heights.push_back(height(f.factors()[j].coeffs(), tol));
    mx = j == 0 ? r.factor_heights.back()
                : RealInterval::max(mx, r.factor_heights.back());
  }
  r.slack = mx - r.form_height;
  return r;
}

bool poly_eval_bound_check(const MPoly& g, const std::vector<FieldElement>& x,
                           const PlaceSet& s) {
  if (!g.field().same_as(s.field()))
    fail(ErrorCode::FieldMismatch, "polynomial and place set over different fields");
  for (const auto& c : g.coefficient_vector())
    if (!is_s_integer(c, s))
      fail(ErrorCode::NotSIntegral, "coefficient " + c.str() + " is not an S-integer");
  for (const auto& xi : x)
    if (!is_s_integer(xi, s))
      fail(ErrorCode::NotSIntegral, "coordinate " + xi.str() + " is not an S-integer");
  for (const auto& [e, c] : g.terms()) {
    long d = 0;
    for (unsigned ei : e) d += ei;
    if (d != g.total_degree())
      fail(ErrorCode::ValidationError, "polynomial must be homogeneous");
  }
  FieldElement val = g.eval(x);
  if (val.is_zero()) fail(ErrorCode::ZeroValue, "polynomial vanishes at the point");

  BigRational n = s_norm(val, s);
  long deg = g.total_degree();
  BigRational c3 =
      qpow(BigRational(static_cast<long>(g.monomial_count())),
           s.field().degree());

  if (s.field().degree() == 1) {
    BigRational hg = *s_height_exact(g.coefficient_vector(), s);
    BigRational hx = *s_height_exact(x, s);
    return n <= c3 * hg * qpow(hx, deg);
  }

  for (BigRational tol(1, 1 << 20);; tol /= 65536) {
    long prec = 64;
    while (qpow(BigRational(1, 2), prec) > tol) prec *= 2;
    RealInterval lhs = RealInterval::from_rational(n, prec).log();
    RealInterval rhs = RealInterval::from_rational(c3, prec).log() +
                       s_height_log(g.coefficient_vector(), s, tol) +
                       s_height_log(x, s, tol).scale(BigRational(deg));
    if (lhs.upper() <= rhs.lower()) return true;
    if (lhs.lower() > rhs.upper()) return false;
    if (prec > precision_cap())
      fail(ErrorCode::PrecisionCapExceeded, "bound comparison undecided at the precision cap");
  }
}

}  // namespace dfi
