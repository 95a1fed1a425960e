#include "dfi/resultant.hpp"

#include <sstream>

#include "dfi/errors.hpp"
#include "dfi/linalg.hpp"

namespace dfi {

long kpoly_degree(const KPoly& p) { return static_cast<long>(p.size()) - 1; }

KPoly kpoly_trim(KPoly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

FieldElement kpoly_eval(const KPoly& p, const FieldElement& x) {
  FieldElement s = x.field().zero();
  for (size_t i = p.size(); i-- > 0;) s = s * x + p[i];
  return s;
}

std::string kpoly_str(const KPoly& p) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = p.size(); i-- > 0;) {
    if (p[i].is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << p[i].str() << ")";
    if (i == 1) os << "*X";
    if (i > 1) os << "*X^" << i;
    first = false;
  }
  return first ? "0" : os.str();
}

FieldElement resultant(const KPoly& p_in, const KPoly& q_in) {
  KPoly p = kpoly_trim(p_in), q = kpoly_trim(q_in);
  if (p.empty() || q.empty())
    fail(ErrorCode::ZeroPolynomial, "resultant of the zero polynomial");
  const NumberField& k = p.front().field();
  if (!q.front().field().same_as(k))
    fail(ErrorCode::FieldMismatch, "polynomials lie in different fields");
  const size_t n = p.size() - 1, m = q.size() - 1;
  if (n == 0 && m == 0) return k.one();
  if (n == 0) return p[0].pow(static_cast<long>(m));
  if (m == 0) return q[0].pow(static_cast<long>(n));
  const size_t dim = n + m;
  Matrix<FieldElement> a(dim, std::vector<FieldElement>(dim, k.zero()));
  for (size_t r = 0; r < m; ++r)
    for (size_t j = 0; j <= n; ++j) a[r][r + j] = p[n - j];
  for (size_t r = 0; r < n; ++r)
    for (size_t j = 0; j <= m; ++j) a[m + r][r + j] = q[m - j];
  return det_bareiss(
      a, [](const FieldElement& x, const FieldElement& y) { return x / y; },
      k.zero());
}

FactoredPoly FactoredPoly::build(const FieldElement& a0_in_g,
                                 std::vector<FieldElement> roots_in_g,
                                 const SubfieldMap& km,
                                 const PlaceSet& s_over_k) {
  const NumberField& g = km.big_field();
  const NumberField& k = km.small_field();
  if (!s_over_k.field().same_as(k))
    fail(ErrorCode::FieldMismatch, "place set is not over the base field");
  if (!a0_in_g.is_valid() || !a0_in_g.field().same_as(g))
    fail(ErrorCode::FieldMismatch, "leading coefficient lies in the wrong field");
  if (a0_in_g.is_zero())
    fail(ErrorCode::ZeroPolynomial, "leading coefficient must be nonzero");
  if (roots_in_g.empty())
    fail(ErrorCode::ValidationError, "polynomial needs degree at least 1");
  for (size_t i = 0; i < roots_in_g.size(); ++i) {
    if (!roots_in_g[i].is_valid() || !roots_in_g[i].field().same_as(g))
      fail(ErrorCode::FieldMismatch, "root lies in the wrong field");
    for (size_t j = 0; j < i; ++j)
      if (roots_in_g[i] == roots_in_g[j])
        fail(ErrorCode::RepeatedRoots, "root " + roots_in_g[i].str() + " repeats");
  }

  // expand a0 * prod (X - alpha_i) over G
  std::vector<FieldElement> exp_g = {a0_in_g};
  for (const auto& alpha : roots_in_g) {
    std::vector<FieldElement> next(exp_g.size() + 1, g.zero());
    for (size_t i = 0; i < exp_g.size(); ++i) {
      next[i + 1] = next[i + 1] + exp_g[i];
      next[i] = next[i] - alpha * exp_g[i];
    }
    exp_g = std::move(next);
  }

  FactoredPoly p(km);
  p.a0_ = a0_in_g;
  p.roots_ = std::move(roots_in_g);
  for (const auto& c : exp_g) {
    FieldElement ck;
    try {
      ck = km.restrict(c);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::EmbeddingUndefined)
        fail(ErrorCode::CoefficientNotInK,
             "coefficient " + c.str() + " is outside the base field");
      throw;
    }
    if (!is_s_integer(ck, s_over_k))
      fail(ErrorCode::NotSIntegral,
           "coefficient " + ck.str() + " is not an S-integer");
    p.expanded_.push_back(ck);
  }
  return p;
}

DecomposableForm reduction_form(const FactoredPoly& p, long m,
                                const PlaceSet& s_over_k) {
  if (m < 1) fail(ErrorCode::ValidationError, "reduction needs m >= 1");
  std::vector<LinearForm> factors;
  factors.reserve(p.roots().size());
  for (const auto& alpha : p.roots()) {
    std::vector<FieldElement> coeffs;
    coeffs.reserve(static_cast<size_t>(m) + 1);
    for (long j = 0; j <= m; ++j) coeffs.push_back(alpha.pow(m - j));
    factors.emplace_back(std::move(coeffs));
  }
  return DecomposableForm::build(p.leading().pow(m), std::move(factors),
                                 p.embedding(), s_over_k);
}

bool res_identity_check(const FactoredPoly& p, const KPoly& q_in,
                        const PlaceSet& s_over_k) {
  KPoly q = kpoly_trim(q_in);
  long m = kpoly_degree(q);
  if (m < 1)
    fail(ErrorCode::DegreeMismatch, "second polynomial needs degree at least 1");
  FieldElement lhs = resultant(p.expanded(), q);
  DecomposableForm f = reduction_form(p, m, s_over_k);
  // x_Q lists the coefficients from the leading one down
  std::vector<FieldElement> xq(q.rbegin(), q.rend());
  return lhs == f.eval(xq);
}

HeightBoundReport height_bound_report(const FactoredPoly& p, long m,
                                      const PlaceSet& s_over_k,
                                      const BigRational& tol) {
  HeightBoundReport r;
  r.poly_height = height(p.expanded(), tol);
  DecomposableForm f = reduction_form(p, m, s_over_k);
  r.form_height = height(f.expanded().coefficient_vector(), tol);
  r.slack = r.form_height - r.poly_height.scale(BigRational(p.degree()));
  return r;
}

}  // namespace dfi
