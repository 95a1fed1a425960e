#pragma once

#include <vector>

#include "dfi/forms.hpp"
#include "dfi/numberfield.hpp"
#include "dfi/places.hpp"

namespace dfi {

// Univariate polynomial over a number field: ascending coefficients,
// trimmed (zero polynomial = empty vector).
using KPoly = std::vector<FieldElement>;

long kpoly_degree(const KPoly& p);
KPoly kpoly_trim(KPoly p);
FieldElement kpoly_eval(const KPoly& p, const FieldElement& x);
std::string kpoly_str(const KPoly& p);

// Sylvester-matrix resultant via the fraction-free determinant; exact.
FieldElement resultant(const KPoly& p, const KPoly& q);

// P = a0 * prod (X - alpha_i) with distinct roots in G and expansion in
// K cap O_S.
class FactoredPoly {
 public:
  static FactoredPoly build(const FieldElement& a0_in_g,
                            std::vector<FieldElement> roots_in_g,
                            const SubfieldMap& km, const PlaceSet& s_over_k);

  long degree() const { return static_cast<long>(roots_.size()); }
  const FieldElement& leading() const { return a0_; }
  const std::vector<FieldElement>& roots() const { return roots_; }
  const SubfieldMap& embedding() const { return km_; }
  const KPoly& expanded() const { return expanded_; }  // over K, ascending
  std::string str() const { return kpoly_str(expanded_); }

 private:
  explicit FactoredPoly(SubfieldMap km) : km_(std::move(km)) {}
  FieldElement a0_;
  std::vector<FieldElement> roots_;
  SubfieldMap km_;
  KPoly expanded_;
};

// F(X_0..X_m) = a0^m * prod_i (X_0 a_i^m + X_1 a_i^{m-1} + ... + X_m);
// the factors are in general position whenever the roots are distinct.
DecomposableForm reduction_form(const FactoredPoly& p, long m,
                                const PlaceSet& s_over_k);

// Exact identity Res(P, Q) = F(x_Q) where x_Q lists Q's coefficients from
// the leading one down and m = deg Q.
bool res_identity_check(const FactoredPoly& p, const KPoly& q,
                        const PlaceSet& s_over_k);

struct HeightBoundReport {
  LogInterval poly_height;  // h(P), the coefficient-vector height
  LogInterval form_height;  // h(F) of the degree-m reduction form
  LogInterval slack;        // h(F) - q*h(P)
};
HeightBoundReport height_bound_report(const FactoredPoly& p, long m,
                                      const PlaceSet& s_over_k,
                                      const BigRational& tol);

}  // namespace dfi
