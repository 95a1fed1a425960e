#pragma once

#include <map>
#include <string>
#include <vector>

#include "dfi/numberfield.hpp"
#include "dfi/places.hpp"

namespace dfi {

// Exponent vector of a monomial in m+1 variables X_0..X_m.
using Monomial = std::vector<unsigned>;

// A linear form sum_i c_i X_i with coefficients in one field; not all zero.
class LinearForm {
 public:
  explicit LinearForm(std::vector<FieldElement> coeffs);

  size_t nvars() const { return coeffs_.size(); }
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }
  const NumberField& field() const { return coeffs_.front().field(); }

  FieldElement eval(const std::vector<FieldElement>& x) const;
  std::string str() const;

 private:
  std::vector<FieldElement> coeffs_;
};

// Sparse multivariate polynomial over a single field; monomials ordered
// lexicographically by exponent vector, zero coefficients never stored.
class MPoly {
 public:
  MPoly(NumberField k, size_t nvars);
  static MPoly constant(const NumberField& k, size_t nvars,
                        const FieldElement& c);

  size_t nvars() const { return nvars_; }
  const NumberField& field() const { return field_; }
  const std::map<Monomial, FieldElement>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  long total_degree() const;  // -1 for the zero polynomial
  size_t monomial_count() const { return terms_.size(); }

  void add_term(const Monomial& e, const FieldElement& c);
  MPoly operator+(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;

  FieldElement eval(const std::vector<FieldElement>& x) const;
  // coefficients in term order, for height computations
  std::vector<FieldElement> coefficient_vector() const;
  std::string str() const;

 private:
  NumberField field_;
  size_t nvars_ = 0;
  std::map<Monomial, FieldElement> terms_;
};

struct GeneralPositionResult {
  bool ok = false;
  // when !ok: the lexicographically first singular index subset
  std::vector<size_t> witness;
};

// Every (m+1)-subset of the forms must have full rank m+1 (exact rank over
// the coefficient field). For fewer than m+1 forms the condition degrades
// to "the given forms are linearly independent".
GeneralPositionResult general_position(const std::vector<LinearForm>& factors,
                                       long m);

// F = a * L_1 ... L_q in factored representation over G, with the expanded
// coefficient table verified to live in the subfield K and in O_S.
class DecomposableForm {
 public:
  static DecomposableForm build(const FieldElement& a,
                                std::vector<LinearForm> factors,
                                const SubfieldMap& km,
                                const PlaceSet& s_over_k);

  long q() const { return static_cast<long>(factors_.size()); }
  long m() const { return static_cast<long>(nvars_) - 1; }
  const FieldElement& scalar() const { return a_; }
  const std::vector<LinearForm>& factors() const { return factors_; }
  const SubfieldMap& embedding() const { return km_; }
  // expanded homogeneous coefficient table over K
  const MPoly& expanded() const { return expanded_; }

  // table evaluation; x over K, length m+1
  FieldElement eval(const std::vector<FieldElement>& x) const;
  // independent path: a * prod L_j(x) computed over G, restricted to K
  FieldElement eval_factored(const std::vector<FieldElement>& x) const;

  std::string str() const;

 private:
  DecomposableForm(FieldElement a, std::vector<LinearForm> factors,
                   SubfieldMap km, MPoly expanded, size_t nvars);
  FieldElement a_;
  std::vector<LinearForm> factors_;
  SubfieldMap km_;
  MPoly expanded_;
  size_t nvars_;
};

struct FactorHeightReport {
  LogInterval form_height;                 // h of the expanded coefficients
  std::vector<LogInterval> factor_heights; // h of each L_j coefficient vector
  LogInterval slack;                       // max_j h(L_j) - h(F)
};
FactorHeightReport factor_heights(const DecomposableForm& f,
                                  const BigRational& tol);

// Certifies N_S(g(x)) <= M^{[K:Q]} * H_S(g) * H_S(x)^{deg g} where M is the
// number of monomials of g; exact over Q, interval-refined otherwise.
// g must be homogeneous: the per-place monomial bound fails for mixed
// degrees once ||x||_v < 1 at a finite place.
bool poly_eval_bound_check(const MPoly& g, const std::vector<FieldElement>& x,
                           const PlaceSet& s);

}  // namespace dfi
