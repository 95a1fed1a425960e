#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "dfi/modp.hpp"
#include "dfi/numberfield.hpp"

namespace dfi {

// A place of a number field K = Q[t]/(f). Archimedean places index the
// sorted certified embeddings (a complex pair is represented by its
// im > 0 member). Finite places exist only at primes p with f squarefree
// mod p and carry the monic irreducible residue factor of f mod p.
class Place {
 public:
  enum class Kind { Real, ComplexPair, Finite };

  static Place real(size_t embedding_index);
  static Place complex_pair(size_t embedding_index);
  static Place finite(BigInt p, ZPoly residue_factor);

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  long local_degree() const;
  size_t embedding_index() const { return embedding_index_; }
  const BigInt& prime() const { return prime_; }
  const ZPoly& residue_factor() const { return residue_factor_; }

  bool same_place(const Place& o) const;
  std::string str() const;

  // Hensel-lift cache: monic lift of the residue factor mod p^k.
  ZPoly lifted_factor(const ZPoly& field_poly, int k) const;

 private:
  Place() = default;
  Kind kind_ = Kind::Real;
  size_t embedding_index_ = 0;
  BigInt prime_;
  ZPoly residue_factor_;
  struct LiftCache;
  std::shared_ptr<LiftCache> cache_;
};

// S: all archimedean places plus an explicit finite list.
class PlaceSet {
 public:
  // S = M_infinity(K) plus all places above the given primes.
  static PlaceSet over_primes(const NumberField& k, std::vector<BigInt> primes);

  const NumberField& field() const { return field_; }
  const std::vector<Place>& archimedean() const { return arch_; }
  const std::vector<Place>& finite() const { return finite_; }
  const std::vector<BigInt>& primes() const { return primes_; }

  bool contains_finite(const Place& v) const;
  // true when every place of K above p belongs to S
  bool covers_prime(const BigInt& p) const;

 private:
  explicit PlaceSet(NumberField k) : field_(std::move(k)) {}
  NumberField field_;
  std::vector<Place> arch_;
  std::vector<Place> finite_;
  std::vector<BigInt> primes_;
};

std::vector<Place> archimedean_places(const NumberField& k);
std::vector<Place> finite_places_above(const NumberField& k, const BigInt& p);

// v_P(alpha) at a finite place (unramified by construction); exact.
long valuation(const FieldElement& alpha, const Place& v);

// ||alpha||_v = p^{-d_v v_P(alpha)}, exact.
BigRational abs_norm_at_finite(const FieldElement& alpha, const Place& v);

// log ||alpha||_v = d_v log|sigma_v(alpha)| as a certified interval.
RealInterval log_abs_norm_at_arch(const FieldElement& alpha, const Place& v,
                                  long prec_bits);

// S-norm via the complementary finite product; exact positive rational.
BigRational s_norm(const FieldElement& alpha, const PlaceSet& s);

bool is_s_integer(const FieldElement& alpha, const PlaceSet& s);
bool is_s_unit(const FieldElement& alpha, const PlaceSet& s);

// Absolute logarithmic height of a nonzero vector; interval of width < tol.
LogInterval height(const std::vector<FieldElement>& x, const BigRational& tol);

// log H_S of a vector of S-integers; interval of width < tol.
LogInterval s_height_log(const std::vector<FieldElement>& x, const PlaceSet& s,
                         const BigRational& tol);

// Exact H_S for degree-1 fields (all archimedean values rational).
std::optional<BigRational> s_height_exact(const std::vector<FieldElement>& x,
                                          const PlaceSet& s);

// Exact finite S-part of H_S: prod over finite v in S of ||x||_v.
BigRational s_height_finite_part(const std::vector<FieldElement>& x,
                                 const PlaceSet& s);

bool product_formula_check(const FieldElement& alpha);

// N_T(alpha) = N_S(alpha)^{[G:K]} where T extends the primes of S to G.
// alpha is given in G and must lie in the image of K (EmbeddingUndefined).
bool norm_extension_check(const FieldElement& alpha_in_g, const SubfieldMap& km,
                          const PlaceSet& s_over_k);

}  // namespace dfi
