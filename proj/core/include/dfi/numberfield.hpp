#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dfi/interval.hpp"
#include "dfi/poly.hpp"

namespace dfi {

// Global working-precision cap in bits; archimedean refinements that would
// exceed it raise PrecisionCapExceeded instead of looping.
void set_precision_cap(long bits);
long precision_cap();

class FieldElement;

// A number field Q[t]/(f) with f monic, integral and irreducible of degree
// <= 8. Handles share immutable state; the complex root cache refines
// lazily under a mutex, so concurrent readers see a valid (possibly
// coarser) set of enclosures.
class NumberField {
 public:
  // Verifies monicity, integrality of coefficients and irreducibility
  // (mod-p tests plus Hensel/Zassenhaus recombination over Z).
  static NumberField create(const ZPoly& f);
  static NumberField rationals();  // Q presented as Q[t]/(t)

  long degree() const;
  const ZPoly& defining_poly() const;
  bool same_as(const NumberField& o) const { return d_ == o.d_; }

  FieldElement element(std::vector<BigRational> coords) const;
  FieldElement from_rational(const BigRational& q) const;
  FieldElement generator() const;
  FieldElement zero() const;
  FieldElement one() const;
  // Parses expressions like "1/2*t^2 - t + 3" over the generator symbol.
  FieldElement parse_element(const std::string& text) const;

  // Certified root enclosures of the defining polynomial, sorted by
  // (real part, imaginary part): d pairwise disjoint boxes, closed under
  // conjugation, real roots pinned to the real axis, every radius <= the
  // requested one. Refinement never relabels roots.
  std::vector<ComplexBox> embeddings(const BigRational& radius) const;
  // Same, with radius given as 2^-bits.
  std::vector<ComplexBox> embeddings_bits(long bits) const;

  long real_root_count() const;  // r1 (Sturm count, exact)

 private:
  struct Data;
  NumberField() = default;
  std::shared_ptr<Data> d_;
  friend class FieldElement;
};

// Immutable element of a number field, as rational coordinates in the
// power basis 1, t, ..., t^{d-1}.
class FieldElement {
 public:
  FieldElement() = default;  // unusable placeholder; is_valid() false

  bool is_valid() const { return static_cast<bool>(field_.d_); }
  const NumberField& field() const { return field_; }
  const std::vector<BigRational>& coords() const { return coords_; }
  bool is_zero() const;
  bool is_rational() const;
  BigRational rational_value() const;  // requires is_rational()
  QPoly as_poly() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(long e) const;
  bool operator==(const FieldElement& b) const;
  bool operator!=(const FieldElement& b) const { return !(*this == b); }

  // N_{K/Q}: determinant of the multiplication-by-this matrix.
  BigRational norm() const;

  // Interval enclosure of the image under embedding #i (the i-th cached
  // root box), evaluated at the given working precision.
  ComplexBox embed(size_t embedding_index, long prec_bits) const;

  std::string str() const;  // human form over "t"

 private:
  FieldElement(NumberField f, std::vector<BigRational> c);
  NumberField field_;
  std::vector<BigRational> coords_;
  friend class NumberField;
};

// Arithmetic in default-constructed placeholders is invalid; elements of
// different fields mix only through explicit embeddings (FieldMismatch).

// Q-linear subfield embedding K -> G determined by the image of K's
// generator. Verified on construction (the image must satisfy K's
// defining polynomial in G).
class SubfieldMap {
 public:
  SubfieldMap(NumberField k, NumberField g, FieldElement image_of_gen);
  static SubfieldMap identity(const NumberField& k);

  const NumberField& small_field() const { return k_; }
  const NumberField& big_field() const { return g_; }
  long relative_degree() const;  // [G:K]

  FieldElement embed(const FieldElement& alpha_in_k) const;
  // Preimage in K; EmbeddingUndefined when the element is outside the image.
  FieldElement restrict(const FieldElement& alpha_in_g) const;
  bool in_subfield(const FieldElement& alpha_in_g) const;

 private:
  NumberField k_, g_;
  FieldElement gen_image_;
};

// Irreducibility check used by NumberField::create; exposed for tests.
// Throws Reducible (with a witness factor in the message) or returns.
void verify_irreducible(const ZPoly& f);

}  // namespace dfi
