#pragma once

#include <utility>
#include <vector>

#include "dfi/poly.hpp"

namespace dfi {

// Univariate polynomials over Z/m (m prime for the GF(p) routines, a prime
// power for Hensel lifting). Coefficients are mpz residues in [0, m).
class ModPoly {
 public:
  ModPoly() = default;
  ModPoly(BigInt modulus, std::vector<BigInt> ascending);
  static ModPoly from_zpoly(const ZPoly& f, const BigInt& m);
  static ModPoly from_qpoly(const QPoly& f, const BigInt& m);  // denominators invertible mod m
  static ModPoly x_monomial(const BigInt& m, size_t k);

  const BigInt& modulus() const { return m_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const std::vector<BigInt>& coeffs() const { return c_; }
  const BigInt& lc() const { return c_.back(); }
  BigInt coeff(size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }

  ZPoly lift_symmetric() const;  // coefficients mapped into (-m/2, m/2]
  ZPoly lift_nonneg() const;     // coefficients in [0, m)

  ModPoly operator+(const ModPoly& o) const;
  ModPoly operator-(const ModPoly& o) const;
  ModPoly operator*(const ModPoly& o) const;
  ModPoly scaled(const BigInt& s) const;
  ModPoly monic() const;  // lc must be invertible mod m

  // Euclidean division; divisor lc must be invertible mod m.
  std::pair<ModPoly, ModPoly> divrem(const ModPoly& o) const;
  ModPoly operator%(const ModPoly& o) const { return divrem(o).second; }

  ModPoly derivative() const;
  bool operator==(const ModPoly& o) const { return m_ == o.m_ && c_ == o.c_; }
  bool operator!=(const ModPoly& o) const { return !(*this == o); }

  // gcd (monic), extended gcd; prime modulus.
  friend ModPoly mp_gcd(ModPoly a, ModPoly b);
  friend void mp_ext_gcd(const ModPoly& a, const ModPoly& b, ModPoly& g,
                         ModPoly& s, ModPoly& t);

  friend ModPoly mp_powmod(const ModPoly& base, const BigInt& e,
                           const ModPoly& mod);

  // deterministic order: degree, then coefficients from the constant term up
  bool operator<(const ModPoly& o) const;

 private:
  void trim();
  BigInt m_;
  std::vector<BigInt> c_;
};

// Full factorization over GF(p): monic irreducible factors with
// multiplicities, deterministically ordered; the leading coefficient is
// returned separately. p must be prime and f nonzero mod p.
struct ModFactorization {
  BigInt unit;  // leading coefficient in [1, p)
  std::vector<std::pair<ModPoly, int>> factors;
};
ModFactorization factor_mod_p(const ZPoly& f, const BigInt& p);

bool squarefree_mod_p(const ZPoly& f, const BigInt& p);

// Hensel lifting: f monic over Z, f mod p squarefree, the given factors
// monic and pairwise coprime mod p with product dividing f mod p. Returns
// the unique monic lifts mod p^k (coefficients in [0, p^k)), in input order.
std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<ZPoly>& factors,
                               const BigInt& p, int k);

}  // namespace dfi
