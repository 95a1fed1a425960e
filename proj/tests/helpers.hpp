#pragma once

#include <random>
#include <vector>

#include "dfi/numberfield.hpp"

namespace testhelp {

using namespace dfi;

inline NumberField q_field() { return NumberField::rationals(); }

inline NumberField sqrt2_field() {
  return NumberField::create(ZPoly({BigInt(-2), BigInt(0), BigInt(1)}));
}

inline NumberField gauss_field() {
  return NumberField::create(ZPoly({BigInt(1), BigInt(0), BigInt(1)}));
}

inline NumberField cubic_field() {
  return NumberField::create(
      ZPoly({BigInt(-1), BigInt(-1), BigInt(0), BigInt(1)}));
}

// deterministic RNG so every run sees the same corpus
inline std::mt19937_64 rng(unsigned seed = 20240811) {
  return std::mt19937_64(seed);
}

inline BigRational rand_rational(std::mt19937_64& g, long lo = -20,
                                 long hi = 20, long max_den = 9) {
  std::uniform_int_distribution<long> num(lo, hi);
  std::uniform_int_distribution<long> den(1, max_den);
  BigRational q(num(g), den(g));
  q.canonicalize();
  return q;
}

inline FieldElement rand_element(const NumberField& k, std::mt19937_64& g,
                                 long lo = -20, long hi = 20,
                                 long max_den = 9) {
  std::vector<BigRational> c;
  for (long i = 0; i < k.degree(); ++i)
    c.push_back(rand_rational(g, lo, hi, max_den));
  return k.element(std::move(c));
}

inline FieldElement rand_nonzero(const NumberField& k, std::mt19937_64& g,
                                 long lo = -20, long hi = 20,
                                 long max_den = 9) {
  while (true) {
    FieldElement e = rand_element(k, g, lo, hi, max_den);
    if (!e.is_zero()) return e;
  }
}

}  // namespace testhelp
