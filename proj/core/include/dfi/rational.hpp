#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "dfi/errors.hpp"

namespace dfi {

// Exact rationals are GMP mpq_class throughout; canonical form (reduced,
// positive denominator) is maintained by canonicalize() after raw access.
using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigInt num(const BigRational& q) { return q.get_num(); }
inline BigInt den(const BigRational& q) { return q.get_den(); }

inline bool is_integer(const BigRational& q) { return q.get_den() == 1; }

inline BigInt ipow(const BigInt& b, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline BigRational qpow(const BigRational& b, long e) {
  if (e == 0) return BigRational(1);
  BigRational r;
  unsigned long a = e < 0 ? -static_cast<unsigned long>(e) : e;
  mpz_pow_ui(r.get_num_mpz_t(), b.get_num().get_mpz_t(), a);
  mpz_pow_ui(r.get_den_mpz_t(), b.get_den().get_mpz_t(), a);
  r.canonicalize();
  if (e < 0) {
    if (r == 0) fail(ErrorCode::DivisionByZero, "0 to a negative power");
    r = 1 / r;
  }
  return r;
}

// p-adic valuation of a nonzero integer.
inline long vp(const BigInt& n, const BigInt& p) {
  if (n == 0) fail(ErrorCode::ZeroElement, "vp(0) undefined");
  BigInt m = abs(n);
  long v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++v;
  }
  return v;
}

inline long vp(const BigRational& q, const BigInt& p) {
  if (q == 0) fail(ErrorCode::ZeroElement, "vp(0) undefined");
  long v = 0;
  if (mpz_divisible_p(q.get_num().get_mpz_t(), p.get_mpz_t()))
    v = vp(q.get_num(), p);
  else if (mpz_divisible_p(q.get_den().get_mpz_t(), p.get_mpz_t()))
    v = -vp(q.get_den(), p);
  return v;
}

// Parses "p/q", "p", or "-p/q" with arbitrary-precision parts.
BigRational parse_rational(const std::string& text);

inline std::string rational_str(const BigRational& q) { return q.get_str(); }

// Distinct primes dividing |n|, ascending. n != 0.
std::vector<BigInt> prime_factors(const BigInt& n);

bool is_prime(const BigInt& p);

}  // namespace dfi
