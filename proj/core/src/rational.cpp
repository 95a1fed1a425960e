#include "dfi/rational.hpp"

#include <algorithm>

namespace dfi {

BigRational parse_rational(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) fail(ErrorCode::ValidationError, "empty rational literal");
  if (s.find('.') != std::string::npos)
    fail(ErrorCode::ValidationError,
         "float literal '" + text + "'; write an exact fraction like 1/2");
  try {
    BigRational q(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::ValidationError, "bad rational literal '" + text + "'");
  }
}

bool is_prime(const BigInt& p) {
  if (p < 2) return false;
  return mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
}

namespace {

BigInt pollard_rho(const BigInt& n) {
  // Brent's cycle variant; n composite, odd, not a prime power of 2.
  for (unsigned long c = 1;; ++c) {
    BigInt x = 2, y = 2, d = 1;
    auto step = [&](const BigInt& v) -> BigInt { return (v * v + c) % n; };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      BigInt diff = x - y;
      if (diff == 0) break;  // cycle without factor; retry with next c
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d > 1 && d < n) return d;
  }
}

void factor_into(const BigInt& n, std::vector<BigInt>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  BigInt d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<BigInt> prime_factors(const BigInt& n) {
  if (n == 0) fail(ErrorCode::ZeroElement, "prime_factors(0)");
  BigInt m = abs(n);
  std::vector<BigInt> out;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
    BigInt bp(p);
    if (mpz_divisible_p(m.get_mpz_t(), bp.get_mpz_t())) {
      out.push_back(bp);
      while (mpz_divisible_p(m.get_mpz_t(), bp.get_mpz_t())) m /= bp;
    }
  }
  std::vector<BigInt> rest;
  factor_into(m, rest);
  std::sort(rest.begin(), rest.end());
  rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
  out.insert(out.end(), rest.begin(), rest.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dfi
