#include "dfi/poly.hpp"

#include <sstream>

namespace dfi {

QPoly qgcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = qdivrem(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.scaled(1 / a.lc());
}

BigInt zcontent(const ZPoly& f) {
  BigInt g = 0;
  for (const auto& c : f.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g != 0 && f.lc() < 0) g = -g;
  return g;
}

ZPoly zprimitive(const ZPoly& f) {
  if (f.is_zero()) return f;
  BigInt c = zcontent(f);
  std::vector<BigInt> r = f.coeffs();
  for (auto& x : r) x /= c;
  return ZPoly(std::move(r));
}

ZPoly to_zpoly(const QPoly& f) {
  std::vector<BigInt> c;
  c.reserve(f.coeffs().size());
  for (const auto& q : f.coeffs()) {
    if (q.get_den() != 1)
      fail(ErrorCode::NonIntegerCoefficients, "coefficient " + q.get_str());
    c.push_back(q.get_num());
  }
  return ZPoly(std::move(c));
}

std::pair<ZPoly, BigInt> clear_denominators(const QPoly& f) {
  BigInt d = 1;
  for (const auto& q : f.coeffs())
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den().get_mpz_t());
  std::vector<BigInt> c;
  c.reserve(f.coeffs().size());
  for (const auto& q : f.coeffs()) {
    BigRational v = q * BigRational(d);
    c.push_back(v.get_num());
  }
  return {ZPoly(std::move(c)), d};
}

namespace {
template <typename T>
std::string poly_str_impl(const Poly<T>& f, const std::string& var) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long i = f.degree(); i >= 0; --i) {
    T c = f.coeffs()[i];
    if (c == T()) continue;
    std::string cs;
    if constexpr (std::is_same_v<T, BigRational>) cs = c.get_str();
    else cs = c.get_str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      if (neg) { os << "-"; cs = cs.substr(1); }
    } else {
      os << (neg ? " - " : " + ");
      if (neg) cs = cs.substr(1);
    }
    if (i == 0) os << cs;
    else {
      if (cs != "1") os << cs << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}
}  // namespace

std::string poly_str(const QPoly& f, const std::string& var) {
  return poly_str_impl(f, var);
}
std::string poly_str(const ZPoly& f, const std::string& var) {
  return poly_str_impl(f, var);
}

}  // namespace dfi
