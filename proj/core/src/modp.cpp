#include "dfi/modp.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace dfi {

namespace {
BigInt mod_reduce(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt r;
  if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
    fail(ErrorCode::DivisionByZero, "non-invertible residue mod " + m.get_str());
  return r;
}
}  // namespace

ModPoly::ModPoly(BigInt modulus, std::vector<BigInt> ascending)
    : m_(std::move(modulus)), c_(std::move(ascending)) {
  for (auto& x : c_) x = mod_reduce(x, m_);
  trim();
}

ModPoly ModPoly::from_zpoly(const ZPoly& f, const BigInt& m) {
  return ModPoly(m, f.coeffs());
}

ModPoly ModPoly::from_qpoly(const QPoly& f, const BigInt& m) {
  std::vector<BigInt> c;
  c.reserve(f.coeffs().size());
  for (const auto& q : f.coeffs())
    c.push_back(mod_reduce(q.get_num() * mod_inverse(q.get_den(), m), m));
  return ModPoly(m, std::move(c));
}

ModPoly ModPoly::x_monomial(const BigInt& m, size_t k) {
  std::vector<BigInt> c(k + 1, BigInt(0));
  c[k] = 1;
  return ModPoly(m, std::move(c));
}

void ModPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ZPoly ModPoly::lift_symmetric() const {
  std::vector<BigInt> c = c_;
  BigInt half = m_ / 2;
  for (auto& x : c)
    if (x > half) x -= m_;
  return ZPoly(std::move(c));
}

ZPoly ModPoly::lift_nonneg() const { return ZPoly(c_); }

ModPoly ModPoly::operator+(const ModPoly& o) const {
  std::vector<BigInt> r(std::max(c_.size(), o.c_.size()), BigInt(0));
  for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
  return ModPoly(m_, std::move(r));
}

ModPoly ModPoly::operator-(const ModPoly& o) const {
  std::vector<BigInt> r(std::max(c_.size(), o.c_.size()), BigInt(0));
  for (size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
  return ModPoly(m_, std::move(r));
}

ModPoly ModPoly::operator*(const ModPoly& o) const {
  if (is_zero() || o.is_zero()) return ModPoly(m_, {});
  std::vector<BigInt> r(c_.size() + o.c_.size() - 1, BigInt(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return ModPoly(m_, std::move(r));
}

ModPoly ModPoly::scaled(const BigInt& s) const {
  std::vector<BigInt> r = c_;
  for (auto& x : r) x *= s;
  return ModPoly(m_, std::move(r));
}

ModPoly ModPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(mod_inverse(lc(), m_));
}

std::pair<ModPoly, ModPoly> ModPoly::divrem(const ModPoly& o) const {
  if (o.is_zero()) fail(ErrorCode::DivisionByZero, "mod-poly division by zero");
  BigInt inv = mod_inverse(o.lc(), m_);
  std::vector<BigInt> rem = c_;
  long db = o.degree();
  long da = degree();
  if (da < db) return {ModPoly(m_, {}), *this};
  std::vector<BigInt> quot(da - db + 1, BigInt(0));
  for (long i = da; i >= db; --i) {
    BigInt q = mod_reduce(rem[i] * inv, m_);
    if (q == 0) continue;
    quot[i - db] = q;
    for (long j = 0; j <= db; ++j)
      rem[i - db + j] = mod_reduce(rem[i - db + j] - q * o.c_[j], m_);
  }
  return {ModPoly(m_, std::move(quot)), ModPoly(m_, std::move(rem))};
}

ModPoly ModPoly::derivative() const {
  if (c_.size() <= 1) return ModPoly(m_, {});
  std::vector<BigInt> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * BigInt(static_cast<long>(i));
  return ModPoly(m_, std::move(r));
}

bool ModPoly::operator<(const ModPoly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  }
  return false;
}

ModPoly mp_gcd(ModPoly a, ModPoly b) {
  while (!b.is_zero()) {
    ModPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

void mp_ext_gcd(const ModPoly& a, const ModPoly& b, ModPoly& g, ModPoly& s,
                ModPoly& t) {
  const BigInt& m = a.modulus();
  ModPoly r0 = a, r1 = b;
  ModPoly s0(m, {BigInt(1)}), s1(m, {});
  ModPoly t0(m, {}), t1(m, {BigInt(1)});
  while (!r1.is_zero()) {
    auto [q, r] = r0.divrem(r1);
    ModPoly s2 = s0 - q * s1;
    ModPoly t2 = t0 - q * t1;
    r0 = std::move(r1); r1 = std::move(r);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  BigInt inv;
  if (!mpz_invert(inv.get_mpz_t(), r0.lc().get_mpz_t(),
                  m.get_mpz_t()))
    fail(ErrorCode::DivisionByZero, "ext_gcd leading coefficient not a unit");
  g = r0.scaled(inv);
  s = s0.scaled(inv);
  t = t0.scaled(inv);
}

ModPoly mp_powmod(const ModPoly& base, const BigInt& e, const ModPoly& mod) {
  ModPoly acc(base.modulus(), {BigInt(1)});
  ModPoly b = base % mod;
  BigInt n = e;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) acc = (acc * b) % mod;
    b = (b * b) % mod;
    n >>= 1;
  }
  return acc;
}

bool squarefree_mod_p(const ZPoly& f, const BigInt& p) {
  ModPoly fp = ModPoly::from_zpoly(f, p);
  if (fp.is_zero() || fp.degree() != f.degree()) return false;  // lc vanishes
  if (fp.degree() == 0) return true;
  ModPoly d = fp.derivative();
  if (d.is_zero()) return false;
  return mp_gcd(fp, d).degree() == 0;
}

namespace {

// distinct-degree factorization of a monic squarefree polynomial
std::vector<std::pair<ModPoly, long>> ddf(const ModPoly& f, const BigInt& p) {
  std::vector<std::pair<ModPoly, long>> out;  // (product of factors, degree)
  ModPoly rest = f;
  ModPoly h = ModPoly::x_monomial(p, 1) % rest;  // x^{p^i} mod rest
  long d = 0;
  while (rest.degree() > 0) {
    ++d;
    if (rest.degree() < 2 * d) {
      out.emplace_back(rest, rest.degree());
      break;
    }
    h = mp_powmod(h, p, rest);
    ModPoly g = mp_gcd(rest, h - ModPoly::x_monomial(p, 1));
    if (g.degree() > 0) {
      out.emplace_back(g, d);
      rest = rest.divrem(g).first;
      h = h % rest;
    }
  }
  return out;
}

// equal-degree splitting, derandomized by a fixed seed sequence
void edf(const ModPoly& f, long d, const BigInt& p,
         std::vector<ModPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  std::mt19937_64 rng(0x5eed0000u + static_cast<unsigned>(f.degree()));
  const long n = f.degree();
  while (true) {
    std::vector<BigInt> rc(n);
    for (long i = 0; i < n; ++i) {
      BigInt r = BigInt(static_cast<unsigned long>(rng()));
      rc[i] = mod_reduce(r, p);
    }
    ModPoly h(p, std::move(rc));
    if (h.degree() < 1) continue;
    ModPoly g(p, {});
    if (p == 2) {
      // trace map h + h^2 + h^4 + ... + h^{2^{d-1}}
      ModPoly tr = h % f;
      ModPoly pw = tr;
      for (long i = 1; i < d; ++i) {
        pw = (pw * pw) % f;
        tr = (tr + pw) % f;
      }
      g = mp_gcd(f, tr);
    } else {
      BigInt e = (ipow(p, static_cast<unsigned long>(d)) - 1) / 2;
      ModPoly t = mp_powmod(h, e, f) - ModPoly(p, {BigInt(1)});
      g = mp_gcd(f, t);
    }
    if (g.degree() > 0 && g.degree() < f.degree()) {
      edf(g, d, p, out);
      edf(f.divrem(g).first, d, p, out);
      return;
    }
  }
}

}  // namespace

ModFactorization factor_mod_p(const ZPoly& f, const BigInt& p) {
  if (!is_prime(p)) fail(ErrorCode::NotPrime, p.get_str() + " is not prime");
  ModPoly fp = ModPoly::from_zpoly(f, p);
  if (fp.is_zero()) fail(ErrorCode::ZeroPolynomial, "f vanishes mod p");
  ModFactorization result;
  result.unit = fp.degree() >= 0 ? fp.lc() : BigInt(1);
  std::map<ModPoly, int> acc;

  // squarefree decomposition by repeated gcd; handles the char-p collapse
  // f = g(x^p) = g(x)^p over the prime field.
  struct Item { ModPoly f; int mult; };
  std::vector<Item> work{{fp.monic(), 1}};
  while (!work.empty()) {
    Item it = work.back();
    work.pop_back();
    if (it.f.degree() <= 0) continue;
    ModPoly d = it.f.derivative();
    if (d.is_zero()) {
      // f(x) = g(x^p); over GF(p), g(x^p) = g~(x)^p with the same coefficients
      unsigned long pl = p.get_ui();
      std::vector<BigInt> g;
      for (size_t i = 0; i < it.f.coeffs().size(); i += pl)
        g.push_back(it.f.coeffs()[i]);
      work.push_back({ModPoly(p, std::move(g)),
                      it.mult * static_cast<int>(pl)});
      continue;
    }
    ModPoly g = mp_gcd(it.f, d);
    ModPoly sqf = it.f.divrem(g).first;  // squarefree part
    if (g.degree() > 0) work.push_back({g, it.mult});
    for (auto& [prod, deg] : ddf(sqf, p)) {
      std::vector<ModPoly> irr;
      edf(prod, deg, p, irr);
      for (auto& fac : irr) acc[fac] += it.mult;
    }
  }

  // a factor is counted once at every gcd level where it survives, which is
  // exactly its multiplicity
  result.factors.assign(acc.begin(), acc.end());
  std::sort(result.factors.begin(), result.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return result;
}

namespace {

// one linear Hensel step chain: lift f = g*h from mod p to mod p^k
void lift_pair(const ZPoly& f, ModPoly gp, ModPoly hp, const BigInt& p, int k,
               ZPoly& g_out, ZPoly& h_out) {
  ModPoly gcdgh(p, {}), s(p, {}), t(p, {});
  mp_ext_gcd(gp, hp, gcdgh, s, t);
  if (gcdgh.degree() != 0)
    fail(ErrorCode::NotSquarefree, "factors not coprime mod p");

  ZPoly g = gp.lift_nonneg();
  ZPoly h = hp.lift_nonneg();
  BigInt modulus = p;
  for (int i = 1; i < k; ++i) {
    BigInt next = modulus * p;
    // delta = (f - g*h) / p^i  (exact), reduced mod p
    ZPoly e = f - g * h;
    std::vector<BigInt> dc(e.coeffs().size());
    for (size_t j = 0; j < dc.size(); ++j) dc[j] = e.coeffs()[j] / modulus;
    ModPoly delta(p, std::move(dc));
    auto [q, a] = (t * delta).divrem(gp);
    ModPoly b = s * delta + q * hp;
    // g += p^i * a, h += p^i * b
    auto add_scaled = [&](const ZPoly& base, const ModPoly& corr) {
      std::vector<BigInt> c = base.coeffs();
      const auto& cc = corr.coeffs();
      if (c.size() < cc.size()) c.resize(cc.size(), BigInt(0));
      for (size_t j = 0; j < cc.size(); ++j) {
        c[j] += modulus * cc[j];
        mpz_mod(c[j].get_mpz_t(), c[j].get_mpz_t(), next.get_mpz_t());
      }
      return ZPoly(std::move(c));
    };
    g = add_scaled(g, a);
    h = add_scaled(h, b);
    modulus = next;
  }
  g_out = g;
  h_out = h;
}

ZPoly reduce_zpoly(const ZPoly& f, const BigInt& m) {
  std::vector<BigInt> c = f.coeffs();
  for (auto& x : c) mpz_mod(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return ZPoly(std::move(c));
}

}  // namespace

std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<ZPoly>& factors,
                               const BigInt& p, int k) {
  if (!squarefree_mod_p(f, p))
    fail(ErrorCode::NotSquarefree, "f not squarefree mod " + p.get_str());
  if (k < 1) fail(ErrorCode::ValidationError, "hensel precision k must be >= 1");
  BigInt pk = ipow(p, static_cast<unsigned long>(k));
  if (factors.empty()) return {};
  if (k == 1) {
    std::vector<ZPoly> out;
    for (const auto& g : factors) out.push_back(reduce_zpoly(g, p));
    return out;
  }

  // Complete the list with the monic cofactor, then peel factors off one by
  // one, lifting (g, cofactor) pairs.
  ModPoly fp = ModPoly::from_zpoly(f, p).monic();
  std::vector<ModPoly> gs;
  ModPoly prod(p, {BigInt(1)});
  for (const auto& g : factors) {
    gs.push_back(ModPoly::from_zpoly(g, p).monic());
    prod = prod * gs.back();
  }
  auto [cof, rem] = fp.divrem(prod);
  if (!rem.is_zero())
    fail(ErrorCode::NotSquarefree, "factor product does not divide f mod p");

  std::vector<ZPoly> out(factors.size());
  ZPoly target = f;  // monic over Z by precondition of our callers
  for (size_t i = 0; i < gs.size(); ++i) {
    ModPoly rest(p, {BigInt(1)});
    for (size_t j = i + 1; j < gs.size(); ++j) rest = rest * gs[j];
    rest = rest * cof;
    if (rest.degree() == 0) {
      out[i] = reduce_zpoly(target, pk);
      return out;
    }
    ZPoly gl, hl;
    lift_pair(target, gs[i], rest, p, k, gl, hl);
    out[i] = gl;
    target = hl;
  }
  return out;
}

}  // namespace dfi
