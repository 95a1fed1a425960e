#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dfi/forms.hpp"
#include "helpers.hpp"

using namespace dfi;
using namespace testhelp;

namespace {

const BigRational kTol(1, 1000000000000L);

LinearForm lf(const NumberField& k, std::vector<long> cs) {
  std::vector<FieldElement> v;
  for (long c : cs) v.push_back(k.from_rational(BigRational(c)));
  return LinearForm(std::move(v));
}

DecomposableForm pell_norm_form() {
  // (sqrt2 X0 + X1)(-sqrt2 X0 + X1) = X1^2 - 2 X0^2 over K = Q
  NumberField q = q_field();
  NumberField k = sqrt2_field();
  SubfieldMap km(q, k, k.zero());
  PlaceSet s = PlaceSet::over_primes(q, {});
  FieldElement r = k.generator();
  std::vector<LinearForm> fs = {LinearForm({r, k.one()}),
                                LinearForm({-r, k.one()})};
  return DecomposableForm::build(k.one(), std::move(fs), km, s);
}

}  // namespace

TEST_CASE("form construction and projection to the base field") {
  DecomposableForm f = pell_norm_form();
  CHECK(f.q() == 2);
  CHECK(f.m() == 1);
  // expanded table: -2*X0^2 + X1^2 with coefficients in Q
  NumberField q = q_field();
  std::vector<FieldElement> x = {q.from_rational(BigRational(1)),
                                 q.from_rational(BigRational(3))};
  CHECK(f.eval(x) == q.from_rational(BigRational(7)));

  NumberField k = q_field();
  SubfieldMap id = SubfieldMap::identity(k);
  PlaceSet s = PlaceSet::over_primes(k, {});
  std::vector<LinearForm> fs = {lf(k, {1, 0}), lf(k, {0, 1}), lf(k, {1, -1})};
  DecomposableForm g = DecomposableForm::build(k.one(), std::move(fs), id, s);
  std::vector<FieldElement> y = {k.from_rational(BigRational(5)),
                                 k.from_rational(BigRational(2))};
  CHECK(g.eval(y) == k.from_rational(BigRational(30)));  // 5*2*3

  // scalar 1/3 is not S-integral for S = {inf}
  std::vector<LinearForm> fs2 = {lf(k, {1, 0}), lf(k, {0, 1})};
  try {
    DecomposableForm::build(k.from_rational(BigRational(1, 3)), std::move(fs2),
                            id, s);
    FAIL("expected NotSIntegral");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSIntegral);
  }

  // coefficient outside K
  NumberField k2 = sqrt2_field();
  SubfieldMap km(k, k2, k2.zero());
  std::vector<LinearForm> fs3 = {LinearForm({k2.generator(), k2.one()})};
  try {
    DecomposableForm::build(k2.one(), std::move(fs3), km, s);
    FAIL("expected CoefficientNotInK");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoefficientNotInK);
  }

  try {
    DecomposableForm::build(k.one(), {}, id, s);
    FAIL("expected EmptyFactorList");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyFactorList);
  }
}

TEST_CASE("general position") {
  NumberField k = q_field();
  std::vector<LinearForm> ok = {lf(k, {1, 0}), lf(k, {0, 1}), lf(k, {1, 1})};
  CHECK(general_position(ok, 1).ok);

  std::vector<LinearForm> bad = {lf(k, {1, 0}), lf(k, {0, 1}), lf(k, {0, 2})};
  auto r = general_position(bad, 1);
  CHECK(!r.ok);
  CHECK(r.witness == std::vector<size_t>{1, 2});

  // q < m+1 degrades to linear independence of all factors
  std::vector<LinearForm> two = {lf(k, {1, 0, 0}), lf(k, {0, 1, 1})};
  CHECK(general_position(two, 2).ok);
  std::vector<LinearForm> dep = {lf(k, {1, 0, 0}), lf(k, {2, 0, 0})};
  CHECK(!general_position(dep, 2).ok);

  // agreement with brute-force minor enumeration on random instances
  auto g = rng(47);
  std::uniform_int_distribution<long> coef(-2, 2);
  for (int trial = 0; trial < 60; ++trial) {
    long m = 1 + trial % 3;
    long q = m + 1 + trial % 4;
    std::vector<LinearForm> fac;
    for (long i = 0; i < q; ++i) {
      std::vector<FieldElement> c;
      bool nonzero = false;
      for (long j = 0; j <= m; ++j) {
        long v = coef(g);
        nonzero = nonzero || v != 0;
        c.push_back(k.from_rational(BigRational(v)));
      }
      if (!nonzero) c[0] = k.one();
      fac.emplace_back(std::move(c));
    }
    // brute force over all (m+1)-subsets with rational Gaussian elimination
    bool expect = true;
    std::vector<size_t> idx(q);
    for (long i = 0; i < q; ++i) idx[i] = i;
    std::vector<bool> pick(q, false);
    std::fill(pick.begin(), pick.begin() + m + 1, true);
    std::sort(pick.begin(), pick.end());
    // iterate subsets via std::prev_permutation over the mask
    std::vector<bool> mask(q, false);
    std::fill(mask.begin(), mask.begin() + m + 1, true);
    do {
      std::vector<std::vector<BigRational>> rows;
      for (long i = 0; i < q; ++i)
        if (mask[i]) {
          std::vector<BigRational> row;
          for (const auto& e : fac[i].coeffs()) row.push_back(e.rational_value());
          rows.push_back(std::move(row));
        }
      // Gaussian elimination rank
      size_t rank = 0;
      for (size_t col = 0; col <= static_cast<size_t>(m) && rank < rows.size();
           ++col) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        for (size_t r2 = rank + 1; r2 < rows.size(); ++r2) {
          if (rows[r2][col] == 0) continue;
          BigRational f = rows[r2][col] / rows[rank][col];
          for (size_t cc = col; cc <= static_cast<size_t>(m); ++cc)
            rows[r2][cc] -= f * rows[rank][cc];
        }
        ++rank;
      }
      if (rank < static_cast<size_t>(m) + 1) expect = false;
    } while (std::prev_permutation(mask.begin(), mask.end()));
    CHECK(general_position(fac, m).ok == expect);
  }
}

TEST_CASE("two-path evaluation and homogeneity") {
  DecomposableForm f = pell_norm_form();
  NumberField q = q_field();
  auto g = rng(53);
  for (int i = 0; i < 50; ++i) {
    std::vector<FieldElement> x = {q.from_rational(rand_rational(g)),
                                   q.from_rational(rand_rational(g))};
    CHECK(f.eval(x) == f.eval_factored(x));
    std::vector<FieldElement> x2 = {x[0] + x[0], x[1] + x[1]};
    CHECK(f.eval(x2) == q.from_rational(BigRational(4)) * f.eval(x));  // 2^q
  }
  std::vector<FieldElement> zero = {q.zero(), q.zero()};
  CHECK(f.eval(zero) == q.zero());
}

TEST_CASE("factor heights and the factor-vs-form slack") {
  DecomposableForm f = pell_norm_form();
  auto rep = factor_heights(f, kTol);
  // h(F) = log 2; each factor h = (1/2) log 2
  CHECK(rep.form_height.contains(BigRational(0)) == false);
  double l2 = 0.6931471805599453;
  CHECK(rep.form_height.lower() < BigRational(6932, 10000));
  CHECK(rep.form_height.upper() > BigRational(6931, 10000));
  REQUIRE(rep.factor_heights.size() == 2);
  for (const auto& h : rep.factor_heights) {
    CHECK(h.lower() < BigRational(3466, 10000));
    CHECK(h.upper() > BigRational(3465, 10000));
  }
  (void)l2;

  // q = 1, a = 1: h(L1) = h(F)
  NumberField k = q_field();
  SubfieldMap id = SubfieldMap::identity(k);
  PlaceSet s = PlaceSet::over_primes(k, {});
  DecomposableForm single = DecomposableForm::build(
      k.one(), {LinearForm({k.from_rational(BigRational(3)),
                            k.from_rational(BigRational(7))})}, id, s);
  auto rep1 = factor_heights(single, kTol);
  CHECK(rep1.form_height.overlaps(rep1.factor_heights[0]));

  // random factored binary forms over Q: slack within the generic
  // product-height bound q*log(2(m+1))
  auto g = rng(59);
  std::uniform_int_distribution<long> coef(-9, 9);
  for (int trial = 0; trial < 40; ++trial) {
    long q_deg = 2 + trial % 4;
    std::vector<LinearForm> fac;
    for (long i = 0; i < q_deg; ++i) {
      long a = coef(g), b = coef(g);
      if (a == 0 && b == 0) a = 1;
      fac.push_back(LinearForm({k.from_rational(BigRational(a)),
                                k.from_rational(BigRational(b))}));
    }
    DecomposableForm ff = DecomposableForm::build(k.one(), std::move(fac), id, s);
    auto r = factor_heights(ff, kTol);
    // |h(F) - sum h(L_j)| <= q*log(2(m+1)): check both directions through
    // the reported slack pieces
    RealInterval sum = RealInterval::exact_zero(64);
    for (const auto& h : r.factor_heights) sum += h;
    RealInterval diff = r.form_height - sum;
    double bound = q_deg * std::log(2.0 * 2.0);
    CHECK(diff.abs().upper() < BigRational(static_cast<long>(bound * 10000) + 1,
                                           10000));
  }
}

TEST_CASE("polynomial evaluation height bound") {
  NumberField k = q_field();
  PlaceSet s = PlaceSet::over_primes(k, {});
  MPoly g(k, 2);
  g.add_term({1, 0}, k.one());
  g.add_term({0, 1}, k.one());  // X0 + X1
  std::vector<FieldElement> x = {k.from_rational(BigRational(3)),
                                 k.from_rational(BigRational(4))};
  CHECK(poly_eval_bound_check(g, x, s));  // 7 <= 2 * 1 * 4

  MPoly c5 = MPoly::constant(k, 2, k.from_rational(BigRational(5)));
  CHECK(poly_eval_bound_check(c5, x, s));

  MPoly zero_at(k, 2);
  zero_at.add_term({1, 0}, k.one());
  zero_at.add_term({0, 1}, -k.one());  // X0 - X1
  std::vector<FieldElement> diag = {k.one(), k.one()};
  try {
    poly_eval_bound_check(zero_at, diag, s);
    FAIL("expected ZeroValue");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroValue);
  }

  // randomized suite: 500 pairs over Q with S = {inf, 2}
  PlaceSet s2 = PlaceSet::over_primes(k, {BigInt(2)});
  auto rg = rng(61);
  std::uniform_int_distribution<long> coef(-9, 9), xs(-20, 20);
  std::uniform_int_distribution<unsigned> deg(0, 3);
  int done = 0;
  while (done < 500) {
    // homogeneous of degree d: the certified bound needs every monomial at
    // the same total degree (otherwise ||x||_v < 1 at a finite place breaks it)
    unsigned d = deg(rg);
    MPoly p(k, 2);
    for (int t = 0; t < 4; ++t) {
      long c = coef(rg);
      if (c == 0) continue;
      unsigned a = deg(rg) % (d + 1);
      p.add_term({a, d - a}, k.from_rational(BigRational(c)));
    }
    if (p.is_zero()) continue;
    std::vector<FieldElement> pt = {k.from_rational(BigRational(xs(rg))),
                                    k.from_rational(BigRational(xs(rg)))};
    if (p.eval(pt).is_zero()) continue;
    CHECK(poly_eval_bound_check(p, pt, s2));
    ++done;
  }
}
