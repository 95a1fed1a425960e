#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "dfi/linalg.hpp"
#include "dfi/search.hpp"
#include "helpers.hpp"

using namespace dfi;
using namespace testhelp;

namespace {

const BigRational kTol(1, 1000000000000L);

// F = X0 (X0^2 - 2 X1^2) over Q, factored over Q(sqrt2)
DecomposableForm pell_form() {
  NumberField q = q_field();
  NumberField k = sqrt2_field();
  SubfieldMap km(q, k, k.zero());
  PlaceSet s = PlaceSet::over_primes(q, {});
  FieldElement r = k.generator();
  std::vector<LinearForm> fs = {LinearForm({k.one(), k.zero()}),
                                LinearForm({k.one(), -r}),
                                LinearForm({k.one(), r})};
  return DecomposableForm::build(k.one(), std::move(fs), km, s);
}

InequalityInstance pell_instance(const BigRational& nu) {
  NumberField q = q_field();
  return {pell_form(), BigRational(1), nu, PlaceSet::over_primes(q, {}), false};
}

std::vector<long> as_longs(const Point& x) {
  std::vector<long> out;
  for (const auto& e : x) out.push_back(e.rational_value().get_num().get_si());
  return out;
}

}  // namespace

TEST_CASE("point enumeration") {
  NumberField q = q_field();
  auto pts1 = enumerate_points(q, 1, 1);
  std::set<std::vector<long>> got;
  for (const auto& p : pts1) got.insert(as_longs(p));
  CHECK(got == std::set<std::vector<long>>{{0, 1}, {1, -1}, {1, 0}, {1, 1}});

  CHECK(enumerate_points(q, 1, 0).empty());
  CHECK(enumerate_points(q, 1, 2).size() == 8);

  // primitivity and sign normalization on a bigger box
  for (const auto& p : enumerate_points(q, 2, 3)) {
    auto v = as_longs(p);
    BigInt g(0);
    long first = 0;
    bool seen = false;
    for (long c : v) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), BigInt(c).get_mpz_t());
      if (!seen && c != 0) {
        first = c;
        seen = true;
      }
    }
    CHECK(g == 1);
    CHECK(first > 0);
  }
}

TEST_CASE("inequality filter") {
  InequalityInstance inst = pell_instance(BigRational(1));
  NumberField q = q_field();
  auto pt = [&](long a, long b) {
    return Point{q.from_rational(BigRational(a)), q.from_rational(BigRational(b))};
  };
  CHECK(ineq_filter(inst, pt(3, 2)) == FilterResult::Accept);   // 3 <= 3
  CHECK(ineq_filter(inst, pt(2, 1)) == FilterResult::Reject);   // 4 > 2
  CHECK(ineq_filter(inst, pt(0, 1)) == FilterResult::Reject);   // F(x) = 0

  // strict variant: N < H; (3,2) has N = H = 3
  InequalityInstance strict = inst;
  strict.strict = true;
  CHECK(ineq_filter(strict, pt(3, 2)) == FilterResult::Reject);
}

TEST_CASE("S-unit proportionality") {
  NumberField q = q_field();
  PlaceSet s2 = PlaceSet::over_primes(q, {BigInt(2)});
  auto pt = [&](long a, long b) {
    return Point{q.from_rational(BigRational(a)), q.from_rational(BigRational(b))};
  };
  CHECK(proportional(pt(3, 4), pt(6, 8), s2));
  CHECK(!proportional(pt(3, 4), pt(9, 12), s2));
  CHECK(!proportional(pt(1, 0), pt(0, 1), s2));

  // equivalence relation on a random accepted set
  auto g = rng(73);
  std::uniform_int_distribution<long> c(-20, 20);
  std::vector<Point> pts;
  for (int i = 0; i < 12; ++i) pts.push_back(pt(c(g), c(g)));
  pts.erase(std::remove_if(pts.begin(), pts.end(),
                           [](const Point& p) {
                             return p[0].is_zero() && p[1].is_zero();
                           }),
            pts.end());
  for (const auto& a : pts) {
    CHECK(proportional(a, a, s2));
    for (const auto& b : pts) {
      CHECK(proportional(a, b, s2) == proportional(b, a, s2));
      for (const auto& d : pts)
        if (proportional(a, b, s2) && proportional(b, d, s2))
          CHECK(proportional(a, d, s2));
    }
  }
}

TEST_CASE("classification") {
  NumberField q = q_field();
  auto pt = [&](long a, long b) {
    return Point{q.from_rational(BigRational(a)), q.from_rational(BigRational(b))};
  };
  InequalityInstance inst = pell_instance(BigRational(1));
  inst.s = PlaceSet::over_primes(q, {BigInt(2)});

  auto classes = classify({pt(3, 4), pt(6, 8)}, inst);
  REQUIRE(classes.size() == 1);
  CHECK(as_longs(classes[0].rep) == std::vector<long>{3, 4});
  CHECK(classes[0].members.size() == 2);

  inst.s = PlaceSet::over_primes(q, {});
  auto two = classify({pt(1, 1), pt(1, -1)}, inst);
  CHECK(two.size() == 2);
}

TEST_CASE("inequality solving against a brute-force oracle") {
  InequalityInstance inst = pell_instance(BigRational(1));
  SolveOptions opt;
  opt.bound = 100;
  SolutionReport r = solve_inequality(inst, opt);
  CHECK(r.borderline.empty());

  // brute force over the same box, sign-normalized primitive vectors
  std::set<std::vector<long>> oracle;
  for (long a = 0; a <= 100; ++a)
    for (long b = -100; b <= 100; ++b) {
      if (a == 0 && b <= 0) continue;
      BigInt g;
      mpz_gcd(g.get_mpz_t(), BigInt(a).get_mpz_t(), BigInt(b).get_mpz_t());
      if (g != 1) continue;
      long long fx = static_cast<long long>(a) * (a * a - 2 * b * b);
      if (fx == 0) continue;
      long long n = fx < 0 ? -fx : fx;
      long long h = std::max(std::abs(a), std::abs(b));
      if (n <= h) oracle.insert({a, b});
    }
  std::set<std::vector<long>> got;
  for (const auto& p : r.accepted) got.insert(as_longs(p));
  CHECK(got == oracle);

  // expected representatives at this bound
  std::set<std::vector<long>> reps;
  for (const auto& cls : r.classes) reps.insert(as_longs(cls.rep));
  for (auto want : {std::vector<long>{1, 0}, {1, 1}, {1, -1}, {3, 2}, {7, 5}})
    CHECK(reps.count(want) == 1);

  // nu = -10: only H_S = 1 survivors
  SolutionReport tiny = solve_inequality(pell_instance(BigRational(-10)), opt);
  for (const auto& cls : tiny.classes)
    CHECK(*s_height_exact(cls.rep, inst.s) == 1);
}

TEST_CASE("solver determinism across thread counts") {
  InequalityInstance inst = pell_instance(BigRational(1));
  SolveOptions serial;
  serial.bound = 60;
  SolveOptions parallel = serial;
  parallel.threads = 4;
  SolutionReport a = solve_inequality(inst, serial);
  SolutionReport b = solve_inequality(inst, parallel);
  REQUIRE(a.accepted.size() == b.accepted.size());
  for (size_t i = 0; i < a.accepted.size(); ++i)
    CHECK(as_longs(a.accepted[i]) == as_longs(b.accepted[i]));
  REQUIRE(a.classes.size() == b.classes.size());
  for (size_t i = 0; i < a.classes.size(); ++i)
    CHECK(as_longs(a.classes[i].rep) == as_longs(b.classes[i].rep));
  CHECK(a.scanned == b.scanned);
}

TEST_CASE("equation search") {
  NumberField q = q_field();
  DecomposableForm f = pell_form();
  PlaceSet s = PlaceSet::over_primes(q, {});
  SolveOptions opt;
  opt.bound = 50;

  MPoly three = MPoly::constant(q, 2, q.from_rational(BigRational(3)));
  SolutionReport r = equation_search(f, three, s, opt);
  std::set<std::vector<long>> got;
  for (const auto& p : r.accepted) got.insert(as_longs(p));
  CHECK(got == std::set<std::vector<long>>{{3, -2}, {3, 2}});

  // G = 0 rejected by the "!= 0" clause
  MPoly zero(q, 2);
  SolutionReport rz = equation_search(f, zero, s, opt);
  CHECK(rz.accepted.empty());

  // degree >= q rejected
  MPoly cubic(q, 2);
  cubic.add_term({3, 0}, q.one());
  try {
    equation_search(f, cubic, s, opt);
    FAIL("expected DegreeTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeTooLarge);
  }

  // degree q-2m flags the beyond-regime warning: deg G = 1 = 3 - 2
  MPoly lin(q, 2);
  lin.add_term({1, 0}, q.one());
  SolutionReport rl = equation_search(f, lin, s, opt);
  CHECK(rl.beyond_regime);
}

TEST_CASE("proximity functional") {
  NumberField q = q_field();
  SubfieldMap id = SubfieldMap::identity(q);
  PlaceSet s = PlaceSet::over_primes(q, {});
  std::vector<LinearForm> fs = {
      LinearForm({q.one(), q.zero()}), LinearForm({q.zero(), q.one()}),
      LinearForm({q.one(), -q.one()})};
  DecomposableForm f = DecomposableForm::build(q.one(), std::move(fs), id, s);

  Point x = {q.from_rational(BigRational(2)), q.one()};
  LogInterval v1 = subspace_functional(x, f, s, kTol);
  LogInterval v2 = subspace_functional_telescoped(x, f, s, kTol);
  CHECK(v1.overlaps(v2));
  // hand value 2 log 2
  CHECK(v1.lower() < BigRational(13863, 10000));
  CHECK(v1.upper() > BigRational(13862, 10000));

  // extremal case: every |L_j(x)| = ||L_j|| * ||x|| at the single place
  std::vector<LinearForm> ex = {LinearForm({q.one(), q.zero()})};
  DecomposableForm fe = DecomposableForm::build(q.one(), std::move(ex), id, s);
  Point xe = {q.one(), q.zero()};
  LogInterval ve = subspace_functional(xe, fe, s, kTol);
  CHECK(ve.contains(BigRational(0)));
  CHECK(ve.width() < kTol);

  // vanishing factor
  Point bad = {q.zero(), q.one()};
  try {
    subspace_functional(bad, f, s, kTol);
    FAIL("expected FactorVanishes");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FactorVanishes);
  }

  // two-path identity on a random corpus, over Q and through Q(sqrt2)
  DecomposableForm fp = pell_form();
  auto g = rng(79);
  std::uniform_int_distribution<long> c(-30, 30);
  int done = 0;
  while (done < 200) {
    Point p = {q.from_rational(BigRational(c(g))),
               q.from_rational(BigRational(c(g)))};
    if (p[0].is_zero() && p[1].is_zero()) continue;
    const DecomposableForm& form = (done % 2 == 0) ? f : fp;
    bool vanish = false;
    for (const auto& l : form.factors()) {
      std::vector<FieldElement> pg;
      for (const auto& e : p)
        pg.push_back(form.embedding().embed(e));
      if (l.eval(pg).is_zero()) vanish = true;
    }
    if (vanish) continue;
    CHECK(subspace_functional(p, form, s, kTol)
              .overlaps(subspace_functional_telescoped(p, form, s, kTol)));
    ++done;
  }
}

TEST_CASE("subspace covers") {
  NumberField q = q_field();
  auto pt = [&](long a, long b, long c) {
    return Point{q.from_rational(BigRational(a)), q.from_rational(BigRational(b)),
                 q.from_rational(BigRational(c))};
  };
  std::vector<Point> pts = {pt(1, 0, 0), pt(2, 0, 0), pt(3, 0, 0),
                            pt(0, 1, 1), pt(0, 2, 2)};
  SubspaceCover c1 = subspace_cover(pts, 1);
  CHECK(c1.subspaces.size() == 2);
  SubspaceCover c2 = subspace_cover(pts, 2);
  CHECK(c2.subspaces.size() == 1);
  CHECK(subspace_cover({}, 1).subspaces.empty());

  // membership and dimension checks
  for (const auto& cover : {c1, c2}) {
    CHECK(cover.assignment.size() == pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
      const Subspace& sub = cover.subspaces[cover.assignment[i]];
      CHECK(sub.basis.size() <= 2);
      // exact membership: rank does not grow when the point joins the basis
      Matrix<BigRational> rows;
      for (const auto& b : sub.basis) {
        std::vector<BigRational> row;
        for (const auto& e : b) row.push_back(e.rational_value());
        rows.push_back(row);
      }
      auto div = [](const BigRational& x, const BigRational& y) { return x / y; };
      size_t base_rank = rank_exact(rows, div);
      std::vector<BigRational> prow;
      for (const auto& e : pts[i]) prow.push_back(e.rational_value());
      rows.push_back(prow);
      CHECK(rank_exact(rows, div) == base_rank);
    }
  }
}

TEST_CASE("growth profile") {
  std::vector<ProfileRow> rows =
      growth_profile(pell_instance(BigRational(1)), {1, 10, 100}, 1);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].class_count < rows[1].class_count);
  CHECK(rows[1].class_count < rows[2].class_count);

  // nu = 0 Thue-like instance: constant after the first entry
  std::vector<ProfileRow> flat =
      growth_profile(pell_instance(BigRational(0)), {10, 100, 1000}, 1);
  CHECK(flat[0].class_count == flat[1].class_count);
  CHECK(flat[1].class_count == flat[2].class_count);

  // empty instance
  std::vector<ProfileRow> tiny =
      growth_profile(pell_instance(BigRational(-10)), {5, 10}, 1);
  CHECK(tiny[0].class_count == tiny[1].class_count);
}

TEST_CASE("sequence experiments") {
  NumberField q = q_field();
  SubfieldMap id = SubfieldMap::identity(q);
  PlaceSet s = PlaceSet::over_primes(q, {});
  auto family = [&](long n) -> InequalityInstance {
    std::vector<LinearForm> fs = {
        LinearForm({q.one(), q.zero()}),
        LinearForm({q.one(), q.from_rational(BigRational(-n))}),
        LinearForm({q.one(), q.from_rational(BigRational(n))})};
    DecomposableForm f = DecomposableForm::build(q.one(), std::move(fs), id, s);
    return {std::move(f), BigRational(1), BigRational(9, 10), s, false};
  };
  auto budget = [](long) { return 200L; };

  auto rows = sequence_experiment(family, budget, {5}, 1, kTol);
  REQUIRE(rows.size() == 1);
  CHECK(!rows[0].skipped);
  // h(F_5) = log 25 (coefficients 1, -25)
  CHECK(rows[0].form_height.lower() < BigRational(32190, 10000));
  CHECK(rows[0].form_height.upper() > BigRational(32188, 10000));
  CHECK(rows[0].rep_heights.size() == rows[0].report.classes.size());

  // constant family: h(F_n) column constant
  auto constant = [&](long) { return pell_instance(BigRational(1)); };
  auto crows = sequence_experiment(constant, budget, {1, 2, 3}, 1, kTol);
  CHECK(crows[0].form_height.overlaps(crows[1].form_height));
  CHECK(crows[1].form_height.overlaps(crows[2].form_height));

  // repeated factor at n=0: X0 - 0*X1 collides with X0 -> skipped row
  auto degenerate = [&](long n) -> InequalityInstance {
    std::vector<LinearForm> fs = {
        LinearForm({q.one(), q.zero()}),
        LinearForm({q.one(), q.from_rational(BigRational(-n))})};
    DecomposableForm f = DecomposableForm::build(q.one(), std::move(fs), id, s);
    return {std::move(f), BigRational(1), BigRational(0), s, false};
  };
  auto drows = sequence_experiment(degenerate, budget, {0, 1}, 1, kTol);
  CHECK(drows[0].skipped);
  CHECK(drows[0].note.find("GeneralPositionFailure") != std::string::npos);
  CHECK(!drows[1].skipped);
}
