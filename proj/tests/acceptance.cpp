// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the exit status is the number of failures. Invoked as
//   formlab_acceptance <path-to-cli> <path-to-configs-dir>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dfi/config.hpp"
#include "dfi/errors.hpp"
#include "dfi/forms.hpp"
#include "dfi/places.hpp"
#include "dfi/resultant.hpp"
#include "dfi/search.hpp"
#include "helpers.hpp"

using namespace dfi;
using namespace testhelp;

namespace {

const BigRational kTol(1, 1000000000000L);

std::string g_cli;
std::string g_configs;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string run_command(const std::string& cmd) {
  FILE* p = popen(cmd.c_str(), "r");
  require(p != nullptr, "popen failed");
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  pclose(p);
  return out;
}

InequalityInstance pell_instance() {
  NumberField q = NumberField::rationals();
  NumberField k = sqrt2_field();
  SubfieldMap km(q, k, k.zero());
  PlaceSet s = PlaceSet::over_primes(q, {});
  FieldElement r = k.generator();
  std::vector<LinearForm> fs = {LinearForm({k.one(), k.zero()}),
                                LinearForm({k.one(), -r}),
                                LinearForm({k.one(), r})};
  DecomposableForm f = DecomposableForm::build(k.one(), std::move(fs), km, s);
  return {std::move(f), BigRational(1), BigRational(1), s, false};
}

std::vector<long> as_longs(const Point& x) {
  std::vector<long> out;
  for (const auto& e : x) out.push_back(e.rational_value().get_num().get_si());
  return out;
}

// --- criteria ---------------------------------------------------------

// absolute product formula across several fields
void crit_product_formula() {
  std::vector<NumberField> fields = {q_field(), sqrt2_field(), gauss_field(),
                                     cubic_field()};
  auto g = rng(101);
  for (const auto& k : fields)
    for (int i = 0; i < 30; ++i)
      require(product_formula_check(rand_nonzero(k, g)),
              "product formula failed over " + poly_str(k.defining_poly()));
}

// S-norm and S-height laws
void crit_s_norm_laws() {
  NumberField q = q_field();
  PlaceSet s = PlaceSet::over_primes(q, {BigInt(2), BigInt(3)});
  auto g = rng(103);

  for (int i = 0; i < 100; ++i) {
    FieldElement a = rand_nonzero(q, g);
    FieldElement b = rand_nonzero(q, g);
    require(s_norm(a * b, s) == s_norm(a, s) * s_norm(b, s),
            "S-norm multiplicativity");
  }

  std::uniform_int_distribution<long> coef(-50, 50);
  for (int i = 0; i < 100; ++i) {
    long n = coef(g);
    if (n == 0) continue;
    FieldElement a = q.from_rational(BigRational(n));
    BigRational v = s_norm(a, s);
    require(v > 0 && v.get_den() == 1, "S-norm of an S-integer is a positive integer");
  }

  // S-units over Q: +-2^a 3^b
  std::uniform_int_distribution<long> ex(0, 8);
  std::uniform_int_distribution<int> sgn(0, 1);
  for (int i = 0; i < 50; ++i) {
    BigRational u = BigRational(1);
    long e2 = ex(g), e3 = ex(g);
    for (long j = 0; j < e2; ++j) u *= 2;
    for (long j = 0; j < e3; ++j) u *= 3;
    if (sgn(g)) u = -u;
    FieldElement eta = q.from_rational(u);
    require(is_s_unit(eta, s) && s_norm(eta, s) == 1, "S-unit norm 1 over Q");
    // exact S-height invariance under eta scaling; coordinates in O_S
    Point x = {rand_nonzero(q, g, -20, 20, 1), rand_element(q, g, -20, 20, 1)};
    Point xs = {eta * x[0], eta * x[1]};
    require(*s_height_exact(x, s) == *s_height_exact(xs, s),
            "S-height scaling invariance over Q");
  }

  // S-units over Q(sqrt 2): powers of the fundamental unit
  NumberField k = sqrt2_field();
  PlaceSet s8 = PlaceSet::over_primes(k, {BigInt(7)});
  FieldElement fu = k.element({BigRational(1), BigRational(1)});
  BigRational tight(BigInt(1), BigInt("1000000000000000000000000000000"));
  FieldElement eta = k.one();
  for (int i = 0; i < 6; ++i) {
    require(is_s_unit(eta, s8) && s_norm(eta, s8) == 1, "S-unit norm 1 over Q(sqrt2)");
    Point x = {k.one(), k.element({BigRational(3), BigRational(-2)})};
    Point xs = {eta * x[0], eta * x[1]};
    require(s_height_log(x, s8, tight).overlaps(s_height_log(xs, s8, tight)),
            "S-height scaling invariance over Q(sqrt2)");
    eta = eta * fu;
  }
}

// S-norm under field extension: N_T = N_S^{[G:K]}
void crit_norm_extension() {
  NumberField q = q_field();
  NumberField k = sqrt2_field();
  SubfieldMap km(q, k, k.zero());
  PlaceSet s = PlaceSet::over_primes(q, {BigInt(7)});
  PlaceSet t = PlaceSet::over_primes(k, {BigInt(7)});
  auto g = rng(107);
  for (int i = 0; i < 100; ++i) {
    FieldElement a = rand_nonzero(q, g);
    BigRational ns = s_norm(a, s);
    require(s_norm(km.embed(a), t) == ns * ns, "norm extension law");
  }
}

// resultant identity Res(P, Q) = F(x_Q) on random corpora
void crit_resultant_identity() {
  auto g = rng(109);
  std::uniform_int_distribution<long> root(-9, 9);
  std::uniform_int_distribution<long> dq(1, 3);
  std::uniform_int_distribution<long> dp(1, 5);
  for (const NumberField& k : {q_field(), sqrt2_field()}) {
    SubfieldMap id = SubfieldMap::identity(k);
    PlaceSet s = PlaceSet::over_primes(k, {});
    for (int rep = 0; rep < 100; ++rep) {
      // distinct integral roots in k
      std::vector<FieldElement> roots;
      long deg = dp(g);
      std::set<std::vector<long>> seen;
      while (static_cast<long>(roots.size()) < deg) {
        std::vector<BigRational> c;
        std::vector<long> key;
        for (long i = 0; i < k.degree(); ++i) {
          long v = root(g);
          c.emplace_back(v);
          key.push_back(v);
        }
        if (!seen.insert(key).second) continue;
        roots.push_back(k.element(c));
      }
      FieldElement a0 = k.from_rational(BigRational(root(g) == 0 ? 1 : 2));
      FactoredPoly p = FactoredPoly::build(a0, roots, id, s);

      KPoly qq;
      long m = dq(g);
      for (long i = 0; i < m; ++i)
        qq.push_back(k.from_rational(BigRational(root(g))));
      qq.push_back(k.one());  // monic of degree m

      require(res_identity_check(p, qq, s), "Res(P,Q) = F(x_Q)");

      // the Sylvester value against the exact product over roots
      FieldElement lhs = resultant(p.expanded(), qq);
      FieldElement prod = p.leading().pow(m);
      for (const auto& r : p.roots()) prod = prod * kpoly_eval(qq, r);
      require(lhs == prod, "resultant equals the root product");
    }
  }
}

// growth profile of the Pell-type inequality
void crit_growth_profile() {
  InequalityInstance inst = pell_instance();
  auto rows = growth_profile(inst, {10, 100, 1000, 10000}, 1);
  for (size_t i = 1; i < rows.size(); ++i)
    require(rows[i - 1].class_count < rows[i].class_count,
            "class counts strictly increase");

  SolveOptions opt;
  opt.bound = 100;
  SolutionReport r = solve_inequality(inst, opt);
  std::set<std::vector<long>> reps;
  for (const auto& cls : r.classes) reps.insert(as_longs(cls.rep));
  for (auto want : {std::vector<long>{1, 1}, {3, 2}, {7, 5}, {17, 12}}) {
    require(reps.count(want) == 1, "expected representative present");
    Point x = {inst.s.field().from_rational(BigRational(want[0])),
               inst.s.field().from_rational(BigRational(want[1]))};
    require(ineq_filter(inst, x) == FilterResult::Accept,
            "representative passes the exact filter");
  }
}

// Thue-type instance with nu = 0: finitely many classes, stable in B
void crit_thue_stability() {
  ExperimentConfig cfg = parse_config(slurp(g_configs + "/thue.toml"));
  ExperimentObjects obj = build_objects(cfg);
  InequalityInstance inst = build_instance(cfg, obj);
  auto rows = growth_profile(inst, {10, 1000, 100000}, 1);
  for (const auto& row : rows)
    require(row.class_count == 2, "exactly two classes at every bound");

  SolveOptions opt;
  opt.bound = 10;
  SolutionReport r = solve_inequality(inst, opt);
  std::set<std::vector<long>> reps;
  for (const auto& cls : r.classes) reps.insert(as_longs(cls.rep));
  require(reps == std::set<std::vector<long>>{{1, 0}, {1, 1}},
          "classes are (1,0) and (1,1)");
}

// equation search F(x) = 3 for the Pell form
void crit_equation() {
  InequalityInstance inst = pell_instance();
  const NumberField& q = inst.s.field();
  MPoly three = MPoly::constant(q, 2, q.from_rational(BigRational(3)));
  SolveOptions opt;
  opt.bound = 50;
  SolutionReport r = equation_search(inst.form, three, inst.s, opt);
  std::set<std::vector<long>> got;
  for (const auto& p : r.accepted) got.insert(as_longs(p));
  require(got == std::set<std::vector<long>>{{3, -2}, {3, 2}},
          "equation solutions are (3,+-2)");
}

// proximity functional: two evaluation paths agree; covers have witnesses
void crit_functional_and_cover() {
  NumberField q = q_field();
  SubfieldMap id = SubfieldMap::identity(q);
  PlaceSet s = PlaceSet::over_primes(q, {});
  std::vector<LinearForm> fs = {
      LinearForm({q.one(), q.zero()}), LinearForm({q.zero(), q.one()}),
      LinearForm({q.one(), -q.one()})};
  DecomposableForm f = DecomposableForm::build(q.one(), std::move(fs), id, s);

  LogInterval v = subspace_functional({q.from_rational(BigRational(2)), q.one()},
                                      f, s, kTol);
  require(v.lower() < BigRational(13863, 10000) &&
              v.upper() > BigRational(13862, 10000),
          "hand value 2 log 2");

  auto g = rng(113);
  std::uniform_int_distribution<long> c(-30, 30);
  int done = 0;
  while (done < 200) {
    Point p = {q.from_rational(BigRational(c(g))),
               q.from_rational(BigRational(c(g)))};
    bool vanish = p[0].is_zero() || p[1].is_zero() || p[0] == p[1];
    if (vanish) continue;
    require(subspace_functional(p, f, s, kTol)
                .overlaps(subspace_functional_telescoped(p, f, s, kTol)),
            "two functional paths agree");
    ++done;
  }

  auto pt = [&](long a, long b, long d) {
    return Point{q.from_rational(BigRational(a)), q.from_rational(BigRational(b)),
                 q.from_rational(BigRational(d))};
  };
  std::vector<Point> pts = {pt(1, 0, 0), pt(2, 0, 0), pt(0, 1, 1), pt(0, 3, 3)};
  SubspaceCover cover = subspace_cover(pts, 1);
  require(cover.subspaces.size() == 2, "two lines cover the corpus");
  require(cover.assignment.size() == pts.size(), "every point is assigned");
  for (size_t i = 0; i < pts.size(); ++i)
    require(cover.subspaces[cover.assignment[i]].basis.size() == 1,
            "line witnesses have one basis vector");
}

// height slack regressions over random corpora
void crit_height_slack() {
  NumberField q = q_field();
  SubfieldMap id = SubfieldMap::identity(q);
  PlaceSet s = PlaceSet::over_primes(q, {});
  auto g = rng(127);
  std::uniform_int_distribution<long> c(-9, 9);

  // factor heights: max_j h(L_j) - h(F) <= q * log 4 for binary forms
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<LinearForm> fs;
    for (int j = 0; j < 3; ++j) {
      long a = c(g), b = c(g);
      if (a == 0 && b == 0) a = 1;
      fs.push_back(LinearForm({q.from_rational(BigRational(a)),
                               q.from_rational(BigRational(b))}));
    }
    if (!general_position(fs, 1).ok) continue;
    DecomposableForm f = DecomposableForm::build(q.one(), std::move(fs), id, s);
    FactorHeightReport fh = factor_heights(f, kTol);
    double bound = 3.0 * std::log(4.0);
    require(fh.slack.upper() < BigRational(long(bound * 10000) + 1, 10000),
            "factor-height slack bound");
  }

  // reduction form heights: h(F) - q*h(P) <= q * log(2(m+2))
  std::uniform_int_distribution<long> dm(1, 3);
  for (int rep = 0; rep < 100; ++rep) {
    long deg = dm(g) + 1;
    std::set<long> used;
    std::vector<FieldElement> roots;
    while (static_cast<long>(roots.size()) < deg) {
      long r = c(g);
      if (!used.insert(r).second) continue;
      roots.push_back(q.from_rational(BigRational(r)));
    }
    FactoredPoly p = FactoredPoly::build(q.one(), roots, id, s);
    long m = dm(g);
    HeightBoundReport hb = height_bound_report(p, m, s, kTol);
    double bound = double(deg) * std::log(2.0 * double(m + 2));
    require(hb.slack.upper() < BigRational(long(bound * 10000) + 1, 10000),
            "reduction-form slack bound");
  }
}

// byte-identical JSON output across thread counts, through the CLI
void crit_determinism() {
  std::string base = "'" + g_cli + "' --config '" + g_configs +
                     "/pell.toml' --json solve --threads ";
  std::string one = run_command(base + "1");
  std::string four = run_command(base + "4");
  require(!one.empty(), "CLI produced output");
  require(one == four, "JSON identical for 1 and 4 threads");
}

struct Criterion {
  const char* name;
  std::function<void()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: formlab_acceptance <cli-binary> <configs-dir>\n";
    return 2;
  }
  g_cli = argv[1];
  g_configs = argv[2];

  std::vector<Criterion> criteria = {
      {"product formula over four fields", crit_product_formula},
      {"S-norm and S-height laws", crit_s_norm_laws},
      {"S-norm under field extension", crit_norm_extension},
      {"resultant identity on random corpora", crit_resultant_identity},
      {"growth profile of a norm-form inequality", crit_growth_profile},
      {"stable class count in the Thue regime", crit_thue_stability},
      {"norm-form equation solutions", crit_equation},
      {"proximity functional and subspace covers", crit_functional_and_cover},
      {"height slack regressions", crit_height_slack},
      {"deterministic JSON across thread counts", crit_determinism},
  };

  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i].fn();
      std::cout << "PASS criterion " << i + 1 << ": " << criteria[i].name << "\n";
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "FAIL criterion " << i + 1 << ": " << criteria[i].name
                << " (" << e.what() << ")\n";
    }
    std::cout.flush();
  }
  return failures;
}
