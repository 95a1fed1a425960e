#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dfi/config.hpp"
#include "dfi/report.hpp"

namespace {

using namespace dfi;

struct Flags {
  std::string config_path;
  bool json = false;
  std::string tolerance;
  long precision_cap = 0;
  int threads = 1;
  long bound = -1;      // -1 = use config
  bool strict = false;  // OR-ed with config
};

ExperimentConfig load_config(const Flags& fl) {
  if (fl.config_path.empty())
    fail(ErrorCode::ValidationError, "--config is required for this command");
  std::ifstream in(fl.config_path);
  if (!in)
    fail(ErrorCode::ValidationError, "cannot open " + fl.config_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  ExperimentConfig cfg = parse_config(buf.str());
  if (!fl.tolerance.empty()) {
    cfg.tolerance = parse_rational(fl.tolerance);
    if (cfg.tolerance <= 0)
      fail(ErrorCode::ValidationError, "--tolerance must be positive");
  }
  if (fl.precision_cap > 0) cfg.precision_cap_bits = fl.precision_cap;
  if (fl.bound >= 0) cfg.bound = fl.bound;
  if (fl.strict) cfg.strict = true;
  set_precision_cap(cfg.precision_cap_bits);
  return cfg;
}

void emit(const ExperimentConfig& cfg, const Flags& fl,
          const std::string& json_lines, const std::string& table) {
  if (!fl.json) {
    std::cout << table;
    return;
  }
  if (cfg.output_path.empty()) {
    std::cout << json_lines;
    return;
  }
  std::ofstream out(cfg.output_path, std::ios::binary);
  if (!out)
    fail(ErrorCode::ValidationError, "cannot write " + cfg.output_path);
  out << json_lines;
}

SolveOptions solve_options(const ExperimentConfig& cfg, const Flags& fl) {
  SolveOptions opt;
  opt.bound = cfg.bound;
  opt.threads = fl.threads;
  opt.tolerance = cfg.tolerance;
  return opt;
}

int report_exit(const SolutionReport& r) { return r.borderline.empty() ? 0 : 1; }

std::vector<FieldElement> input_vector(const ExperimentConfig& cfg,
                                       const ExperimentObjects& obj) {
  if (cfg.input_vector.empty())
    fail(ErrorCode::ValidationError, "input.vector: required for this command");
  std::vector<FieldElement> x;
  for (const auto& e : cfg.input_vector) x.push_back(obj.k.parse_element(e));
  return x;
}

FieldElement input_element(const ExperimentConfig& cfg,
                           const ExperimentObjects& obj) {
  if (!cfg.input_element)
    fail(ErrorCode::ValidationError, "input.element: required for this command");
  return obj.k.parse_element(*cfg.input_element);
}

int cmd_places(const ExperimentConfig& cfg, const Flags& fl) {
  auto obj = build_objects(cfg);
  std::string json_lines, table;
  for (const auto& v : obj.s.archimedean()) {
    Json j;
    j["kind"] = "place";
    j["place"] = v.str();
    j["local_degree"] = v.local_degree();
    json_lines += j.dump() + "\n";
    table += v.str() + "  (local degree " +
             std::to_string(v.local_degree()) + ")\n";
  }
  for (const auto& v : obj.s.finite()) {
    Json j;
    j["kind"] = "place";
    j["place"] = v.str();
    j["prime"] = v.prime().get_str();
    j["local_degree"] = v.local_degree();
    json_lines += j.dump() + "\n";
    table += v.str() + "  (local degree " +
             std::to_string(v.local_degree()) + ")\n";
  }
  emit(cfg, fl, json_lines, table);
  return 0;
}

int cmd_norm(const ExperimentConfig& cfg, const Flags& fl) {
  auto obj = build_objects(cfg);
  FieldElement a = input_element(cfg, obj);
  BigRational n = s_norm(a, obj.s);
  Json j;
  j["kind"] = "norm";
  j["element"] = element_json(a);
  j["s_norm"] = rational_json(n);
  j["s_integer"] = is_s_integer(a, obj.s);
  j["s_unit"] = is_s_unit(a, obj.s);
  std::ostringstream table;
  table << "N_S(" << a.str() << ") = " << rational_str(n)
        << (is_s_unit(a, obj.s)
                ? "  (S-unit)"
                : is_s_integer(a, obj.s) ? "  (S-integer)" : "")
        << "\n";
  emit(cfg, fl, j.dump() + "\n", table.str());
  return 0;
}

int cmd_height(const ExperimentConfig& cfg, const Flags& fl) {
  auto obj = build_objects(cfg);
  std::vector<FieldElement> x = cfg.input_vector.empty()
                                    ? std::vector<FieldElement>{input_element(cfg, obj)}
                                    : input_vector(cfg, obj);
  LogInterval h = height(x, cfg.tolerance);
  LogInterval hs = s_height_log(x, obj.s, cfg.tolerance);
  Json j;
  j["kind"] = "height";
  j["vector"] = point_json(x);
  j["abs_height_log"] = interval_json(h);
  j["s_height_log"] = interval_json(hs);
  std::ostringstream table;
  table << "h" << point_str(x) << " in " << h.str(12) << "\n"
        << "log H_S in " << hs.str(12) << "\n";
  emit(cfg, fl, j.dump() + "\n", table.str());
  return 0;
}

int cmd_check_form(const ExperimentConfig& cfg, const Flags& fl) {
  auto obj = build_objects(cfg);
  DecomposableForm f = build_form(cfg, obj);
  GeneralPositionResult gp = general_position(f.factors(), f.m());
  FactorHeightReport hr = factor_heights(f, cfg.tolerance);
  Json j;
  j["kind"] = "check_form";
  j["form"] = f.str();
  j["q"] = f.q();
  j["m"] = f.m();
  j["general_position"] = gp.ok;
  if (!gp.ok) j["witness"] = gp.witness;
  j["form_height"] = interval_json(hr.form_height);
  j["slack"] = interval_json(hr.slack);
  std::ostringstream table;
  table << "F = " << f.str() << "  (q = " << f.q() << ", m = " << f.m()
        << ")\n";
  if (gp.ok) {
    table << "general position: yes\n";
  } else {
    table << "general position: NO; singular factor subset {";
    for (size_t i = 0; i < gp.witness.size(); ++i)
      table << (i ? "," : "") << gp.witness[i];
    table << "}\n";
  }
  table << "h(F) in " << hr.form_height.str(12) << ", max_j h(L_j) - h(F) in "
        << hr.slack.str(12) << "\n";
  emit(cfg, fl, j.dump() + "\n", table.str());
  return 0;
}

int cmd_solve(const ExperimentConfig& cfg, const Flags& fl) {
  auto obj = build_objects(cfg);
  InequalityInstance inst = build_instance(cfg, obj);
  SolutionReport r = solve_inequality(inst, solve_options(cfg, fl));
  emit(cfg, fl, solution_jsonl(r, "solve"), solution_table(r));
  return report_exit(r);
}

int cmd_equation(const ExperimentConfig& cfg, const Flags& fl) {
  auto obj = build_objects(cfg);
  DecomposableForm f = build_form(cfg, obj);
  if (!cfg.equation_rhs)
    fail(ErrorCode::ValidationError, "equation.rhs: required for this command");
  MPoly g(obj.k, f.m() + 1);
  g.add_term(std::vector<unsigned>(f.m() + 1, 0),
             obj.k.parse_element(*cfg.equation_rhs));
  SolutionReport r = equation_search(f, g, obj.s, solve_options(cfg, fl));
  emit(cfg, fl, solution_jsonl(r, "equation"), solution_table(r));
  return report_exit(r);
}

int cmd_reduce(const ExperimentConfig& cfg, const Flags& fl) {
  auto obj = build_objects(cfg);
  FactoredPoly p = build_factored_poly(cfg, obj);
  DecomposableForm f = reduction_form(p, cfg.res_m, obj.s);
  HeightBoundReport hr = height_bound_report(p, cfg.res_m, obj.s, cfg.tolerance);
  Json j;
  j["kind"] = "reduce";
  j["poly"] = p.str();
  j["form"] = f.str();
  j["poly_height"] = interval_json(hr.poly_height);
  j["form_height"] = interval_json(hr.form_height);
  j["slack"] = interval_json(hr.slack);
  std::ostringstream table;
  table << "P = " << p.str() << "\nF = " << f.str() << "\n"
        << "h(P) in " << hr.poly_height.str(12) << ", h(F) in "
        << hr.form_height.str(12) << ", h(F) - q*h(P) in " << hr.slack.str(12)
        << "\n";
  emit(cfg, fl, j.dump() + "\n", table.str());
  return 0;
}

int cmd_res_solve(const ExperimentConfig& cfg, const Flags& fl) {
  auto obj = build_objects(cfg);
  FactoredPoly p = build_factored_poly(cfg, obj);
  SolutionReport r = res_ineq_search(p, cfg.res_m, cfg.c, cfg.nu, obj.s,
                                     solve_options(cfg, fl));
  emit(cfg, fl, solution_jsonl(r, "res-solve"), solution_table(r));
  return report_exit(r);
}

int cmd_cover(const ExperimentConfig& cfg, const Flags& fl) {
  auto obj = build_objects(cfg);
  InequalityInstance inst = build_instance(cfg, obj);
  SolutionReport r = solve_inequality(inst, solve_options(cfg, fl));
  SubspaceCover cover = subspace_cover(r.accepted, cfg.cover_l);
  emit(cfg, fl, solution_jsonl(r, "cover") + cover_jsonl(cover, r.accepted),
       solution_table(r) + cover_table(cover, r.accepted));
  return report_exit(r);
}

int cmd_profile(const ExperimentConfig& cfg, const Flags& fl) {
  auto obj = build_objects(cfg);
  InequalityInstance inst = build_instance(cfg, obj);
  if (cfg.profile_bounds.empty())
    fail(ErrorCode::ValidationError, "profile.bounds: required for this command");
  auto rows = growth_profile(inst, cfg.profile_bounds, fl.threads);
  emit(cfg, fl, profile_jsonl(rows), profile_table(rows));
  bool borderline = false;
  for (const auto& row : rows) borderline = borderline || row.borderline_count;
  return borderline ? 1 : 0;
}

int cmd_experiment(const ExperimentConfig& cfg, const Flags& fl) {
  auto obj = build_objects(cfg);
  if (cfg.family_n_end < cfg.family_n_start)
    fail(ErrorCode::ValidationError, "family.n_end: must be >= family.n_start");
  if (cfg.family_budget <= 0)
    fail(ErrorCode::ValidationError, "family.budget: must be positive");
  std::vector<long> ns;
  for (long n = cfg.family_n_start; n <= cfg.family_n_end; ++n) ns.push_back(n);
  auto rows = sequence_experiment(
      [&](long n) { return build_family_instance(cfg, obj, n); },
      [&](long) { return cfg.family_budget; }, ns, fl.threads, cfg.tolerance);
  emit(cfg, fl, sequence_jsonl(rows), sequence_table(rows));
  bool borderline = false;
  for (const auto& row : rows)
    borderline = borderline || (!row.skipped && !row.report.borderline.empty());
  return borderline ? 1 : 0;
}

int cmd_verify_core(const Flags& fl) {
  // Config-free self test on small fixed data.
  (void)fl;
  NumberField q = NumberField::rationals();
  NumberField k = NumberField::create(ZPoly({BigInt(-2), BigInt(0), BigInt(1)}));
  bool ok = true;
  for (const auto& f : {q, k}) {
    for (long i = 1; i <= 19; i += 2) {
      // odd numerators keep norms away from 2, which ramifies in Q(sqrt(2))
      FieldElement a = f.element(f.degree() == 1
                                     ? std::vector<BigRational>{BigRational(i, 7)}
                                     : std::vector<BigRational>{BigRational(i, 7),
                                                                BigRational(1, 3)});
      ok = ok && product_formula_check(a);
    }
  }
  PlaceSet s = PlaceSet::over_primes(q, {BigInt(3)});
  ok = ok && s_norm(q.from_rational(BigRational(45)), s) == BigRational(5);
  std::cout << (ok ? "core self-check passed\n" : "core self-check FAILED\n");
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic laboratory for decomposable form inequalities"};
  app.require_subcommand(1);

  Flags fl;
  app.add_option("--config", fl.config_path, "experiment config (TOML)");
  app.add_flag("--json", fl.json, "emit JSON Lines instead of tables");
  app.add_option("--tolerance", fl.tolerance, "interval tolerance, exact p/q");
  app.add_option("--precision-cap", fl.precision_cap, "precision cap in bits");
  app.add_option("--threads", fl.threads, "worker thread count")
      ->check(CLI::PositiveNumber);
  app.add_option("--bound", fl.bound, "box bound override");
  app.add_flag("--strict", fl.strict, "use strict '<' in the inequality");

  std::string cmd;
  const std::pair<const char*, const char*> subs[] = {
      {"places", "list the places of K in S"},
      {"norm", "S-norm of the [input] element"},
      {"height", "height and S-height of the [input] vector"},
      {"check-form", "validate the [form]: coefficients, general position, heights"},
      {"solve", "scan the box for solutions of the norm inequality"},
      {"equation", "scan the box for solutions of F(x) = rhs"},
      {"reduce", "build and report the reduction form of [resultant]"},
      {"res-solve", "resultant inequality over monic degree-m polynomials"},
      {"cover", "solve, then cover the solutions by low-dimensional subspaces"},
      {"profile", "solution class counts over the [profile] bounds"},
      {"experiment", "run the parametric [family] over its n range"},
      {"verify-core", "config-free arithmetic self-checks"},
  };
  for (const auto& [name, desc] : subs) {
    auto* sub = app.add_subcommand(name, desc);
    sub->fallthrough();
    sub->callback([&cmd, name = name] { cmd = name; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd == "verify-core") return cmd_verify_core(fl);
    ExperimentConfig cfg = load_config(fl);
    if (cmd == "places") return cmd_places(cfg, fl);
    if (cmd == "norm") return cmd_norm(cfg, fl);
    if (cmd == "height") return cmd_height(cfg, fl);
    if (cmd == "check-form") return cmd_check_form(cfg, fl);
    if (cmd == "solve") return cmd_solve(cfg, fl);
    if (cmd == "equation") return cmd_equation(cfg, fl);
    if (cmd == "reduce") return cmd_reduce(cfg, fl);
    if (cmd == "res-solve") return cmd_res_solve(cfg, fl);
    if (cmd == "cover") return cmd_cover(cfg, fl);
    if (cmd == "profile") return cmd_profile(cfg, fl);
    if (cmd == "experiment") return cmd_experiment(cfg, fl);
  } catch (const dfi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == dfi::ErrorCode::PrecisionCapExceeded ? 3 : 2;
  }
  return 2;
}
