#include <doctest.h>

#include <string>

#include "dfi/config.hpp"
#include "dfi/errors.hpp"

using namespace dfi;

namespace {

const char* kPell = R"(
[field]
poly = [0, 1]

[extension]
poly = [-2, 0, 1]
generator_image = "0"

[form]
factors = [["1", "0"], ["1", "-t"], ["1", "t"]]

[inequality]
c = 1
nu = 1
bound = 100
)";

ErrorCode code_of(const std::string& text) {
  try {
    ExperimentConfig cfg = parse_config(text);
    ExperimentObjects obj = build_objects(cfg);
    build_instance(cfg, obj);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ValidationError;  // sentinel misuse; callers expect throw
}

std::string msg_of(const std::string& text) {
  try {
    ExperimentConfig cfg = parse_config(text);
    build_objects(cfg);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("well-formed config round trip") {
  ExperimentConfig cfg = parse_config(kPell);
  CHECK(cfg.field_poly.degree() == 1);
  REQUIRE(cfg.ext_poly.has_value());
  CHECK(cfg.ext_poly->degree() == 2);
  CHECK(cfg.form_factors.size() == 3);
  CHECK(cfg.c == BigRational(1));
  CHECK(cfg.nu == BigRational(1));
  CHECK(cfg.bound == 100);
  CHECK(!cfg.strict);
  CHECK(cfg.primes.empty());

  ExperimentObjects obj = build_objects(cfg);
  CHECK(obj.k.degree() == 1);
  CHECK(obj.g.degree() == 2);
  InequalityInstance inst = build_instance(cfg, obj);
  CHECK(inst.form.q() == 3);
  CHECK(inst.form.m() == 1);
  // F(1, 1) = 1 * (1 - 2) = -1
  FieldElement v = inst.form.eval({obj.k.one(), obj.k.one()});
  CHECK(v.rational_value() == BigRational(-1));
}

TEST_CASE("rationals travel as strings") {
  std::string text = std::string(kPell) + "\n[output]\ntolerance = \"1/1000\"\n";
  ExperimentConfig cfg = parse_config(text);
  CHECK(cfg.tolerance == BigRational(1, 1000));

  // nu as an exact fraction string
  std::string frac = kPell;
  frac.replace(frac.find("nu = 1"), 6, "nu = \"9/10\"");
  CHECK(parse_config(frac).nu == BigRational(9, 10));

  // float literals are rejected outright
  std::string flt = kPell;
  flt.replace(flt.find("nu = 1"), 6, "nu = 0.5");
  try {
    parse_config(flt);
    FAIL("expected SyntaxError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SyntaxError);
    CHECK(std::string(e.what()).find("p/q") != std::string::npos);
  }
}

TEST_CASE("validation failures") {
  // generator symbol without an extension declared
  std::string no_ext = R"(
[field]
poly = [0, 1]

[form]
factors = [["1", "t"], ["1", "-t"]]

[inequality]
bound = 5
)";
  CHECK(code_of(no_ext) == ErrorCode::ValidationError);

  // non-monic defining polynomial
  CHECK(code_of("[field]\npoly = [1, 2]\n") != ErrorCode::SyntaxError);

  // c must be positive
  std::string bad_c = kPell;
  bad_c.replace(bad_c.find("c = 1"), 5, "c = 0");
  CHECK(code_of(bad_c) == ErrorCode::ValidationError);

  // missing [field]
  CHECK(code_of("[inequality]\nbound = 3\n") == ErrorCode::ValidationError);
}

TEST_CASE("unknown and duplicate keys") {
  std::string unk = R"(
[field]
poly = [0, 1]

[inequality]
slope = 2
)";
  try {
    parse_config(unk);
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValidationError);
    CHECK(std::string(e.what()).find("slope") != std::string::npos);
  }

  std::string unk_section = "[field]\npoly = [0, 1]\n\n[plot]\nx = 1\n";
  try {
    parse_config(unk_section);
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValidationError);
    CHECK(std::string(e.what()).find("plot") != std::string::npos);
  }

  std::string dup = "[field]\npoly = [0, 1]\n\n[inequality]\nbound = 1\nbound = 2\n";
  try {
    parse_config(dup);
    FAIL("expected SyntaxError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SyntaxError);
  }
}

TEST_CASE("syntax errors carry positions") {
  std::string bad = "[field]\npoly = [0, 1]\nbound 3\n";
  try {
    parse_config(bad);
    FAIL("expected SyntaxError");
  } catch (const Error& e) {
    std::string w = e.what();
    CHECK(e.code() == ErrorCode::SyntaxError);
    CHECK(w.find("line 3") != std::string::npos);
    CHECK(w.find("column") != std::string::npos);
  }

  // unterminated string
  try {
    parse_config("[field]\npoly = [0, 1]\n\n[extension]\ngenerator_image = \"t\n");
    FAIL("expected SyntaxError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SyntaxError);
  }

  // bare word value
  try {
    parse_config("[inequality]\nstrict = yes\n");
    FAIL("expected SyntaxError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SyntaxError);
  }
}

TEST_CASE("multiline arrays and comments") {
  std::string text = R"(
# a form over Q(sqrt 2)
[field]
poly = [0, 1]  # the rationals

[extension]
poly = [
  -2,
  0,
  1,
]
generator_image = "0"

[S]
primes = [2, 7]

[form]
factors = [
  ["1", "0"],
  ["1", "-t"],
  ["1", "t"],
]

[inequality]
bound = 10
)";
  ExperimentConfig cfg = parse_config(text);
  REQUIRE(cfg.primes.size() == 2);
  CHECK(cfg.primes[0] == 2);
  CHECK(cfg.primes[1] == 7);
  CHECK(cfg.form_factors.size() == 3);
  ExperimentObjects obj = build_objects(cfg);
  CHECK(!obj.s.finite().empty());
}

TEST_CASE("family templates substitute the placeholder") {
  std::string text = R"(
[field]
poly = [0, 1]

[family]
factors = [["1", "0"], ["1", "-n"], ["1", "n"]]
n_start = 2
n_end = 4
budget = 50
)";
  ExperimentConfig cfg = parse_config(text);
  CHECK(cfg.family_n_start == 2);
  CHECK(cfg.family_n_end == 4);
  ExperimentObjects obj = build_objects(cfg);
  InequalityInstance inst3 = build_family_instance(cfg, obj, 3);
  // F_3(1, 1) = 1 * (1 - 9) = -8
  FieldElement v = inst3.form.eval({obj.k.one(), obj.k.one()});
  CHECK(v.rational_value() == BigRational(-8));
}

TEST_CASE("message formats stay diagnosable") {
  // a generator image that fails K's defining polynomial is rejected
  std::string bad_image = std::string(kPell);
  bad_image.replace(bad_image.find("\"0\""), 3, "\"t\"");
  std::string w = msg_of(bad_image);
  CHECK(w.find("EmbeddingUndefined") != std::string::npos);
}
