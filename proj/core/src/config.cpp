#include "dfi/config.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "dfi/errors.hpp"

namespace dfi {

namespace {

struct Value {
  enum Kind { Str, Int, Bool, Arr } kind = Int;
  std::string s;
  BigInt i;
  bool b = false;
  std::vector<Value> arr;
  int line = 0, col = 0;
};

[[noreturn]] void syntax_error(int line, int col, const std::string& why) {
  std::ostringstream os;
  os << "line " << line << ", column " << col << ": " << why;
  fail(ErrorCode::SyntaxError, os.str());
}

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
  fail(ErrorCode::ValidationError, key + ": " + why);
}

class Parser {
 public:
  explicit Parser(const std::string& text) : t_(text) {}

  std::map<std::string, std::map<std::string, Value>> run() {
    std::map<std::string, std::map<std::string, Value>> out;
    std::string section;
    while (true) {
      skip_blank(true);
      if (eof()) break;
      if (peek() == '[') {
        int l = line_, c = col_;
        get();
        section = ident();
        if (section.empty()) syntax_error(l, c, "expected a section name");
        if (eof() || peek() != ']') syntax_error(line_, col_, "expected ']'");
        get();
        end_of_line();
        continue;
      }
      int l = line_, c = col_;
      std::string key = ident();
      if (key.empty()) syntax_error(l, c, "expected a key");
      skip_blank(false);
      if (eof() || peek() != '=') syntax_error(line_, col_, "expected '='");
      get();
      skip_blank(false);
      Value v = value();
      end_of_line();
      if (section.empty()) syntax_error(l, c, "key outside any section");
      if (!out[section].emplace(key, std::move(v)).second)
        syntax_error(l, c, "duplicate key '" + key + "'");
    }
    return out;
  }

 private:
  bool eof() const { return pos_ >= t_.size(); }
  char peek() const { return t_[pos_]; }
  char get() {
    char c = t_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_blank(bool newlines) {
    while (!eof()) {
      char c = peek();
      if (c == '#') {
        while (!eof() && peek() != '\n') get();
      } else if (c == ' ' || c == '\t' || c == '\r' ||
                 (newlines && c == '\n')) {
        get();
      } else {
        return;
      }
    }
  }

  void end_of_line() {
    skip_blank(false);
    if (eof()) return;
    if (peek() != '\n') syntax_error(line_, col_, "unexpected trailing input");
    get();
  }

  std::string ident() {
    std::string s;
    while (!eof()) {
      char c = peek();
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')
        s.push_back(get());
      else
        break;
    }
    return s;
  }

  Value value() {
    if (eof()) syntax_error(line_, col_, "expected a value");
    Value v;
    v.line = line_;
    v.col = col_;
    char c = peek();
    if (c == '"') {
      get();
      v.kind = Value::Str;
      while (true) {
        if (eof() || peek() == '\n')
          syntax_error(v.line, v.col, "unterminated string");
        char d = get();
        if (d == '"') break;
        if (d == '\\') {
          if (eof()) syntax_error(line_, col_, "dangling escape");
          char e = get();
          if (e == '"' || e == '\\')
            v.s.push_back(e);
          else
            syntax_error(line_, col_, "unsupported escape");
        } else {
          v.s.push_back(d);
        }
      }
      return v;
    }
    if (c == '[') {
      get();
      v.kind = Value::Arr;
      while (true) {
        skip_blank(true);
        if (eof()) syntax_error(v.line, v.col, "unterminated array");
        if (peek() == ']') {
          get();
          return v;
        }
        v.arr.push_back(value());
        skip_blank(true);
        if (eof()) syntax_error(v.line, v.col, "unterminated array");
        if (peek() == ',') {
          get();
          continue;
        }
        if (peek() == ']') {
          get();
          return v;
        }
        syntax_error(line_, col_, "expected ',' or ']'");
      }
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string w = ident();
      if (w == "true" || w == "false") {
        v.kind = Value::Bool;
        v.b = (w == "true");
        return v;
      }
      syntax_error(v.line, v.col, "bare value '" + w + "' (quote strings)");
    }
    if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      digits.push_back(get());
      while (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) ||
                        peek() == '.' || peek() == 'e' || peek() == 'E'))
        digits.push_back(get());
      if (digits.find('.') != std::string::npos ||
          digits.find('e') != std::string::npos ||
          digits.find('E') != std::string::npos)
        syntax_error(v.line, v.col,
                     "floating-point literals are not accepted; use an exact "
                     "\"p/q\" string");
      v.kind = Value::Int;
      v.i = BigInt(digits);
      return v;
    }
    syntax_error(v.line, v.col, "unexpected character");
  }

  const std::string& t_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

// ---- typed access ----

std::string want_str(const Value& v, const std::string& key) {
  if (v.kind != Value::Str) bad_key(key, "expected a string");
  return v.s;
}

BigInt want_int(const Value& v, const std::string& key) {
  if (v.kind != Value::Int) bad_key(key, "expected an integer");
  return v.i;
}

long want_long(const Value& v, const std::string& key) {
  BigInt i = want_int(v, key);
  if (!i.fits_slong_p()) bad_key(key, "integer out of range");
  return i.get_si();
}

bool want_bool(const Value& v, const std::string& key) {
  if (v.kind != Value::Bool) bad_key(key, "expected true or false");
  return v.b;
}

BigRational want_rat(const Value& v, const std::string& key) {
  if (v.kind == Value::Int) return BigRational(v.i);
  if (v.kind != Value::Str) bad_key(key, "expected an exact rational (\"p/q\")");
  try {
    return parse_rational(v.s);
  } catch (const Error& e) {
    bad_key(key, e.what());
  }
}

const std::vector<Value>& want_arr(const Value& v, const std::string& key) {
  if (v.kind != Value::Arr) bad_key(key, "expected an array");
  return v.arr;
}

ZPoly want_zpoly(const Value& v, const std::string& key) {
  std::vector<BigInt> c;
  for (const auto& e : want_arr(v, key)) c.push_back(want_int(e, key));
  return ZPoly(std::move(c));
}

std::vector<std::string> want_str_list(const Value& v, const std::string& key) {
  std::vector<std::string> out;
  for (const auto& e : want_arr(v, key)) out.push_back(want_str(e, key));
  return out;
}

template <typename Fn>
void walk(const std::map<std::string, Value>& sec, const std::string& name,
          Fn&& handle) {
  for (const auto& [key, v] : sec) {
    if (!handle(key, v)) bad_key(name + "." + key, "unknown key");
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  auto raw = Parser(text).run();
  ExperimentConfig cfg;
  bool have_field = false;
  for (const auto& [section, sec] : raw) {
    if (section == "field") {
      have_field = true;
      walk(sec, section, [&](const std::string& k, const Value& v) {
        if (k == "poly") {
          cfg.field_poly = want_zpoly(v, "field.poly");
          return true;
        }
        return false;
      });
    } else if (section == "extension") {
      walk(sec, section, [&](const std::string& k, const Value& v) {
        if (k == "poly") {
          cfg.ext_poly = want_zpoly(v, "extension.poly");
          return true;
        }
        if (k == "generator_image") {
          cfg.generator_image = want_str(v, "extension.generator_image");
          return true;
        }
        return false;
      });
    } else if (section == "S") {
      walk(sec, section, [&](const std::string& k, const Value& v) {
        if (k == "primes") {
          for (const auto& e : want_arr(v, "S.primes"))
            cfg.primes.push_back(want_int(e, "S.primes"));
          return true;
        }
        return false;
      });
    } else if (section == "form") {
      walk(sec, section, [&](const std::string& k, const Value& v) {
        if (k == "scalar") {
          cfg.form_scalar = want_str(v, "form.scalar");
          return true;
        }
        if (k == "factors") {
          for (const auto& e : want_arr(v, "form.factors"))
            cfg.form_factors.push_back(want_str_list(e, "form.factors"));
          return true;
        }
        return false;
      });
    } else if (section == "inequality") {
      walk(sec, section, [&](const std::string& k, const Value& v) {
        if (k == "c") {
          cfg.c = want_rat(v, "inequality.c");
          return true;
        }
        if (k == "nu") {
          cfg.nu = want_rat(v, "inequality.nu");
          return true;
        }
        if (k == "bound") {
          cfg.bound = want_long(v, "inequality.bound");
          return true;
        }
        if (k == "strict") {
          cfg.strict = want_bool(v, "inequality.strict");
          return true;
        }
        return false;
      });
    } else if (section == "equation") {
      walk(sec, section, [&](const std::string& k, const Value& v) {
        if (k == "rhs") {
          cfg.equation_rhs = want_str(v, "equation.rhs");
          return true;
        }
        return false;
      });
    } else if (section == "family") {
      walk(sec, section, [&](const std::string& k, const Value& v) {
        if (k == "scalar") {
          cfg.family_scalar = want_str(v, "family.scalar");
          return true;
        }
        if (k == "factors") {
          for (const auto& e : want_arr(v, "family.factors"))
            cfg.family_factors.push_back(want_str_list(e, "family.factors"));
          return true;
        }
        if (k == "n_start") {
          cfg.family_n_start = want_long(v, "family.n_start");
          return true;
        }
        if (k == "n_end") {
          cfg.family_n_end = want_long(v, "family.n_end");
          return true;
        }
        if (k == "budget") {
          cfg.family_budget = want_long(v, "family.budget");
          return true;
        }
        return false;
      });
    } else if (section == "resultant") {
      walk(sec, section, [&](const std::string& k, const Value& v) {
        if (k == "leading") {
          cfg.res_leading = want_str(v, "resultant.leading");
          return true;
        }
        if (k == "roots") {
          cfg.res_roots = want_str_list(v, "resultant.roots");
          return true;
        }
        if (k == "m") {
          cfg.res_m = want_long(v, "resultant.m");
          return true;
        }
        return false;
      });
    } else if (section == "cover") {
      walk(sec, section, [&](const std::string& k, const Value& v) {
        if (k == "l") {
          cfg.cover_l = want_long(v, "cover.l");
          return true;
        }
        return false;
      });
    } else if (section == "profile") {
      walk(sec, section, [&](const std::string& k, const Value& v) {
        if (k == "bounds") {
          for (const auto& e : want_arr(v, "profile.bounds"))
            cfg.profile_bounds.push_back(want_long(e, "profile.bounds"));
          return true;
        }
        return false;
      });
    } else if (section == "input") {
      walk(sec, section, [&](const std::string& k, const Value& v) {
        if (k == "element") {
          cfg.input_element = want_str(v, "input.element");
          return true;
        }
        if (k == "vector") {
          cfg.input_vector = want_str_list(v, "input.vector");
          return true;
        }
        return false;
      });
    } else if (section == "output") {
      walk(sec, section, [&](const std::string& k, const Value& v) {
        if (k == "tolerance") {
          cfg.tolerance = want_rat(v, "output.tolerance");
          if (cfg.tolerance <= 0) bad_key("output.tolerance", "must be positive");
          return true;
        }
        if (k == "precision_cap") {
          cfg.precision_cap_bits = want_long(v, "output.precision_cap");
          return true;
        }
        if (k == "path") {
          cfg.output_path = want_str(v, "output.path");
          return true;
        }
        return false;
      });
    } else {
      bad_key(section, "unknown section");
    }
  }
  if (!have_field || cfg.field_poly.degree() < 1)
    bad_key("field.poly", "a defining polynomial of degree >= 1 is required");
  return cfg;
}

namespace {

// "t" is only meaningful when the coefficient field has degree >= 2; in
// Q[t]/(t) it would silently mean 0.
void guard_generator_use(const std::string& expr, const NumberField& g) {
  if (g.degree() >= 2) return;
  if (expr.find('t') != std::string::npos)
    bad_key(expr, "uses the generator symbol but no extension of degree >= 2 "
                  "is declared");
}

std::string substitute_n(const std::string& expr, long n) {
  std::string out;
  for (char c : expr) {
    if (c == 'n') {
      out += "(" + std::to_string(n) + ")";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

DecomposableForm form_from_strings(const std::string& scalar,
                                   const std::vector<std::vector<std::string>>& rows,
                                   const ExperimentObjects& obj) {
  if (rows.empty()) bad_key("form.factors", "at least one factor is required");
  guard_generator_use(scalar, obj.g);
  FieldElement a = obj.g.parse_element(scalar);
  std::vector<LinearForm> factors;
  for (const auto& row : rows) {
    std::vector<FieldElement> coeffs;
    for (const auto& e : row) {
      guard_generator_use(e, obj.g);
      coeffs.push_back(obj.g.parse_element(e));
    }
    factors.emplace_back(std::move(coeffs));
  }
  return DecomposableForm::build(a, std::move(factors), obj.km, obj.s);
}

}  // namespace

ExperimentObjects build_objects(const ExperimentConfig& cfg) {
  NumberField k = NumberField::create(cfg.field_poly);
  if (cfg.ext_poly) {
    NumberField g = NumberField::create(*cfg.ext_poly);
    SubfieldMap km(k, g, g.parse_element(cfg.generator_image));
    return {k, g, km, PlaceSet::over_primes(k, cfg.primes)};
  }
  return {k, k, SubfieldMap::identity(k), PlaceSet::over_primes(k, cfg.primes)};
}

DecomposableForm build_form(const ExperimentConfig& cfg,
                            const ExperimentObjects& obj) {
  if (cfg.form_factors.empty())
    bad_key("form.factors", "the [form] section is required for this command");
  return form_from_strings(cfg.form_scalar.value_or("1"), cfg.form_factors, obj);
}

FactoredPoly build_factored_poly(const ExperimentConfig& cfg,
                                 const ExperimentObjects& obj) {
  if (cfg.res_roots.empty())
    bad_key("resultant.roots", "the [resultant] section is required for this command");
  std::string lead = cfg.res_leading.value_or("1");
  guard_generator_use(lead, obj.g);
  std::vector<FieldElement> roots;
  for (const auto& e : cfg.res_roots) {
    guard_generator_use(e, obj.g);
    roots.push_back(obj.g.parse_element(e));
  }
  return FactoredPoly::build(obj.g.parse_element(lead), std::move(roots),
                             obj.km, obj.s);
}

InequalityInstance build_instance(const ExperimentConfig& cfg,
                                  const ExperimentObjects& obj) {
  if (cfg.c <= 0) bad_key("inequality.c", "must be positive");
  return {build_form(cfg, obj), cfg.c, cfg.nu, obj.s, cfg.strict};
}

InequalityInstance build_family_instance(const ExperimentConfig& cfg,
                                         const ExperimentObjects& obj, long n) {
  if (cfg.family_factors.empty())
    bad_key("family.factors", "the [family] section is required for this command");
  if (cfg.c <= 0) bad_key("inequality.c", "must be positive");
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : cfg.family_factors) {
    std::vector<std::string> r;
    for (const auto& e : row) r.push_back(substitute_n(e, n));
    rows.push_back(std::move(r));
  }
  DecomposableForm f = form_from_strings(
      substitute_n(cfg.family_scalar.value_or("1"), n), rows, obj);
  return {std::move(f), cfg.c, cfg.nu, obj.s, cfg.strict};
}

}  // namespace dfi
