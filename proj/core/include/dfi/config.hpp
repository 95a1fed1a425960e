#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dfi/forms.hpp"
#include "dfi/places.hpp"
#include "dfi/resultant.hpp"
#include "dfi/search.hpp"

namespace dfi {

// Parsed experiment description. Element-valued entries stay as expression
// strings here; they are parsed against the declared fields when the
// corresponding domain object is built.
struct ExperimentConfig {
  // [field] poly = ascending integer coefficients, monic
  ZPoly field_poly;
  // [extension] poly, generator_image (optional; G = K when absent)
  std::optional<ZPoly> ext_poly;
  std::string generator_image = "0";
  // [S] primes
  std::vector<BigInt> primes;
  // [form] scalar, factors (coefficient expressions over G's generator)
  std::optional<std::string> form_scalar;
  std::vector<std::vector<std::string>> form_factors;
  // [inequality]
  BigRational c = BigRational(1);
  BigRational nu = BigRational(0);
  long bound = 0;
  bool strict = false;
  // [equation] rhs: constant element of K
  std::optional<std::string> equation_rhs;
  // [family] templates with the placeholder symbol "n"
  std::optional<std::string> family_scalar;
  std::vector<std::vector<std::string>> family_factors;
  long family_n_start = 1;
  long family_n_end = 0;
  long family_budget = 0;
  // [resultant] leading, roots over G, m
  std::optional<std::string> res_leading;
  std::vector<std::string> res_roots;
  long res_m = 1;
  // [cover]
  long cover_l = 1;
  // [profile]
  std::vector<long> profile_bounds;
  // [input] for the element/vector commands
  std::optional<std::string> input_element;
  std::vector<std::string> input_vector;
  // [output]
  BigRational tolerance = BigRational(1, 1000000000000L);
  long precision_cap_bits = 1L << 16;
  std::string output_path;  // empty = stdout
};

// Strict TOML-subset parser: sections, bare keys, strings, integers,
// booleans and (nested, possibly multiline) arrays. Floating-point literals
// are rejected; exact rationals travel as "p/q" strings.
ExperimentConfig parse_config(const std::string& text);

// Domain objects assembled from a config.
struct ExperimentObjects {
  NumberField k;
  NumberField g;
  SubfieldMap km;
  PlaceSet s;
};
ExperimentObjects build_objects(const ExperimentConfig& cfg);

DecomposableForm build_form(const ExperimentConfig& cfg,
                            const ExperimentObjects& obj);
FactoredPoly build_factored_poly(const ExperimentConfig& cfg,
                                 const ExperimentObjects& obj);
InequalityInstance build_instance(const ExperimentConfig& cfg,
                                  const ExperimentObjects& obj);
// n-th member of the [family] template (placeholder "n" substituted
// textually before element parsing).
InequalityInstance build_family_instance(const ExperimentConfig& cfg,
                                         const ExperimentObjects& obj, long n);

}  // namespace dfi
