#pragma once

#include <cstdint>
#include <optional>

#include "ncdq/serialization.hpp"

namespace ncdq {

struct GridSpec {
  enum class Kind { geometric, explicit_list };
  Kind kind = Kind::geometric;
  double hbar_max = 1.0;
  int levels = 10;
  int refinements = 0;  // midpoint-insertion passes applied after generation
  std::vector<double> values;

  std::vector<double> materialize() const;
};

// One JSON file drives every command; descriptors are validated against their
// module invariants at parse time, before any computation.
struct ExperimentConfig {
  DeformationData deformation = DeformationData::standard(1, 0.5);
  MomentState state = MomentState::point({0, 0});
  std::optional<FourierElement> element;
  std::optional<Section> section;
  GridSpec grid;
  std::vector<int> N_list{4, 8, 16};
  QuadratureConfig quad;
  std::string golden_path = "data/golden/oracle_goldens.json";
  std::string output_path;  // empty = stdout
  enum class Format { csv, json } format = Format::csv;
  std::uint64_t seed = 20260823;

  Section effective_section() const;  // section, or constant section of element
  FourierElement effective_element() const;
};

ExperimentConfig default_config();
ExperimentConfig config_from_json(const json& j);  // throws ConfigError
json to_json(const ExperimentConfig& cfg);

const std::vector<std::string>& suite_names();  // product, smoothing, wick, states, field, oracle

// Aggregated per-suite property checks.  Randomized cases draw from
// cfg.seed via per-case independent streams, so results are reproducible.
VerificationReport run_suite(const std::string& name, const ExperimentConfig& cfg,
                             bool recalibrate = false);

// Emission helpers shared by the CLI and the reproducibility tests: all
// products are deterministic strings for fixed config + seed.
std::string scan_csv_output(const ExperimentConfig& cfg);
std::string norms_json_output(const ExperimentConfig& cfg);   // asserts lower-bound monotonicity
std::string star_json_output(const ExperimentConfig& cfg);    // one-off product evaluation
std::string smooth_json_output(const ExperimentConfig& cfg);  // one-off smoothing
std::string report_json_output(const VerificationReport& report);

}  // namespace ncdq
