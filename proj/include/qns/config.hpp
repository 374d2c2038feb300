#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qns/catalog.hpp"
#include "qns/domain.hpp"
#include "qns/mean_value.hpp"
#include "qns/test_functions.hpp"

namespace qns {

/// One JSON config file per run. Every section validates strictly: unknown
/// keys are rejected before any computation.
struct ExperimentConfig {
  std::optional<Domain> domain;
  std::optional<FunctionSpec> function;
  std::vector<FunctionSpec> family;
  std::optional<nlohmann::json> pair_json;  // parsed lazily (building may validate)

  // samples
  std::optional<SampleOptions> sample_options;
  std::vector<Sample> explicit_samples;

  // check
  double k = 1.0;
  std::vector<double> m_list;
  double tol = 1e-2;
  bool estimate_k = false;

  // envelope / regularize
  std::vector<double> schedule_multiples;  // in units of h, e.g. {8,4,2,1}
  std::optional<double> envelope_k;
  double diff_tol = 1e-9;

  // bound
  std::optional<Box> e_box;
  std::optional<double> c_override;
  std::optional<int> s_tilde_1;

  // phi grid
  double phi_t_min = 0.0;
  double phi_t_max = 1e6;
  int phi_count = 200;
  bool phi_log_spacing = true;

  std::optional<std::uint64_t> seed;  // jitter seed (CLI --seed)
};

struct ConfigOverrides {
  std::optional<double> resolution;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
};

/// Parses and validates the config file; throws std::invalid_argument /
/// nlohmann::json exceptions on malformed input.
ExperimentConfig load_config(const std::string& path, const ConfigOverrides& overrides);
ExperimentConfig parse_config(const nlohmann::json& j, const ConfigOverrides& overrides);

/// The sample set requested by the config (explicit list or generator).
SampleSpec resolve_samples(const ExperimentConfig& config, const Domain& domain);

}  // namespace qns
