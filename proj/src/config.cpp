#include "qns/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace qns {

namespace {

void require_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                  const std::string& context) {
  if (!j.is_object()) throw std::invalid_argument(context + ": expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key))
      throw std::invalid_argument(context + ": unknown key '" + key + "'");
}

Point point_from_json(const nlohmann::json& j, int n, const std::string& context) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw std::invalid_argument(context + ": expected an array of " + std::to_string(n) +
                                " coordinates");
  Point p{};
  for (int d = 0; d < n; ++d) p[d] = j[d].get<double>();
  return p;
}

Domain domain_from_json(const nlohmann::json& j, const ConfigOverrides& overrides) {
  require_keys(j, {"n", "lo", "hi", "h"}, "domain");
  const int n = j.at("n").get<int>();
  const Point lo = point_from_json(j.at("lo"), n, "domain.lo");
  const Point hi = point_from_json(j.at("hi"), n, "domain.hi");
  const double h = overrides.resolution.value_or(j.at("h").get<double>());
  return Domain(n, lo, hi, h);
}

}  // namespace

ExperimentConfig parse_config(const nlohmann::json& j, const ConfigOverrides& overrides) {
  require_keys(j,
               {"domain", "function", "family", "pair", "samples", "check", "envelope", "bound",
                "regularize", "phi_grid"},
               "config");
  ExperimentConfig cfg;
  cfg.seed = overrides.seed;

  if (j.contains("domain")) cfg.domain = domain_from_json(j.at("domain"), overrides);
  if (j.contains("function")) cfg.function = function_spec_from_json(j.at("function"));
  if (j.contains("family")) {
    if (!j.at("family").is_array()) throw std::invalid_argument("family: expected an array");
    for (const auto& f : j.at("family")) cfg.family.push_back(function_spec_from_json(f));
  }
  if (j.contains("pair")) cfg.pair_json = j.at("pair");

  if (j.contains("samples")) {
    const auto& s = j.at("samples");
    if (s.contains("list")) {
      require_keys(s, {"list"}, "samples");
      const int n = cfg.domain ? cfg.domain->dim() : 2;
      for (const auto& item : s.at("list")) {
        require_keys(item, {"x", "r"}, "samples.list entry");
        Sample sample;
        sample.x = point_from_json(item.at("x"), n, "samples.list x");
        sample.r = item.at("r").get<double>();
        cfg.explicit_samples.push_back(sample);
      }
    } else {
      require_keys(s, {"margin", "stride", "r_min", "r_max", "r_count", "jitter"}, "samples");
      SampleOptions opts;
      opts.margin = s.value("margin", 0.0);
      opts.stride = s.value("stride", 4);
      opts.r_min = s.value("r_min", 0.0);
      opts.r_max = s.at("r_max").get<double>();
      opts.r_count = s.value("r_count", 4);
      if (s.value("jitter", false)) opts.jitter_seed = overrides.seed.value_or(0);
      cfg.sample_options = opts;
    }
  }

  if (j.contains("check")) {
    const auto& c = j.at("check");
    require_keys(c, {"K", "M", "tol", "estimate_k"}, "check");
    cfg.k = c.value("K", 1.0);
    if (c.contains("M")) cfg.m_list = c.at("M").get<std::vector<double>>();
    cfg.tol = c.value("tol", 1e-2);
    cfg.estimate_k = c.value("estimate_k", false);
  }
  if (overrides.tol) cfg.tol = *overrides.tol;

  if (j.contains("envelope")) {
    const auto& e = j.at("envelope");
    require_keys(e, {"schedule_h", "K", "tol"}, "envelope");
    if (e.contains("schedule_h")) cfg.schedule_multiples = e.at("schedule_h").get<std::vector<double>>();
    if (e.contains("K")) cfg.envelope_k = e.at("K").get<double>();
    if (e.contains("tol")) cfg.tol = e.at("tol").get<double>();
    if (overrides.tol) cfg.tol = *overrides.tol;
  }

  if (j.contains("regularize")) {
    const auto& r = j.at("regularize");
    require_keys(r, {"schedule_h", "tol", "diff_tol"}, "regularize");
    if (r.contains("schedule_h")) cfg.schedule_multiples = r.at("schedule_h").get<std::vector<double>>();
    if (r.contains("tol")) cfg.tol = r.at("tol").get<double>();
    cfg.diff_tol = r.value("diff_tol", 1e-9);
    if (overrides.tol) cfg.tol = *overrides.tol;
  }

  if (j.contains("bound")) {
    const auto& b = j.at("bound");
    require_keys(b, {"e_lo", "e_hi", "C", "s_tilde_1"}, "bound");
    const int n = cfg.domain ? cfg.domain->dim() : 2;
    Box e;
    e.lo = point_from_json(b.at("e_lo"), n, "bound.e_lo");
    e.hi = point_from_json(b.at("e_hi"), n, "bound.e_hi");
    cfg.e_box = e;
    if (b.contains("C") && !b.at("C").is_null()) cfg.c_override = b.at("C").get<double>();
    if (b.contains("s_tilde_1") && !b.at("s_tilde_1").is_null())
      cfg.s_tilde_1 = b.at("s_tilde_1").get<int>();
  }

  if (j.contains("phi_grid")) {
    const auto& p = j.at("phi_grid");
    require_keys(p, {"t_min", "t_max", "count", "log"}, "phi_grid");
    cfg.phi_t_min = p.value("t_min", 0.0);
    cfg.phi_t_max = p.value("t_max", 1e6);
    cfg.phi_count = p.value("count", 200);
    cfg.phi_log_spacing = p.value("log", true);
  }

  return cfg;
}

ExperimentConfig load_config(const std::string& path, const ConfigOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  nlohmann::json j;
  in >> j;
  return parse_config(j, overrides);
}

SampleSpec resolve_samples(const ExperimentConfig& config, const Domain& domain) {
  if (!config.explicit_samples.empty()) {
    SampleSpec spec;
    spec.samples = config.explicit_samples;
    for (const Sample& s : spec.samples)
      if (!domain.contains_closed_ball(s.x, s.r))
        throw std::invalid_argument("samples: closed ball not inside the domain box");
    return spec;
  }
  if (!config.sample_options) throw std::invalid_argument("config: missing 'samples' section");
  return make_samples(domain, *config.sample_options);
}

}  // namespace qns
