#include "qns/test_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qns/quadrature.hpp"

namespace qns {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Least-squares slope of log(y) against log(x). Points with nonpositive
// entries are skipped; +inf y forces a large positive slope.
double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) continue;
    if (std::isinf(ys[i])) return 1e6;
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) return 0.0;
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (m * sxy - sx * sy) / denom;
}

std::optional<double> try_inverse(const MonotoneMap& f, double y) {
  try {
    return inverse_eval(f, y);
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

}  // namespace

TailIntegral tail_integral(const MonotoneMap& phi, int s0, int n, double lower) {
  if (n < 2) throw std::invalid_argument("tail_integral: n must be >= 2");
  if (!(lower >= s0 + 1.0 - 1e-12))
    throw std::invalid_argument("tail_integral: lower must be >= s0 + 1");

  TailIntegral out;
  if (!(phi(lower - s0) > 0.0)) {
    out.convergent = false;
    out.note = "integrand unbounded: phi vanishes at the lower limit";
    return out;
  }

  const double expo = 1.0 / (n - 1.0);
  auto integrand = [&](double s) {
    const double v = phi(s - s0);
    if (std::isinf(v)) return 0.0;
    return std::pow(v, -expo);
  };

  const double cut = std::max({1000.0, lower * 4.0, lower + 10.0});
  out.cut = cut;
  const double head = integrate_adaptive(integrand, lower, cut);
  const double dec1 = integrate_adaptive(integrand, cut, 10.0 * cut);
  const double dec2 = integrate_adaptive(integrand, 10.0 * cut, 100.0 * cut);

  if (dec1 <= 0.0 || dec2 <= 0.0) {
    // Integrand already (numerically) zero past the cut.
    out.convergent = true;
    out.value = head + dec1 + dec2;
    out.decay_exponent = kInf;
    return out;
  }

  const double q = dec2 / dec1;
  out.decay_exponent = 1.0 - std::log10(q);
  if (out.decay_exponent <= 1.01) {
    out.convergent = false;
    out.note = "decade ratio " + std::to_string(q) + " implies decay exponent " +
               std::to_string(out.decay_exponent) + " <= 1.01";
    return out;
  }
  out.convergent = true;
  out.value = head + dec1 + dec2 + dec2 * q / (1.0 - q);
  return out;
}

double TestFunctionPair::psi_inv_phi(double s) const {
  const double v = phi(s);
  if (std::isinf(v)) return kInf;
  return inverse_eval(psi, v);
}

double TestFunctionPair::phi_inv_psi(double t) const {
  const double v = psi(t);
  if (std::isinf(v)) return kInf;
  return inverse_eval(phi, v);
}

void check_pair_well_formed(const TestFunctionPair& pair) {
  if (pair.s0 < 0 || pair.s1 < 0) throw std::invalid_argument("pair: s0, s1 must be naturals");
  if (!(pair.s0 < pair.s1)) throw std::invalid_argument("pair: s0 < s1 required");
  if (!(pair.k >= 1.0)) throw std::invalid_argument("pair: K must be >= 1");
  if (pair.n < 2) throw std::invalid_argument("pair: n must be >= 2");
  if (!(pair.s_max > pair.s1 + 2)) throw std::invalid_argument("pair: s_max too small");
}

namespace {

// Sampled strict-increase check for one map, above the floor value.
ConditionVerdict check_strict_above(const MonotoneMap& f, double floor_value,
                                    const std::string& label) {
  ConditionVerdict v;
  std::vector<double> ts;
  for (double t = 0.0; t <= 1.0; t += 0.02) ts.push_back(t);
  for (double t = 1.0; t <= 1e8; t *= 1.12) ts.push_back(t);
  double prev_t = ts[0];
  double prev_f = f(prev_t);
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const double cur_f = f(ts[i]);
    if (std::isinf(cur_f)) break;  // +inf persists; inversion brackets stop below it
    if (prev_f > floor_value && !(cur_f > prev_f)) {
      v.pass = false;
      v.witness = prev_t;
      v.detail = label + " not strictly increasing near t = " + std::to_string(prev_t);
      return v;
    }
    prev_t = ts[i];
    prev_f = cur_f;
  }
  v.pass = true;
  v.detail = label + " strictly increasing above the inversion floor (sampled)";
  return v;
}

}  // namespace

ConditionVerdict check_shift_doubling(const TestFunctionPair& pair, double s_max) {
  ConditionVerdict v;
  for (double s = pair.s1; s <= s_max + 1e-9; s += 0.25) {
    const double lhs = 2.0 * pair.k * pair.psi_inv_phi(s - pair.s0);
    const double rhs = pair.psi_inv_phi(s);
    if (std::isinf(rhs)) continue;  // +inf dominates anything, including +inf
    if (std::isinf(lhs) || lhs > rhs * (1.0 + 1e-9) + 1e-12) {
      v.pass = false;
      v.witness = s;
      v.detail = "first violation at s = " + std::to_string(s);
      return v;
    }
  }
  v.pass = true;
  v.detail = "holds on [s1, s_max] with step 0.25 (verified up to cap)";
  return v;
}

ConditionVerdict check_step_ratio(const TestFunctionPair& pair, double s_max, double* sup_out) {
  ConditionVerdict v;
  std::vector<double> ss, ratios;
  double sup = 0.0;
  for (double s = pair.s1 + 1.0; s <= s_max + 1e-9; s += 0.25) {
    const double denom = pair.psi_inv_phi(s);
    if (denom == 0.0) throw std::domain_error("step ratio: (psi^-1 ∘ phi)(s) = 0");
    const double num = pair.psi_inv_phi(s + 1.0);
    double ratio;
    if (std::isinf(denom)) {
      ratio = 1.0;  // both +inf
    } else {
      ratio = num / denom;
    }
    ss.push_back(s);
    ratios.push_back(ratio);
    if (ratio > sup) sup = ratio;
  }
  if (sup_out) *sup_out = sup;
  v.witness = sup;

  // Trend over the last decade of the sampled range.
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < ss.size(); ++i)
    if (ss[i] >= s_max / 10.0) {
      xs.push_back(ss[i]);
      ys.push_back(ratios[i]);
    }
  const double slope = loglog_slope(xs, ys);
  if (std::isinf(sup) || slope > 0.05) {
    v.pass = false;
    v.detail = "ratio growing (log-log slope " + std::to_string(slope) + " over the last decade)";
    return v;
  }
  v.pass = true;
  v.detail = "sup ratio " + std::to_string(sup) + ", stable trend (verified up to cap)";
  return v;
}

ConditionReport validate_pair(const TestFunctionPair& pair, double s_max) {
  check_pair_well_formed(pair);
  ConditionReport rep;

  const double gap = static_cast<double>(pair.s1 - pair.s0);
  const double floor_value = std::min(pair.phi(gap), pair.psi(gap));
  const ConditionVerdict phi_ok = check_strict_above(pair.phi, floor_value, "phi");
  const ConditionVerdict psi_ok = check_strict_above(pair.psi, floor_value, "psi");
  rep.invertibility.pass = phi_ok.pass && psi_ok.pass;
  rep.invertibility.detail = phi_ok.detail + "; " + psi_ok.detail;
  rep.invertibility.witness = phi_ok.pass ? psi_ok.witness : phi_ok.witness;

  rep.shift_doubling = check_shift_doubling(pair, s_max);
  rep.step_ratio = check_step_ratio(pair, s_max, &rep.step_ratio_sup);
  rep.tail_result = tail_integral(pair.phi, pair.s0, pair.n, pair.s1);
  rep.tail.pass = rep.tail_result.convergent;
  rep.tail.witness = rep.tail_result.convergent ? rep.tail_result.value : rep.tail_result.decay_exponent;
  rep.tail.detail = rep.tail_result.convergent
                        ? "convergent, value " + std::to_string(rep.tail_result.value)
                        : "divergent: " + rep.tail_result.note;

  rep.pass = rep.invertibility.pass && rep.shift_doubling.pass && rep.step_ratio.pass && rep.tail.pass;
  return rep;
}

ConditionReport validate_pair(TestFunctionPair& pair) {
  ConditionReport rep = validate_pair(pair, pair.s_max);
  pair.report = std::make_shared<const ConditionReport>(rep);
  return rep;
}

TestFunctionPair build_pair_log_power(const MonotoneMap& phi, double p, double k, int n,
                                      double s_max) {
  if (!(p > 0.0)) throw std::invalid_argument("build pair: p must be > 0");
  if (!(k >= 1.0)) throw std::invalid_argument("build pair: K must be >= 1");
  if (!phi.strict()) throw std::invalid_argument("build pair: phi must be strictly increasing");
  TestFunctionPair pair;
  pair.phi = phi;
  pair.psi = MonotoneMap::compose(phi, MonotoneMap::compose(MonotoneMap::affine(p, 0.0),
                                                            MonotoneMap::log_plus()));
  pair.s0 = static_cast<int>(std::ceil(p * std::log(2.0 * k) + 0.1));
  pair.s1 = pair.s0 + 1;
  pair.k = k;
  pair.n = n;
  pair.s_max = s_max;
  const ConditionReport rep = validate_pair(pair);
  if (!rep.pass) {
    std::string what = "build pair: conditions failed:";
    if (!rep.invertibility.pass) what += " invertibility";
    if (!rep.shift_doubling.pass) what += " shift-doubling";
    if (!rep.step_ratio.pass) what += " step-ratio";
    if (!rep.tail.pass) what += " tail";
    throw std::runtime_error(what);
  }
  return pair;
}

Delta2Verdict check_delta2(const MonotoneMap& theta, double t_max) {
  if (!theta.strict()) throw std::invalid_argument("delta2: theta must be strictly increasing");
  Delta2Verdict v;

  // Largest t with theta^-1(2t) still bracketable below the cap.
  double t_hi = t_max;
  int guard = 0;
  while (guard++ < 80 && !try_inverse(theta, 2.0 * t_hi)) t_hi *= 0.5;
  const double t_lo = std::max(0.01, theta(0.0) + 0.01);
  if (!(t_hi > t_lo)) {
    v.pass = false;
    v.detail = "theta^-1 not evaluable on a usable range";
    return v;
  }

  std::vector<double> ts, ratios;
  const int count = 240;
  for (int i = 0; i <= count; ++i) {
    const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / count);
    const auto inv1 = try_inverse(theta, t);
    const auto inv2 = try_inverse(theta, 2.0 * t);
    if (!inv1 || !inv2) throw std::domain_error("delta2: inverse undefined at t = " + std::to_string(t));
    if (*inv1 <= 0.0) continue;
    ts.push_back(t);
    ratios.push_back(*inv2 / *inv1);
  }
  double sup = 0.0;
  for (double r : ratios) sup = std::max(sup, r);
  v.constant = sup;

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (ts[i] >= t_hi / 10.0) {
      xs.push_back(ts[i]);
      ys.push_back(ratios[i]);
    }
  v.trend_slope = loglog_slope(xs, ys);
  v.pass = v.trend_slope <= 0.05 && std::isfinite(sup);
  v.detail = v.pass ? "bounded with constant " + std::to_string(sup)
                    : "ratio growing (log-log slope " + std::to_string(v.trend_slope) + ")";
  return v;
}

ConditionVerdict check_inverse_exp_doubling(const MonotoneMap& theta, double k, int s0, int s1,
                                            double s_max) {
  if (!(k >= 1.0)) throw std::invalid_argument("inverse-exp-doubling: K must be >= 1");
  ConditionVerdict v;
  const double cap = std::min(s_max, 700.0);  // e^s must stay finite
  for (double s = s1; s <= cap + 1e-9; s += 0.25) {
    const auto lhs_inv = try_inverse(theta, std::exp(s - s0));
    const auto rhs_inv = try_inverse(theta, std::exp(s));
    if (!lhs_inv || !rhs_inv)
      throw std::domain_error("inverse-exp-doubling: inverse undefined at s = " + std::to_string(s));
    const double lhs = 2.0 * k * *lhs_inv;
    const double rhs = *rhs_inv;
    if (lhs > rhs * (1.0 + 1e-9) + 1e-12) {
      v.pass = false;
      v.witness = s;
      v.detail = "first violation at s = " + std::to_string(s);
      return v;
    }
  }
  v.pass = true;
  v.detail = "holds on [s1, s_max] with step 0.25 (verified up to cap)";
  return v;
}

nlohmann::json ConditionReport::to_json() const {
  auto verdict = [](const ConditionVerdict& v) {
    nlohmann::json j;
    j["pass"] = v.pass;
    j["detail"] = v.detail;
    if (std::isfinite(v.witness)) j["witness"] = v.witness;
    return j;
  };
  nlohmann::json j;
  j["invertibility"] = verdict(invertibility);
  j["shift_doubling"] = verdict(shift_doubling);
  j["step_ratio_bounded"] = verdict(step_ratio);
  j["tail_convergent"] = verdict(tail);
  j["step_ratio_sup"] = step_ratio_sup;
  if (tail_result.convergent) j["tail_value"] = tail_result.value;
  j["tail_decay_exponent"] = tail_result.decay_exponent;
  j["pass"] = pass;
  return j;
}

TestFunctionPair pair_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("pair: expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "phi" && key != "psi" && key != "p" && key != "K" && key != "n" && key != "s0" &&
        key != "s1" && key != "s_max")
      throw std::invalid_argument("pair: unknown key '" + key + "'");
  const double s_max = j.value("s_max", 200.0);
  const double k = j.value("K", 1.0);
  const int n = j.value("n", 2);
  const MonotoneMap phi = monotone_map_from_json(j.at("phi"));
  if (j.contains("p")) {
    if (j.contains("psi") || j.contains("s0") || j.contains("s1"))
      throw std::invalid_argument("pair: give either 'p' (derived) or explicit psi/s0/s1");
    return build_pair_log_power(phi, j.at("p").get<double>(), k, n, s_max);
  }
  TestFunctionPair pair;
  pair.phi = phi;
  pair.psi = monotone_map_from_json(j.at("psi"));
  pair.s0 = j.at("s0").get<int>();
  pair.s1 = j.at("s1").get<int>();
  pair.k = k;
  pair.n = n;
  pair.s_max = s_max;
  check_pair_well_formed(pair);
  return pair;
}

}  // namespace qns
