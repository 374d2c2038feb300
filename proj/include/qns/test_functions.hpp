#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <string>

#include "json.hpp"
#include "qns/monotone_map.hpp"

namespace qns {

/// Result of the improper integral  I(lower) = \int_lower^inf ds / phi(s - s0)^(1/(n-1)).
///
/// The integral is evaluated adaptively up to a cut, then the integrand's
/// decay exponent is fitted from the next two decades (exact for power
/// tails) and the remainder summed as a geometric series over decades.
/// Fitted exponent <= 1.01 is declared divergent.
struct TailIntegral {
  bool convergent = false;
  double value = std::numeric_limits<double>::infinity();
  double decay_exponent = 0.0;  // fitted p in integrand ~ s^-p
  double cut = 0.0;
  std::string note;
};

TailIntegral tail_integral(const MonotoneMap& phi, int s0, int n, double lower);

struct ConditionVerdict {
  bool pass = false;
  std::string detail;
  double witness = std::numeric_limits<double>::quiet_NaN();
};

struct ConditionReport {
  ConditionVerdict invertibility;   // strict increase above the inversion floor
  ConditionVerdict shift_doubling;  // 2K g(s - s0) <= g(s) on [s1, s_max], g = psi^-1 ∘ phi
  ConditionVerdict step_ratio;      // g(s+1)/g(s) bounded on [s1+1, s_max]
  ConditionVerdict tail;            // tail integral convergent
  TailIntegral tail_result;
  double step_ratio_sup = 0.0;
  bool pass = false;

  nlohmann::json to_json() const;
};

/// The tuple (phi, psi, s0, s1, K, n) driving the family-boundedness
/// machinery. Immutable once validated; `report` caches the last validation.
struct TestFunctionPair {
  MonotoneMap phi;
  MonotoneMap psi;
  int s0 = 0;
  int s1 = 1;
  double k = 1.0;
  int n = 2;
  double s_max = 200.0;  // verification cap for the unbounded conditions
  std::shared_ptr<const ConditionReport> report;

  /// (psi^-1 ∘ phi)(s); +inf propagates.
  double psi_inv_phi(double s) const;
  /// (phi^-1 ∘ psi)(t); +inf propagates.
  double phi_inv_psi(double t) const;
};

/// Structural checks (s0 < s1, K >= 1, n >= 2); throws on breach.
void check_pair_well_formed(const TestFunctionPair& pair);

ConditionVerdict check_shift_doubling(const TestFunctionPair& pair, double s_max);
ConditionVerdict check_step_ratio(const TestFunctionPair& pair, double s_max, double* sup_out);

/// Runs all four conditions up to the pair's cap and caches the report.
ConditionReport validate_pair(TestFunctionPair& pair);
ConditionReport validate_pair(const TestFunctionPair& pair, double s_max);

/// Builds the pair psi(t) = phi(p * log+ t) for a strictly increasing phi
/// with convergent tail, choosing s0 as the smallest natural number
/// >= p*ln(2K) + 0.1 and s1 = s0 + 1. Throws when validation fails.
TestFunctionPair build_pair_log_power(const MonotoneMap& phi, double p, double k, int n,
                                      double s_max = 200.0);

struct Delta2Verdict {
  bool pass = false;
  double constant = 0.0;  // sup of theta^-1(2t)/theta^-1(t) over the sampled range
  double trend_slope = 0.0;
  std::string detail;
};

/// Doubling condition on theta^-1: the ratio theta^-1(2t)/theta^-1(t) must
/// stay bounded (stable trend up to the cap).
Delta2Verdict check_delta2(const MonotoneMap& theta, double t_max = 200.0);

/// Checks 2K theta^-1(e^(s-s0)) <= theta^-1(e^s) for s in [s1, s_max].
ConditionVerdict check_inverse_exp_doubling(const MonotoneMap& theta, double k, int s0, int s1,
                                            double s_max = 200.0);

/// Pair ingestion: {"phi": map, "p": num, "K": num, "n": int} (derived) or
/// {"phi", "psi", "s0", "s1", "K", "n"} (explicit); optional "s_max".
TestFunctionPair pair_from_json(const nlohmann::json& j);

}  // namespace qns
