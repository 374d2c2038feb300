#pragma once

#include <functional>
#include <memory>
#include <string>

#include "json.hpp"

namespace qns {

/// An increasing map [0, +inf] -> [0, +inf]. The value +inf is allowed and,
/// once attained, persists. Evaluators must be pure.
class MonotoneMap {
 public:
  using Fn = std::function<double(double)>;

  MonotoneMap() = default;
  MonotoneMap(std::string name, Fn fn, bool strictly_increasing);

  double operator()(double t) const { return fn_(t); }
  bool strict() const { return strict_; }
  const std::string& name() const { return name_; }

  static MonotoneMap identity();
  static MonotoneMap power(double p);            // t^p, p > 0
  static MonotoneMap log_plus();                 // max(log t, 0)
  static MonotoneMap log_plus_power(double q);   // (log+ t)^q, q > 0
  static MonotoneMap exp_map();                  // e^t
  static MonotoneMap log1p_map();                // log(1 + t)
  static MonotoneMap affine(double a, double b); // a t + b, a > 0, b >= 0
  static MonotoneMap compose(const MonotoneMap& outer, const MonotoneMap& inner);

 private:
  std::string name_ = "identity";
  Fn fn_ = [](double t) { return t; };
  bool strict_ = true;
};

/// JSON form mirrors function specs: {"kind": ..., "params": [...], "args": [...]}.
/// Kinds: identity, power, log-plus, log-plus-power, exp, log1p, affine, compose.
MonotoneMap monotone_map_from_json(const nlohmann::json& j);

/// Solves f(x) = y for x >= 0 on a nondecreasing f by bracket expansion and
/// bisection; |f(x) - y| <= 1e-12 * max(1, |y|) at the returned point.
/// Throws when y is below f(0) or no bracket is found below the cap.
double inverse_eval(const MonotoneMap& f, double y, double bracket_hint = 1.0,
                    double bracket_cap = 1e150);

}  // namespace qns
