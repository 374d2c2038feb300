#include "qns/monotone_map.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qns {

MonotoneMap::MonotoneMap(std::string name, Fn fn, bool strictly_increasing)
    : name_(std::move(name)), fn_(std::move(fn)), strict_(strictly_increasing) {}

MonotoneMap MonotoneMap::identity() {
  return MonotoneMap("identity", [](double t) { return t; }, true);
}

MonotoneMap MonotoneMap::power(double p) {
  if (!(p > 0.0)) throw std::invalid_argument("power map: exponent must be > 0");
  return MonotoneMap("t^" + std::to_string(p), [p](double t) { return std::pow(t, p); }, true);
}

MonotoneMap MonotoneMap::log_plus() {
  return MonotoneMap("log+", [](double t) { return t <= 1.0 ? 0.0 : std::log(t); }, false);
}

MonotoneMap MonotoneMap::log_plus_power(double q) {
  if (!(q > 0.0)) throw std::invalid_argument("log-plus-power map: exponent must be > 0");
  return MonotoneMap("(log+)^" + std::to_string(q),
                     [q](double t) { return t <= 1.0 ? 0.0 : std::pow(std::log(t), q); }, false);
}

MonotoneMap MonotoneMap::exp_map() {
  return MonotoneMap("exp", [](double t) { return std::exp(t); }, true);
}

MonotoneMap MonotoneMap::log1p_map() {
  return MonotoneMap("log1p", [](double t) { return std::log1p(t); }, true);
}

MonotoneMap MonotoneMap::affine(double a, double b) {
  if (!(a > 0.0) || b < 0.0) throw std::invalid_argument("affine map: need a > 0 and b >= 0");
  return MonotoneMap("affine", [a, b](double t) { return a * t + b; }, true);
}

MonotoneMap MonotoneMap::compose(const MonotoneMap& outer, const MonotoneMap& inner) {
  return MonotoneMap(outer.name() + "∘" + inner.name(),
                     [o = outer, i = inner](double t) { return o(i(t)); },
                     outer.strict() && inner.strict());
}

MonotoneMap monotone_map_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("map spec: expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "kind" && key != "params" && key != "args")
      throw std::invalid_argument("map spec: unknown key '" + key + "'");
  const std::string kind = j.at("kind").get<std::string>();
  std::vector<double> params;
  if (j.contains("params")) params = j.at("params").get<std::vector<double>>();
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw std::invalid_argument("map spec '" + kind + "': expected " + std::to_string(k) +
                                  " params");
  };
  if (kind == "identity") { need(0); return MonotoneMap::identity(); }
  if (kind == "power") { need(1); return MonotoneMap::power(params[0]); }
  if (kind == "log-plus") { need(0); return MonotoneMap::log_plus(); }
  if (kind == "log-plus-power") { need(1); return MonotoneMap::log_plus_power(params[0]); }
  if (kind == "exp") { need(0); return MonotoneMap::exp_map(); }
  if (kind == "log1p") { need(0); return MonotoneMap::log1p_map(); }
  if (kind == "affine") { need(2); return MonotoneMap::affine(params[0], params[1]); }
  if (kind == "compose") {
    if (!j.contains("args") || j.at("args").size() != 2)
      throw std::invalid_argument("map spec 'compose': expected args [outer, inner]");
    return MonotoneMap::compose(monotone_map_from_json(j.at("args")[0]),
                                monotone_map_from_json(j.at("args")[1]));
  }
  throw std::invalid_argument("unknown map kind: " + kind);
}

double inverse_eval(const MonotoneMap& f, double y, double bracket_hint, double bracket_cap) {
  if (std::isnan(y)) throw std::invalid_argument("inverse_eval: y is NaN");
  if (std::isinf(y)) throw std::invalid_argument("inverse_eval: y must be finite");
  double lo = 0.0;
  const double f0 = f(lo);
  if (y < f0) throw std::domain_error("inverse_eval: y below the range of f");
  if (y == f0) return lo;

  double hi = bracket_hint > 0.0 ? bracket_hint : 1.0;
  while (f(hi) < y) {
    lo = hi;
    hi *= 2.0;
    if (hi > bracket_cap)
      throw std::domain_error("inverse_eval: no bracket found below the cap");
  }

  const double abs_tol = 1e-12 * std::max(1.0, std::abs(y));
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm - y) <= abs_tol && std::isfinite(fm)) return mid;
    if (fm < y)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(mid))) return 0.5 * (lo + hi);
  }
  return 0.5 * (lo + hi);
}

}  // namespace qns
