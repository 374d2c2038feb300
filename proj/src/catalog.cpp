#include "qns/catalog.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <utility>

namespace qns {

namespace {

double dist(const Point& x, const Point& c, int n) {
  double s = 0.0;
  for (int d = 0; d < n; ++d) {
    const double t = x[d] - c[d];
    s += t * t;
  }
  return std::sqrt(s);
}

Point center_from_params(const std::vector<double>& params, std::size_t offset, int n) {
  Point c{};
  if (params.size() == offset) return c;
  for (int d = 0; d < n; ++d) c[d] = params[offset + static_cast<std::size_t>(d)];
  return c;
}

// Harmonic polynomials used for n = 3, indexed by `part`.
double harmonic3(int part, const Point& x) {
  switch (part) {
    case 0: return x[0] * x[1];
    case 1: return x[0] * x[2];
    case 2: return x[1] * x[2];
    case 3: return x[0] * x[0] - x[1] * x[1];
    case 4: return x[1] * x[1] - x[2] * x[2];
    default: throw std::invalid_argument("harmonic-polynomial: part out of range for n=3");
  }
}

}  // namespace

FunctionSpec FunctionSpec::constant(double c) { return {FunctionKind::kConstant, {c}, {}}; }

FunctionSpec FunctionSpec::coordinate(int axis) {
  return {FunctionKind::kCoordinate, {static_cast<double>(axis)}, {}};
}

FunctionSpec FunctionSpec::harmonic_polynomial(int degree, int part) {
  return {FunctionKind::kHarmonicPolynomial, {static_cast<double>(degree), static_cast<double>(part)}, {}};
}

FunctionSpec FunctionSpec::log_norm(Point center) {
  return {FunctionKind::kLogNorm, {center[0], center[1], center[2]}, {}};
}

FunctionSpec FunctionSpec::norm_power(double p, Point center) {
  return {FunctionKind::kNormPower, {p, center[0], center[1], center[2]}, {}};
}

FunctionSpec FunctionSpec::abs_holomorphic_poly(std::vector<double> coeffs) {
  return {FunctionKind::kAbsHolomorphicPoly, std::move(coeffs), {}};
}

FunctionSpec FunctionSpec::translate(Point shift, FunctionSpec inner) {
  FunctionSpec f{FunctionKind::kTranslate, {shift[0], shift[1], shift[2]}, {}};
  f.args.push_back(std::move(inner));
  return f;
}

FunctionSpec FunctionSpec::scale(double a, double b, FunctionSpec inner) {
  FunctionSpec f{FunctionKind::kScale, {a, b}, {}};
  f.args.push_back(std::move(inner));
  return f;
}

FunctionSpec FunctionSpec::max_of(FunctionSpec a, FunctionSpec b) {
  FunctionSpec f{FunctionKind::kMax, {}, {}};
  f.args.push_back(std::move(a));
  f.args.push_back(std::move(b));
  return f;
}

FunctionSpec FunctionSpec::positive_part(FunctionSpec inner) {
  FunctionSpec f{FunctionKind::kPositivePart, {}, {}};
  f.args.push_back(std::move(inner));
  return f;
}

void validate_spec(const FunctionSpec& f, int n) {
  if (n < 2 || n > kMaxDim) throw std::invalid_argument("validate_spec: n must be 2 or 3");
  auto need_params = [&](std::size_t k) {
    if (f.params.size() != k)
      throw std::invalid_argument("function spec '" + kind_name(f.kind) + "': expected " +
                                  std::to_string(k) + " params, got " +
                                  std::to_string(f.params.size()));
  };
  auto need_args = [&](std::size_t k) {
    if (f.args.size() != k)
      throw std::invalid_argument("function spec '" + kind_name(f.kind) + "': expected " +
                                  std::to_string(k) + " args, got " +
                                  std::to_string(f.args.size()));
  };
  switch (f.kind) {
    case FunctionKind::kConstant:
      need_params(1);
      need_args(0);
      break;
    case FunctionKind::kCoordinate: {
      need_params(1);
      need_args(0);
      const int axis = static_cast<int>(f.params[0]);
      if (axis < 0 || axis >= n) throw std::invalid_argument("coordinate: axis out of range");
      break;
    }
    case FunctionKind::kHarmonicPolynomial: {
      need_params(2);
      need_args(0);
      const int degree = static_cast<int>(f.params[0]);
      const int part = static_cast<int>(f.params[1]);
      if (degree < 0 || degree > 8) throw std::invalid_argument("harmonic-polynomial: degree out of range");
      if (n == 2) {
        if (part != 0 && part != 1) throw std::invalid_argument("harmonic-polynomial: part must be 0 (Re) or 1 (Im)");
      } else {
        if (degree > 2) throw std::invalid_argument("harmonic-polynomial: degree must be <= 2 for n=3");
        if (degree == 2 && (part < 0 || part > 4))
          throw std::invalid_argument("harmonic-polynomial: part out of range for n=3");
        if (degree == 1 && (part < 0 || part >= n))
          throw std::invalid_argument("harmonic-polynomial: part out of range");
      }
      break;
    }
    case FunctionKind::kLogNorm:
      if (!f.params.empty() && f.params.size() < static_cast<std::size_t>(n))
        throw std::invalid_argument("log-norm: center must have n coordinates");
      need_args(0);
      break;
    case FunctionKind::kNormPower:
      if (f.params.empty()) throw std::invalid_argument("norm-power: missing exponent");
      if (f.params.size() != 1 && f.params.size() < 1 + static_cast<std::size_t>(n))
        throw std::invalid_argument("norm-power: center must have n coordinates");
      if (f.params[0] < 0.0) throw std::invalid_argument("norm-power: exponent must be >= 0");
      need_args(0);
      break;
    case FunctionKind::kAbsHolomorphicPoly:
      if (n != 2) throw std::invalid_argument("abs-holomorphic-poly: only defined for n=2");
      if (f.params.empty() || f.params.size() % 2 != 0)
        throw std::invalid_argument("abs-holomorphic-poly: params must be (re, im) pairs");
      need_args(0);
      break;
    case FunctionKind::kTranslate:
      if (f.params.size() < static_cast<std::size_t>(n))
        throw std::invalid_argument("translate: shift must have n coordinates");
      need_args(1);
      validate_spec(f.args[0], n);
      break;
    case FunctionKind::kScale:
      need_params(2);
      need_args(1);
      validate_spec(f.args[0], n);
      break;
    case FunctionKind::kMax:
      need_params(0);
      need_args(2);
      validate_spec(f.args[0], n);
      validate_spec(f.args[1], n);
      break;
    case FunctionKind::kPositivePart:
      need_params(0);
      need_args(1);
      validate_spec(f.args[0], n);
      break;
  }
}

ExtendedReal eval(const FunctionSpec& f, const Point& x, int n) {
  switch (f.kind) {
    case FunctionKind::kConstant:
      return ExtendedReal(f.params[0]);
    case FunctionKind::kCoordinate:
      return ExtendedReal(x[static_cast<std::size_t>(f.params[0])]);
    case FunctionKind::kHarmonicPolynomial: {
      const int degree = static_cast<int>(f.params[0]);
      const int part = static_cast<int>(f.params[1]);
      if (n == 2) {
        std::complex<double> z(x[0], x[1]);
        std::complex<double> w(1.0, 0.0);
        for (int k = 0; k < degree; ++k) w *= z;
        return ExtendedReal(part == 0 ? w.real() : w.imag());
      }
      if (degree == 0) return ExtendedReal(1.0);
      if (degree == 1) return ExtendedReal(x[static_cast<std::size_t>(part)]);
      return ExtendedReal(harmonic3(part, x));
    }
    case FunctionKind::kLogNorm: {
      const Point c = center_from_params(f.params, 0, n);
      const double r = dist(x, c, n);
      if (r == 0.0) return ExtendedReal::neg_inf();
      return ExtendedReal(std::log(r));
    }
    case FunctionKind::kNormPower: {
      const double p = f.params[0];
      const Point c = center_from_params(f.params, 1, n);
      return ExtendedReal(std::pow(dist(x, c, n), p));
    }
    case FunctionKind::kAbsHolomorphicPoly: {
      std::complex<double> z(x[0], x[1]);
      std::complex<double> acc(0.0, 0.0);
      std::complex<double> zk(1.0, 0.0);
      for (std::size_t i = 0; i + 1 < f.params.size(); i += 2) {
        acc += std::complex<double>(f.params[i], f.params[i + 1]) * zk;
        zk *= z;
      }
      return ExtendedReal(std::abs(acc));
    }
    case FunctionKind::kTranslate: {
      Point y = x;
      for (int d = 0; d < n; ++d) y[d] -= f.params[static_cast<std::size_t>(d)];
      return eval(f.args[0], y, n);
    }
    case FunctionKind::kScale: {
      const double a = f.params[0];
      const double b = f.params[1];
      const ExtendedReal v = eval(f.args[0], x, n);
      if (v.is_neg_inf()) {
        if (a > 0.0) return ExtendedReal::neg_inf();
        if (a == 0.0) return ExtendedReal(b);
        throw std::domain_error("scale: negative scaling of -inf would produce +inf");
      }
      return ExtendedReal(a * v.value() + b);
    }
    case FunctionKind::kMax:
      return max(eval(f.args[0], x, n), eval(f.args[1], x, n));
    case FunctionKind::kPositivePart:
      return max(eval(f.args[0], x, n), ExtendedReal(0.0));
  }
  throw std::logic_error("eval: unknown kind");
}

bool harmonic_hint(const FunctionSpec& f) {
  switch (f.kind) {
    case FunctionKind::kConstant:
    case FunctionKind::kCoordinate:
    case FunctionKind::kHarmonicPolynomial:
      return true;
    case FunctionKind::kTranslate:
      return harmonic_hint(f.args[0]);
    case FunctionKind::kScale:
      return harmonic_hint(f.args[0]);
    default:
      return false;
  }
}

bool subharmonic_hint(const FunctionSpec& f) {
  switch (f.kind) {
    case FunctionKind::kConstant:
    case FunctionKind::kCoordinate:
    case FunctionKind::kHarmonicPolynomial:
    case FunctionKind::kLogNorm:
    case FunctionKind::kNormPower:
    case FunctionKind::kAbsHolomorphicPoly:
      return true;
    case FunctionKind::kTranslate:
      return subharmonic_hint(f.args[0]);
    case FunctionKind::kScale:
      return f.params[0] >= 0.0 && subharmonic_hint(f.args[0]);
    case FunctionKind::kMax:
      return subharmonic_hint(f.args[0]) && subharmonic_hint(f.args[1]);
    case FunctionKind::kPositivePart:
      return subharmonic_hint(f.args[0]);
  }
  return false;
}

std::vector<FunctionSpec> harmonic_catalog_members(int n) {
  std::vector<FunctionSpec> out;
  out.push_back(FunctionSpec::constant(2.5));
  for (int d = 0; d < n; ++d) out.push_back(FunctionSpec::coordinate(d));
  if (n == 2) {
    out.push_back(FunctionSpec::harmonic_polynomial(2, 0));
    out.push_back(FunctionSpec::harmonic_polynomial(2, 1));
    out.push_back(FunctionSpec::harmonic_polynomial(3, 0));
    out.push_back(FunctionSpec::harmonic_polynomial(3, 1));
  } else {
    for (int part = 0; part <= 4; ++part) out.push_back(FunctionSpec::harmonic_polynomial(2, part));
  }
  return out;
}

std::string kind_name(FunctionKind k) {
  switch (k) {
    case FunctionKind::kConstant: return "constant";
    case FunctionKind::kCoordinate: return "coordinate";
    case FunctionKind::kHarmonicPolynomial: return "harmonic-polynomial";
    case FunctionKind::kLogNorm: return "log-norm";
    case FunctionKind::kNormPower: return "norm-power";
    case FunctionKind::kAbsHolomorphicPoly: return "abs-holomorphic-poly";
    case FunctionKind::kTranslate: return "translate";
    case FunctionKind::kScale: return "scale";
    case FunctionKind::kMax: return "max";
    case FunctionKind::kPositivePart: return "positive-part";
  }
  return "?";
}

FunctionKind kind_from_name(const std::string& name) {
  if (name == "constant") return FunctionKind::kConstant;
  if (name == "coordinate") return FunctionKind::kCoordinate;
  if (name == "harmonic-polynomial") return FunctionKind::kHarmonicPolynomial;
  if (name == "log-norm") return FunctionKind::kLogNorm;
  if (name == "norm-power") return FunctionKind::kNormPower;
  if (name == "abs-holomorphic-poly") return FunctionKind::kAbsHolomorphicPoly;
  if (name == "translate") return FunctionKind::kTranslate;
  if (name == "scale") return FunctionKind::kScale;
  if (name == "max") return FunctionKind::kMax;
  if (name == "positive-part") return FunctionKind::kPositivePart;
  throw std::invalid_argument("unknown function kind: " + name);
}

nlohmann::json to_json(const FunctionSpec& f) {
  nlohmann::json j;
  j["kind"] = kind_name(f.kind);
  j["params"] = f.params;
  if (!f.args.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& a : f.args) arr.push_back(to_json(a));
    j["args"] = arr;
  }
  return j;
}

FunctionSpec function_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("function spec: expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "kind" && key != "params" && key != "args")
      throw std::invalid_argument("function spec: unknown key '" + key + "'");
  if (!j.contains("kind")) throw std::invalid_argument("function spec: missing 'kind'");
  FunctionSpec f;
  f.kind = kind_from_name(j.at("kind").get<std::string>());
  if (j.contains("params")) f.params = j.at("params").get<std::vector<double>>();
  if (j.contains("args"))
    for (const auto& a : j.at("args")) f.args.push_back(function_spec_from_json(a));
  return f;
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"constant", "[c]", "constant c; harmonic"},
      {"coordinate", "[axis]", "u(x) = x_axis; harmonic"},
      {"harmonic-polynomial", "[degree, part]",
       "n=2: Re/Im (x0+i x1)^degree; n=3: fixed degree-2 set; harmonic"},
      {"log-norm", "center coords or []", "u(x) = log|x - c|; subharmonic, -inf at the pole"},
      {"norm-power", "[p, center...]", "u(x) = |x - c|^p, p >= 0; subharmonic"},
      {"abs-holomorphic-poly", "[re0, im0, re1, im1, ...]",
       "u = |q(x0 + i x1)| for a polynomial q; subharmonic; n=2 only"},
      {"translate", "shift coords; args [f]", "u(x) = f(x - shift)"},
      {"scale", "[a, b]; args [f]", "u = a f + b; preserves subharmonicity for a >= 0"},
      {"max", "args [f, g]", "pointwise max; preserves subharmonicity"},
      {"positive-part", "args [f]", "u = max(f, 0)"},
  };
  return entries;
}

}  // namespace qns
