#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qns/domain.hpp"
#include "qns/extended_real.hpp"

namespace qns {

/// Catalog of closed-form functions D -> [-inf, +inf) plus combinators.
///
/// Leaf kinds:
///   constant              params: [c]
///   coordinate            params: [axis]                u(x) = x_axis
///   harmonic-polynomial   params: [degree, part]        n=2: Re/Im (x0 + i x1)^degree
///                                                       n=3: a small fixed set, degree <= 2
///   log-norm              params: center (or empty)     u(x) = log |x - c|, -inf at the pole
///   norm-power            params: [p, center...]        u(x) = |x - c|^p, p >= 0
///   abs-holomorphic-poly  params: [re0, im0, re1, ...]  u(x) = |q(x0 + i x1)|, n = 2 only
/// Combinators:
///   translate             params: shift, args: [f]      u(x) = f(x - shift)
///   scale                 params: [a, b], args: [f]     u(x) = a f(x) + b
///   max                   args: [f, g]                  u(x) = max(f, g)
///   positive-part         args: [f]                     u(x) = max(f, 0)
///
/// Every member evaluates to a value < +inf wherever it is defined;
/// evaluation throws where that would fail (e.g. log-norm has no pole issue,
/// it returns -inf, but a scale by a < 0 of it would produce +inf).
enum class FunctionKind {
  kConstant,
  kCoordinate,
  kHarmonicPolynomial,
  kLogNorm,
  kNormPower,
  kAbsHolomorphicPoly,
  kTranslate,
  kScale,
  kMax,
  kPositivePart,
};

struct FunctionSpec {
  FunctionKind kind = FunctionKind::kConstant;
  std::vector<double> params;
  std::vector<FunctionSpec> args;

  static FunctionSpec constant(double c);
  static FunctionSpec coordinate(int axis);
  static FunctionSpec harmonic_polynomial(int degree, int part);
  static FunctionSpec log_norm(Point center = {});
  static FunctionSpec norm_power(double p, Point center = {});
  static FunctionSpec abs_holomorphic_poly(std::vector<double> coeffs);
  static FunctionSpec translate(Point shift, FunctionSpec inner);
  static FunctionSpec scale(double a, double b, FunctionSpec inner);
  static FunctionSpec max_of(FunctionSpec a, FunctionSpec b);
  static FunctionSpec positive_part(FunctionSpec inner);
};

/// Validates parameter arity and ranges for dimension n; throws on breach.
void validate_spec(const FunctionSpec& f, int n);

/// Evaluates f at x in R^n. Result is always < +inf; +inf is rejected with
/// a domain_error.
ExtendedReal eval(const FunctionSpec& f, const Point& x, int n);

/// True when the member is harmonic by construction (used to pick
/// mean-value test functions; conservative).
bool harmonic_hint(const FunctionSpec& f);

/// True when the member is subharmonic by construction (conservative).
bool subharmonic_hint(const FunctionSpec& f);

/// The harmonic members exercised by mean-value checks, for dimension n.
std::vector<FunctionSpec> harmonic_catalog_members(int n);

std::string kind_name(FunctionKind k);
FunctionKind kind_from_name(const std::string& name);

/// JSON form: {"kind": string, "params": [numbers], "args": [nested specs]}.
nlohmann::json to_json(const FunctionSpec& f);
FunctionSpec function_spec_from_json(const nlohmann::json& j);

struct CatalogEntry {
  std::string kind;
  std::string params_doc;
  std::string notes;
};

/// One entry per kind, for the catalog listing.
const std::vector<CatalogEntry>& catalog_entries();

}  // namespace qns
