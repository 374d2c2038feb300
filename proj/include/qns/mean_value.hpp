#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qns/domain.hpp"
#include "qns/extended_real.hpp"
#include "qns/scalar_field.hpp"

namespace qns {

/// One (center, radius) pair. The closed ball must lie inside the domain box.
struct Sample {
  Point x{};
  double r = 0.0;
};

struct SampleSpec {
  std::vector<Sample> samples;
};

struct SampleOptions {
  double margin = 0.0;       // distance kept between centers and the boundary
  int stride = 4;            // center sub-grid stride, in nodes
  double r_min = 0.0;        // 0 -> 2h
  double r_max = 0.1;
  int r_count = 4;           // geometric radii from r_min to r_max
  std::optional<std::uint64_t> jitter_seed;  // jitter centers, then snap to nodes
};

/// Centers on a sub-grid with the given margin from the boundary, radii
/// geometric from r_min (default 2h) to r_max. Pairs whose closed ball
/// leaves the box are dropped. Deterministic for a fixed seed.
SampleSpec make_samples(const Domain& domain, const SampleOptions& opts);

/// Quadrature stencil for a solid ball: node indices and cell-intersection
/// weights (volume units). Cells cut by the sphere get fractional weights
/// from 4x4 (n=2) or 3x3x3 (n=3) sub-sampling of the cell.
struct BallStencil {
  std::vector<std::uint32_t> idx;
  std::vector<double> weight;
  double weight_sum = 0.0;
};

BallStencil make_ball_stencil(const Domain& domain, const Point& x, double r);

struct AvgOptions {
  /// Substitute for -inf nodes inside the ball. Default: the field's
  /// min finite value minus one dynamic range.
  std::optional<double> floor;
};

struct BallAverage {
  double value = 0.0;       // -inf only when the field has no finite node
  bool touched_floor = false;
};

/// Solid-ball average (1/(nu_n r^n)) * integral of u over B(x, r),
/// approximated by cell quadrature and normalized by the quadrature measure
/// of the ball. Requires r >= 2h and the closed ball inside the box.
BallAverage ball_average_detail(const ScalarField& u, const Point& x, double r,
                                const AvgOptions& opts = {});
ExtendedReal ball_average(const ScalarField& u, const Point& x, double r,
                          const AvgOptions& opts = {});

/// Ball integral of psi(u) (volume units, not normalized); psi applied
/// node-wise. Used by the dichotomy machinery.
double ball_integral_transformed(const ScalarField& u, const BallStencil& stencil,
                                 const std::vector<double>& transformed_values);

struct ViolationRow {
  Point x{};
  double r = 0.0;
  double lhs = 0.0;   // may be -inf
  double rhs = 0.0;
  double ratio = 0.0; // lhs / rhs (IEEE semantics; nan when rhs == 0)
  bool pass = true;
  bool touched_floor = false;
  double m = std::numeric_limits<double>::quiet_NaN();  // truncation level, when applicable
};

/// Per-sample outcomes of an inequality check.
///
/// Pass criterion: lhs <= rhs + tol * max(1, |lhs|, |rhs|). The hybrid
/// absolute-relative form keeps the test meaningful when rhs crosses zero.
struct ViolationReport {
  std::vector<ViolationRow> rows;
  double tol = 0.0;
  std::size_t violations = 0;
  double worst_margin = -std::numeric_limits<double>::infinity();  // max (lhs-rhs)/max(1,|lhs|,|rhs|)
  double fitted_k = 1.0;  // max(1, sup lhs/avg over samples with positive average)
  std::size_t floor_touched_count = 0;

  bool pass() const { return violations == 0; }
};

/// Checks u(x) <= K * ball_average(u, x, r) for each sample (the narrow-sense
/// inequality). K >= 1. A -inf left side passes trivially.
ViolationReport check_qns_ns(const ScalarField& u, double k, const SampleSpec& samples,
                             double tol, const AvgOptions& opts = {});

struct TruncationCheck {
  double m = 0.0;
  ViolationReport report;
};

struct TruncationReport {
  std::vector<TruncationCheck> checks;
  std::size_t violations = 0;
  bool pass() const { return violations == 0; }
};

/// Runs check_qns_ns on truncate_shift(u, M) for every M in m_list.
TruncationReport check_qns_truncations(const ScalarField& u, double k,
                                       const std::vector<double>& m_list,
                                       const SampleSpec& samples, double tol,
                                       const AvgOptions& opts = {});

struct MinKEstimate {
  bool feasible = true;
  double k = 1.0;
  Sample worst{};  // sample attaining the ratio sup
};

/// max(1, sup u(x)/average) over samples with positive average; infeasible
/// when some sample has u(x) > 0 and average 0. Nonnegative fields only —
/// signed fields are rejected (use check_qns_truncations for those).
MinKEstimate estimate_min_k(const ScalarField& u, const SampleSpec& samples);

/// nu_n * A^(n+1), the constant attached to the decreasing-rearrangement
/// class with parameter A >= 1 in dimension n.
double domar_class_constant(double a, int n);

}  // namespace qns
