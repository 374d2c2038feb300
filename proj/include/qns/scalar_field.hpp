#pragma once

#include <cstddef>
#include <vector>

#include "qns/catalog.hpp"
#include "qns/domain.hpp"
#include "qns/extended_real.hpp"

namespace qns {

/// A grid sampling of a function u: D -> [-inf, +inf).
///
/// Node values are doubles where -inf is stored exactly; +inf and NaN are
/// rejected at construction. Immutable after construction (pure operations
/// return new fields).
class ScalarField {
 public:
  ScalarField(Domain domain, std::vector<double> values);

  const Domain& domain() const { return domain_; }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// Value at a point that must coincide with a grid node.
  ExtendedReal value_at(const Point& x) const;

  bool has_minus_inf() const { return minus_inf_count_ > 0; }
  std::size_t minus_inf_count() const { return minus_inf_count_; }
  /// Min/max over finite node values; meaningful only when finite_count() > 0.
  double min_finite() const { return min_finite_; }
  double max_finite() const { return max_finite_; }
  std::size_t finite_count() const { return values_.size() - minus_inf_count_; }

  /// Grid sum of positive parts times the cell volume (finite by invariant).
  double positive_part_sum() const { return pos_part_sum_; }

  bool nonnegative() const { return minus_inf_count_ == 0 && (values_.empty() || min_finite_ >= 0.0); }

  /// Returns a copy with values[i] replaced (test/perturbation helper).
  ScalarField with_value(std::size_t i, double v) const;

 private:
  Domain domain_;
  std::vector<double> values_;
  std::size_t minus_inf_count_ = 0;
  double min_finite_ = 0.0;
  double max_finite_ = 0.0;
  double pos_part_sum_ = 0.0;
};

/// Node-wise evaluation of a catalog spec over the grid. A +inf value is
/// rejected with the offending node in the message.
ScalarField sample_to_grid(const FunctionSpec& spec, const Domain& domain);

/// Node-wise u_M = max(u, -M) + M for M >= 0. -inf maps exactly to 0, and
/// the result is everywhere >= 0.
ScalarField truncate_shift(const ScalarField& u, double m);

}  // namespace qns
