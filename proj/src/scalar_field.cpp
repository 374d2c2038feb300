#include "qns/scalar_field.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "qns/quadrature.hpp"

namespace qns {

ScalarField::ScalarField(Domain domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != domain_.size())
    throw std::invalid_argument("ScalarField: value count does not match grid size");
  min_finite_ = std::numeric_limits<double>::infinity();
  max_finite_ = -std::numeric_limits<double>::infinity();
  std::vector<double> pos;
  pos.reserve(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (std::isnan(v)) throw std::invalid_argument("ScalarField: NaN at node " + std::to_string(i));
    if (std::isinf(v)) {
      if (v > 0) throw std::invalid_argument("ScalarField: +inf at node " + std::to_string(i));
      ++minus_inf_count_;
      continue;
    }
    if (v < min_finite_) min_finite_ = v;
    if (v > max_finite_) max_finite_ = v;
    if (v > 0.0) pos.push_back(v);
  }
  double cell = 1.0;
  for (int d = 0; d < domain_.dim(); ++d) cell *= domain_.spacing();
  pos_part_sum_ = pairwise_sum(pos) * cell;
  if (!std::isfinite(pos_part_sum_))
    throw std::invalid_argument("ScalarField: grid sum of positive parts overflows");
}

ExtendedReal ScalarField::value_at(const Point& x) const {
  return ExtendedReal(values_[domain_.node_at(x)]);
}

ScalarField ScalarField::with_value(std::size_t i, double v) const {
  std::vector<double> copy = values_;
  copy.at(i) = v;
  return ScalarField(domain_, std::move(copy));
}

ScalarField sample_to_grid(const FunctionSpec& spec, const Domain& domain) {
  validate_spec(spec, domain.dim());
  std::vector<double> values(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const Point x = domain.node(i);
    const ExtendedReal v = eval(spec, x, domain.dim());
    if (v.is_pos_inf()) {
      const GridIndex idx = domain.unflatten(i);
      throw std::domain_error("sample_to_grid: +inf at node (" + std::to_string(idx[0]) + "," +
                              std::to_string(idx[1]) + "," + std::to_string(idx[2]) + ")");
    }
    values[i] = v.value();
  }
  return ScalarField(domain, std::move(values));
}

ScalarField truncate_shift(const ScalarField& u, double m) {
  if (!(m >= 0.0)) throw std::invalid_argument("truncate_shift: M must be >= 0");
  std::vector<double> values(u.values().size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = std::max(u.values()[i], -m) + m;
  return ScalarField(u.domain(), std::move(values));
}

}  // namespace qns
