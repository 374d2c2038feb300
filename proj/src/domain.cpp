#include "qns/domain.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qns {

double unit_ball_volume(int n) {
  if (n < 2) throw std::invalid_argument("unit_ball_volume: n must be >= 2");
  return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

Domain::Domain(int n, Point lo, Point hi, double h) : n_(n), lo_(lo), hi_(hi), h_(h) {
  if (n != 2 && n != 3) throw std::invalid_argument("Domain: grid dimension must be 2 or 3");
  if (!(h > 0.0)) throw std::invalid_argument("Domain: spacing must be positive");
  size_ = 1;
  for (int d = 0; d < kMaxDim; ++d) {
    if (d >= n) {
      lo_[d] = hi_[d] = 0.0;
      npts_[d] = 1;
      continue;
    }
    if (!(lo_[d] < hi_[d])) throw std::invalid_argument("Domain: lo must be < hi per axis");
    const double steps = (hi_[d] - lo_[d]) / h;
    const double rounded = std::round(steps);
    if (rounded < 1.0 || std::abs(steps - rounded) > 1e-9 * std::max(1.0, steps))
      throw std::invalid_argument("Domain: (hi - lo)/h must be a positive integer on axis " +
                                  std::to_string(d));
    npts_[d] = static_cast<int>(rounded) + 1;
    size_ *= static_cast<std::size_t>(npts_[d]);
  }
}

std::size_t Domain::flatten(const GridIndex& idx) const {
  std::size_t flat = 0;
  for (int d = 0; d < n_; ++d) flat = flat * static_cast<std::size_t>(npts_[d]) + static_cast<std::size_t>(idx[d]);
  return flat;
}

GridIndex Domain::unflatten(std::size_t flat) const {
  GridIndex idx{};
  for (int d = n_ - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(flat % static_cast<std::size_t>(npts_[d]));
    flat /= static_cast<std::size_t>(npts_[d]);
  }
  return idx;
}

Point Domain::node(const GridIndex& idx) const {
  Point p{};
  for (int d = 0; d < n_; ++d) p[d] = lo_[d] + h_ * idx[d];
  return p;
}

GridIndex Domain::nearest_index(const Point& x) const {
  GridIndex idx{};
  for (int d = 0; d < n_; ++d) {
    int k = static_cast<int>(std::lround((x[d] - lo_[d]) / h_));
    if (k < 0) k = 0;
    if (k >= npts_[d]) k = npts_[d] - 1;
    idx[d] = k;
  }
  return idx;
}

std::size_t Domain::node_at(const Point& x) const {
  const GridIndex idx = nearest_index(x);
  const Point p = node(idx);
  for (int d = 0; d < n_; ++d)
    if (std::abs(p[d] - x[d]) > 1e-6 * h_)
      throw std::invalid_argument("Domain: point is not a grid node");
  return flatten(idx);
}

bool Domain::contains(const Point& x) const {
  for (int d = 0; d < n_; ++d)
    if (x[d] < lo_[d] - 1e-12 || x[d] > hi_[d] + 1e-12) return false;
  return true;
}

bool Domain::contains_closed_ball(const Point& x, double r) const {
  if (!(r > 0.0)) return false;
  for (int d = 0; d < n_; ++d)
    if (x[d] - r < lo_[d] - 1e-12 || x[d] + r > hi_[d] + 1e-12) return false;
  return true;
}

bool Domain::same_grid(const Domain& other) const {
  if (n_ != other.n_ || h_ != other.h_) return false;
  for (int d = 0; d < n_; ++d)
    if (lo_[d] != other.lo_[d] || hi_[d] != other.hi_[d]) return false;
  return true;
}

}  // namespace qns
