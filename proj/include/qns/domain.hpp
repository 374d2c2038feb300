#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace qns {

inline constexpr int kMaxDim = 3;

/// A point in R^n, n <= 3. Coordinates beyond the active dimension are zero.
using Point = std::array<double, kMaxDim>;
using GridIndex = std::array<int, kMaxDim>;

inline Point make_point(double x0, double x1, double x2 = 0.0) { return {x0, x1, x2}; }

/// Lebesgue measure of the n-dimensional unit ball, pi^(n/2) / Gamma(n/2 + 1).
/// Rejects n < 2.
double unit_ball_volume(int n);

/// Axis-aligned box, used for compact subsets and integration regions.
struct Box {
  Point lo{};
  Point hi{};
};

/// A uniform, node-centered grid over an axis-aligned box in R^n, n in {2,3}.
///
/// Nodes sit at lo + k*h per axis; (hi - lo)/h must be a positive integer
/// per axis. Immutable after construction.
class Domain {
 public:
  Domain(int n, Point lo, Point hi, double h);

  int dim() const { return n_; }
  double spacing() const { return h_; }
  const Point& lo() const { return lo_; }
  const Point& hi() const { return hi_; }

  int nodes(int axis) const { return npts_[axis]; }
  std::size_t size() const { return size_; }

  std::size_t flatten(const GridIndex& idx) const;
  GridIndex unflatten(std::size_t flat) const;
  Point node(const GridIndex& idx) const;
  Point node(std::size_t flat) const { return node(unflatten(flat)); }

  /// Index of the grid node nearest to x (clamped to the grid).
  GridIndex nearest_index(const Point& x) const;

  /// Flat index of the node coinciding with x; throws if x is not a node
  /// (within 1e-6 * h per axis).
  std::size_t node_at(const Point& x) const;

  bool contains(const Point& x) const;
  bool contains_closed_ball(const Point& x, double r) const;

  /// Grids are compatible when they discretize the same box in the same way.
  bool same_grid(const Domain& other) const;

 private:
  int n_;
  Point lo_{};
  Point hi_{};
  double h_;
  std::array<int, kMaxDim> npts_{};
  std::size_t size_;
};

}  // namespace qns
