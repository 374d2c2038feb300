#include "qns/mean_value.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "qns/quadrature.hpp"

namespace qns {

namespace {

double sq(double x) { return x * x; }

// Distance from x to the nearest / farthest point of the cell [clo, chi].
double cell_dist_min(const Point& x, const Point& clo, const Point& chi, int n) {
  double s = 0.0;
  for (int d = 0; d < n; ++d) {
    const double t = std::max({clo[d] - x[d], 0.0, x[d] - chi[d]});
    s += t * t;
  }
  return std::sqrt(s);
}

double cell_dist_max(const Point& x, const Point& clo, const Point& chi, int n) {
  double s = 0.0;
  for (int d = 0; d < n; ++d) s += sq(std::max(std::abs(x[d] - clo[d]), std::abs(x[d] - chi[d])));
  return std::sqrt(s);
}

}  // namespace

SampleSpec make_samples(const Domain& domain, const SampleOptions& opts) {
  const double h = domain.spacing();
  const double r_min = opts.r_min > 0.0 ? opts.r_min : 2.0 * h;
  if (!(opts.r_max >= r_min)) throw std::invalid_argument("make_samples: r_max must be >= r_min");
  if (opts.r_count < 1) throw std::invalid_argument("make_samples: r_count must be >= 1");
  if (opts.stride < 1) throw std::invalid_argument("make_samples: stride must be >= 1");

  std::vector<double> radii;
  for (int k = 0; k < opts.r_count; ++k) {
    const double t = opts.r_count == 1 ? 0.0 : static_cast<double>(k) / (opts.r_count - 1);
    radii.push_back(r_min * std::pow(opts.r_max / r_min, t));
  }

  std::mt19937_64 rng(opts.jitter_seed.value_or(0));
  std::uniform_real_distribution<double> unif(-0.5, 0.5);

  SampleSpec spec;
  const int n = domain.dim();
  GridIndex lo_idx{}, hi_idx{};
  for (int d = 0; d < n; ++d) {
    lo_idx[d] = static_cast<int>(std::ceil((opts.margin - 1e-12) / h));
    hi_idx[d] = domain.nodes(d) - 1 - lo_idx[d];
    if (lo_idx[d] > hi_idx[d]) throw std::invalid_argument("make_samples: margin leaves no centers");
  }

  GridIndex idx = lo_idx;
  while (true) {
    Point x = domain.node(idx);
    if (opts.jitter_seed) {
      Point y = x;
      for (int d = 0; d < n; ++d) y[d] += unif(rng) * opts.stride * h;
      const GridIndex snapped = domain.nearest_index(y);
      x = domain.node(snapped);
    }
    for (double r : radii)
      if (domain.contains_closed_ball(x, r)) spec.samples.push_back({x, r});

    int d = n - 1;
    while (d >= 0) {
      idx[d] += opts.stride;
      if (idx[d] <= hi_idx[d]) break;
      idx[d] = lo_idx[d];
      --d;
    }
    if (d < 0) break;
  }
  return spec;
}

BallStencil make_ball_stencil(const Domain& domain, const Point& x, double r) {
  const int n = domain.dim();
  const double h = domain.spacing();
  if (!(r >= 2.0 * h)) throw std::invalid_argument("ball stencil: r must be >= 2h");
  if (!domain.contains_closed_ball(x, r))
    throw std::invalid_argument("ball stencil: closed ball not inside the domain box");

  const int sub = n == 2 ? 4 : 3;  // boundary-cell sub-sampling per axis
  const double half = 0.5 * h;

  GridIndex k_lo{}, k_hi{};
  for (int d = 0; d < n; ++d) {
    k_lo[d] = std::max(0, static_cast<int>(std::floor((x[d] - r - half - domain.lo()[d]) / h)));
    k_hi[d] = std::min(domain.nodes(d) - 1,
                       static_cast<int>(std::ceil((x[d] + r + half - domain.lo()[d]) / h)));
  }

  BallStencil st;
  std::vector<double> weights_for_sum;
  GridIndex idx = k_lo;
  const int total_sub = n == 2 ? sub * sub : sub * sub * sub;

  while (true) {
    const Point node = domain.node(idx);
    Point clo{}, chi{};
    double cell_vol = 1.0;
    for (int d = 0; d < n; ++d) {
      clo[d] = std::max(node[d] - half, domain.lo()[d]);
      chi[d] = std::min(node[d] + half, domain.hi()[d]);
      cell_vol *= (chi[d] - clo[d]);
    }
    const double dmin = cell_dist_min(x, clo, chi, n);
    if (dmin <= r && cell_vol > 0.0) {
      const double dmax = cell_dist_max(x, clo, chi, n);
      double w;
      if (dmax <= r) {
        w = cell_vol;
      } else {
        // Fractional weight from sub-cell centers inside the ball.
        int inside = 0;
        Point sc{};
        for (int i = 0; i < sub; ++i) {
          sc[0] = clo[0] + (chi[0] - clo[0]) * (i + 0.5) / sub;
          for (int j = 0; j < sub; ++j) {
            sc[1] = clo[1] + (chi[1] - clo[1]) * (j + 0.5) / sub;
            if (n == 2) {
              if (sq(sc[0] - x[0]) + sq(sc[1] - x[1]) <= r * r) ++inside;
            } else {
              for (int l = 0; l < sub; ++l) {
                sc[2] = clo[2] + (chi[2] - clo[2]) * (l + 0.5) / sub;
                if (sq(sc[0] - x[0]) + sq(sc[1] - x[1]) + sq(sc[2] - x[2]) <= r * r) ++inside;
              }
            }
          }
        }
        w = cell_vol * inside / total_sub;
      }
      if (w > 0.0) {
        st.idx.push_back(static_cast<std::uint32_t>(domain.flatten(idx)));
        st.weight.push_back(w);
        weights_for_sum.push_back(w);
      }
    }

    int d = n - 1;
    while (d >= 0) {
      ++idx[d];
      if (idx[d] <= k_hi[d]) break;
      idx[d] = k_lo[d];
      --d;
    }
    if (d < 0) break;
  }
  st.weight_sum = pairwise_sum(weights_for_sum);
  return st;
}

BallAverage ball_average_detail(const ScalarField& u, const Point& x, double r,
                                const AvgOptions& opts) {
  const BallStencil st = make_ball_stencil(u.domain(), x, r);
  BallAverage out;
  if (u.finite_count() == 0) {
    out.value = -std::numeric_limits<double>::infinity();
    out.touched_floor = true;
    return out;
  }
  const double floor =
      opts.floor ? *opts.floor : u.min_finite() - std::max(u.max_finite() - u.min_finite(), 0.0);
  std::vector<double> terms(st.idx.size());
  for (std::size_t i = 0; i < st.idx.size(); ++i) {
    double v = u[st.idx[i]];
    if (std::isinf(v)) {
      v = floor;
      out.touched_floor = true;
    }
    terms[i] = st.weight[i] * v;
  }
  out.value = pairwise_sum(terms) / st.weight_sum;
  return out;
}

ExtendedReal ball_average(const ScalarField& u, const Point& x, double r, const AvgOptions& opts) {
  return ExtendedReal(ball_average_detail(u, x, r, opts).value);
}

double ball_integral_transformed(const ScalarField& u, const BallStencil& stencil,
                                 const std::vector<double>& transformed_values) {
  (void)u;
  std::vector<double> terms(stencil.idx.size());
  for (std::size_t i = 0; i < stencil.idx.size(); ++i)
    terms[i] = stencil.weight[i] * transformed_values[stencil.idx[i]];
  return pairwise_sum(terms);
}

ViolationReport check_qns_ns(const ScalarField& u, double k, const SampleSpec& samples, double tol,
                             const AvgOptions& opts) {
  if (!(k >= 1.0)) throw std::invalid_argument("check_qns_ns: K must be >= 1");
  if (samples.samples.empty()) throw std::invalid_argument("check_qns_ns: empty sample set");
  ViolationReport rep;
  rep.tol = tol;
  rep.rows.reserve(samples.samples.size());
  for (const Sample& s : samples.samples) {
    ViolationRow row;
    row.x = s.x;
    row.r = s.r;
    row.lhs = u.value_at(s.x).value();
    const BallAverage avg = ball_average_detail(u, s.x, s.r, opts);
    row.rhs = k * avg.value;
    row.touched_floor = avg.touched_floor;
    if (row.touched_floor) ++rep.floor_touched_count;
    if (std::isinf(row.lhs) && row.lhs < 0) {
      row.pass = true;
      row.ratio = row.rhs != 0.0 ? row.lhs / row.rhs : std::numeric_limits<double>::quiet_NaN();
    } else {
      const double scale = std::max({1.0, std::abs(row.lhs), std::abs(row.rhs)});
      const double margin = (row.lhs - row.rhs) / scale;
      row.pass = margin <= tol;
      row.ratio = row.rhs != 0.0 ? row.lhs / row.rhs : std::numeric_limits<double>::quiet_NaN();
      if (margin > rep.worst_margin) rep.worst_margin = margin;
      if (avg.value > 0.0) rep.fitted_k = std::max(rep.fitted_k, row.lhs / avg.value);
    }
    if (!row.pass) ++rep.violations;
    rep.rows.push_back(row);
  }
  return rep;
}

TruncationReport check_qns_truncations(const ScalarField& u, double k,
                                       const std::vector<double>& m_list,
                                       const SampleSpec& samples, double tol,
                                       const AvgOptions& opts) {
  if (m_list.empty()) throw std::invalid_argument("check_qns_truncations: empty M list");
  TruncationReport out;
  for (double m : m_list) {
    if (m < 0.0) throw std::invalid_argument("check_qns_truncations: M must be >= 0");
    const ScalarField um = truncate_shift(u, m);
    TruncationCheck tc;
    tc.m = m;
    tc.report = check_qns_ns(um, k, samples, tol, opts);
    for (auto& row : tc.report.rows) row.m = m;
    out.violations += tc.report.violations;
    out.checks.push_back(std::move(tc));
  }
  return out;
}

MinKEstimate estimate_min_k(const ScalarField& u, const SampleSpec& samples) {
  if (!u.nonnegative())
    throw std::invalid_argument(
        "estimate_min_k: field must be nonnegative; use check_qns_truncations for signed fields");
  if (samples.samples.empty()) throw std::invalid_argument("estimate_min_k: empty sample set");
  MinKEstimate est;
  for (const Sample& s : samples.samples) {
    const double lhs = u.value_at(s.x).value();
    const double avg = ball_average_detail(u, s.x, s.r).value;
    if (avg > 0.0) {
      const double ratio = lhs / avg;
      if (ratio > est.k) {
        est.k = ratio;
        est.worst = s;
      }
    } else if (lhs > 0.0) {
      est.feasible = false;
      est.worst = s;
      return est;
    }
  }
  return est;
}

double domar_class_constant(double a, int n) {
  if (!(a >= 1.0)) throw std::invalid_argument("domar_class_constant: A must be >= 1");
  return unit_ball_volume(n) * std::pow(a, n + 1);
}

}  // namespace qns
