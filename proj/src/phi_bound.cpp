#include "qns/phi_bound.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qns/quadrature.hpp"

namespace qns {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double compute_s3(const TestFunctionPair& pair) {
  check_pair_well_formed(pair);
  const double shifted = pair.psi_inv_phi(pair.s1 + 3.0);
  if (std::isinf(shifted))
    throw std::domain_error("compute_s3: (psi^-1 ∘ phi)(s1 + 3) is not finite");
  return std::max(static_cast<double>(pair.s1 + 3), shifted);
}

PhiTransform::PhiTransform(const TestFunctionPair& pair) : pair_(&pair) {
  s3_ = compute_s3(pair);
  bool clamped = false;
  phi_s3_ = upper_branch(s3_, &clamped);
}

double PhiTransform::upper_branch(double t, bool* clamped) const {
  double lower = pair_->phi_inv_psi(t) - 2.0;
  const double valid_min = pair_->s0 + 1.0 + 1e-6;
  if (lower < valid_min) {
    lower = valid_min;
    if (clamped) *clamped = true;
  }
  const TailIntegral tail = tail_integral(pair_->phi, pair_->s0, pair_->n, lower);
  if (!tail.convergent)
    throw std::domain_error("phi transform: tail integral divergent (pair invalid)");
  return std::pow(tail.value, 1.0 - pair_->n);
}

double PhiTransform::eval(double t, bool* clamped) const {
  if (!(t >= 0.0)) throw std::invalid_argument("phi transform: t must be >= 0");
  if (t < s3_) return t / s3_ * phi_s3_;
  return upper_branch(t, clamped);
}

double PhiTransform::eval(double t) const { return eval(t, nullptr); }

double PhiTransform::invert(double y) const {
  if (!(y >= 0.0)) throw std::invalid_argument("phi transform invert: y must be >= 0");
  if (y <= phi_s3_) return y * s3_ / phi_s3_;  // linear branch, exact

  double lo = s3_;
  double hi = 2.0 * s3_;
  int guard = 0;
  while (eval(hi) < y) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 2000 || hi > 1e300)
      throw std::domain_error("phi transform invert: y above the attainable range");
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (eval(mid) < y)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-12 * std::max(1.0, lo)) break;
  }
  return 0.5 * (lo + hi);
}

double phi_transform(double t, const TestFunctionPair& pair) {
  return PhiTransform(pair).eval(t);
}

double phi_transform_invert(double y, const TestFunctionPair& pair) {
  return PhiTransform(pair).invert(y);
}

DichotomyParams make_dichotomy_params(const TestFunctionPair& pair, std::optional<int> s_tilde_1,
                                      double c) {
  DichotomyParams p;
  p.pair = pair;
  p.s_tilde_1 = s_tilde_1.value_or(pair.s1 + 2);
  if (p.s_tilde_1 < 1) throw std::invalid_argument("dichotomy params: s_tilde_1 must be a natural");
  p.c = c;
  const double shifted = pair.psi_inv_phi(p.s_tilde_1 + 3.0);
  p.s_tilde_3 = std::max(static_cast<double>(p.s_tilde_1 + 3), shifted);
  p.threshold = pair.psi_inv_phi(p.s_tilde_1 + 1.0);
  p.meets_lemma_hypothesis = static_cast<double>(p.s_tilde_1) >= compute_s3(pair);
  return p;
}

DichotomyResult lemma_dichotomy(const ScalarField& u, const Point& x, double r,
                                const DichotomyParams& params) {
  if (!u.nonnegative()) throw std::invalid_argument("dichotomy: field must be nonnegative");
  DichotomyResult res;
  res.threshold = params.threshold;
  res.u_at_x = u.value_at(x).value();
  if (res.u_at_x <= params.threshold) {
    res.branch = DichotomyBranch::kBelowThreshold;
    return res;
  }

  const PhiTransform transform(params.pair);
  res.lhs = transform.eval(res.u_at_x);

  const BallStencil stencil = make_ball_stencil(u.domain(), x, r);
  std::vector<double> psi_u(u.values().size());
  for (std::size_t i = 0; i < psi_u.size(); ++i) psi_u[i] = params.pair.psi(u[i]);
  const double integral = ball_integral_transformed(u, stencil, psi_u);
  if (!std::isfinite(integral))
    throw std::domain_error("dichotomy: psi(u) integral not finite on the sample ball");
  res.rhs = params.c / std::pow(r, params.pair.n) * integral;
  res.branch = res.lhs <= res.rhs * (1.0 + 1e-12) ? DichotomyBranch::kBounded
                                                  : DichotomyBranch::kViolated;
  return res;
}

DichotomyFit fit_constant_c(const std::vector<ScalarField>& family, const SampleSpec& samples,
                            const DichotomyParams& params) {
  if (family.empty()) throw std::invalid_argument("fit: empty family");
  if (samples.samples.empty()) throw std::invalid_argument("fit: empty sample set");
  const PhiTransform transform(params.pair);
  const int n = params.pair.n;

  // psi applied node-wise, once per member.
  std::vector<std::vector<double>> psi_fields;
  psi_fields.reserve(family.size());
  for (const ScalarField& u : family) {
    if (!u.nonnegative()) throw std::invalid_argument("fit: family members must be nonnegative");
    if (!u.domain().same_grid(family.front().domain()))
      throw std::invalid_argument("fit: family members must share one grid");
    std::vector<double> t(u.values().size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = params.pair.psi(u[i]);
    psi_fields.push_back(std::move(t));
  }

  DichotomyFit fit;
  for (const Sample& s : samples.samples) {
    const BallStencil stencil = make_ball_stencil(family.front().domain(), s.x, s.r);
    const double rn = std::pow(s.r, n);
    for (std::size_t j = 0; j < family.size(); ++j) {
      ++fit.total;
      const double ux = family[j].value_at(s.x).value();
      if (ux <= params.threshold) continue;
      const double integral = ball_integral_transformed(family[j], stencil, psi_fields[j]);
      if (!std::isfinite(integral) || integral <= 0.0)
        throw std::domain_error("fit: psi(u) ball integral not positive and finite");
      const double c_min = transform.eval(ux) * rn / integral;
      fit.per_sample_c.push_back(c_min);
      ++fit.engaged;
      fit.c = std::max(fit.c, c_min);
    }
  }
  fit.constrained = fit.engaged > 0;
  return fit;
}

CompactSetup make_compact_setup(const Domain& domain, const Box& e) {
  CompactSetup setup;
  setup.e = e;
  double rho0 = kInf;
  for (int d = 0; d < domain.dim(); ++d) {
    if (!(e.lo[d] < e.hi[d])) throw std::invalid_argument("compact setup: E must be a box");
    if (e.lo[d] < domain.lo()[d] - 1e-12 || e.hi[d] > domain.hi()[d] + 1e-12)
      throw std::invalid_argument("compact setup: E must lie inside the domain");
    rho0 = std::min({rho0, e.lo[d] - domain.lo()[d], domain.hi()[d] - e.hi[d]});
  }
  if (!(rho0 > 0.0))
    throw std::invalid_argument("compact setup: E must keep positive distance to the boundary");
  setup.rho0 = rho0;
  for (int d = 0; d < domain.dim(); ++d) {
    setup.e1.lo[d] = e.lo[d] - rho0 / 2.0;
    setup.e1.hi[d] = e.hi[d] + rho0 / 2.0;
  }
  return setup;
}

double box_integral_transformed(const ScalarField& f, const Box& region, const MonotoneMap& map) {
  const Domain& domain = f.domain();
  const int n = domain.dim();
  const double h = domain.spacing();
  const double half = 0.5 * h;

  GridIndex k_lo{}, k_hi{};
  for (int d = 0; d < n; ++d) {
    k_lo[d] = std::max(0, static_cast<int>(std::floor((region.lo[d] - half - domain.lo()[d]) / h)));
    k_hi[d] = std::min(domain.nodes(d) - 1,
                       static_cast<int>(std::ceil((region.hi[d] + half - domain.lo()[d]) / h)));
  }

  std::vector<double> terms;
  GridIndex idx = k_lo;
  while (true) {
    const Point node = domain.node(idx);
    double w = 1.0;
    for (int d = 0; d < n; ++d) {
      const double clo = std::max({node[d] - half, domain.lo()[d], region.lo[d]});
      const double chi = std::min({node[d] + half, domain.hi()[d], region.hi[d]});
      w *= std::max(chi - clo, 0.0);
    }
    if (w > 0.0) terms.push_back(w * map(f[domain.flatten(idx)]));

    int d = n - 1;
    while (d >= 0) {
      ++idx[d];
      if (idx[d] <= k_hi[d]) break;
      idx[d] = k_lo[d];
      --d;
    }
    if (d < 0) break;
  }
  return pairwise_sum(terms);
}

FamilyBoundResult family_bound(const CompactSetup& setup, double psi_f_integral,
                               const DichotomyParams& params) {
  if (psi_f_integral < 0.0) throw std::invalid_argument("family bound: psi_F integral must be >= 0");
  if (!(params.c > 0.0)) throw std::invalid_argument("family bound: C must be > 0");
  if (!(setup.rho0 > 0.0)) throw std::invalid_argument("family bound: rho0 must be > 0");

  const int n = params.pair.n;
  FamilyBoundResult res;
  res.threshold_term = params.s_tilde_3;

  const double y = params.c * std::pow(2.0 / setup.rho0, n) * psi_f_integral;
  if (y <= 0.0) {
    // Degenerate right-hand side: only the threshold branch binds.
    res.bound = params.s_tilde_3;
    res.transform_branch_engaged = false;
    return res;
  }
  const double target = std::pow(y, 1.0 / (1.0 - n));
  res.target_tail = target;

  const double lower_min = params.pair.s0 + 1.0 + 1e-6;
  const TailIntegral max_tail = tail_integral(params.pair.phi, params.pair.s0, n, lower_min);
  if (!max_tail.convergent)
    throw std::domain_error("family bound: tail integral divergent (pair invalid)");
  if (target >= max_tail.value) {
    // The transform constraint binds below the threshold region.
    res.bound = params.s_tilde_3;
    res.a_star = lower_min + 2.0;
    res.transform_branch_engaged = false;
    return res;
  }

  // tail(a - 2) is strictly decreasing in a; bisect for tail(a* - 2) = target.
  auto tail_at = [&](double a) {
    return tail_integral(params.pair.phi, params.pair.s0, n, a - 2.0).value;
  };
  double lo = lower_min + 2.0;
  double hi = std::max(2.0 * lo, lo + 8.0);
  int guard = 0;
  while (tail_at(hi) > target) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 200) throw std::domain_error("family bound: bisection bracket failed");
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (tail_at(mid) > target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-10 * std::max(1.0, lo)) break;
  }
  res.a_star = 0.5 * (lo + hi);
  res.transform_branch_engaged = true;
  const double value_term = params.pair.psi_inv_phi(res.a_star);
  res.bound = std::max(params.s_tilde_3, value_term);
  return res;
}

}  // namespace qns
