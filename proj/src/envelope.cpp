#include "qns/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qns {

namespace {

// Integer offsets within Euclidean radius rho of the origin.
std::vector<GridIndex> window_offsets(const Domain& domain, double rho) {
  const double h = domain.spacing();
  const int n = domain.dim();
  const int k = static_cast<int>(std::floor(rho / h + 1e-9));
  std::vector<GridIndex> offsets;
  GridIndex o{};
  const int k2 = n == 3 ? k : 0;
  for (o[0] = -k; o[0] <= k; ++o[0])
    for (o[1] = -k; o[1] <= k; ++o[1])
      for (o[2] = -k2; o[2] <= k2; ++o[2]) {
        double d2 = 0.0;
        for (int d = 0; d < n; ++d) d2 += static_cast<double>(o[d]) * o[d];
        if (d2 * h * h <= rho * rho + 1e-12) offsets.push_back(o);
      }
  return offsets;
}

enum class WindowOp { kMax, kMin };

std::vector<double> window_filter(const Domain& domain, const std::vector<double>& in,
                                  const std::vector<GridIndex>& offsets, WindowOp op) {
  std::vector<double> out(in.size());
  const int n = domain.dim();
  for (std::size_t flat = 0; flat < in.size(); ++flat) {
    const GridIndex idx = domain.unflatten(flat);
    double acc = in[flat];
    for (const GridIndex& o : offsets) {
      GridIndex j = idx;
      bool ok = true;
      for (int d = 0; d < n; ++d) {
        j[d] += o[d];
        if (j[d] < 0 || j[d] >= domain.nodes(d)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      const double v = in[domain.flatten(j)];
      acc = op == WindowOp::kMax ? std::max(acc, v) : std::min(acc, v);
    }
    out[flat] = acc;
  }
  return out;
}

void validate_schedule(const Domain& domain, const RadiiSchedule& schedule) {
  if (schedule.radii.empty()) throw std::invalid_argument("schedule: empty radii list");
  double extent = std::numeric_limits<double>::infinity();
  for (int d = 0; d < domain.dim(); ++d)
    extent = std::min(extent, domain.hi()[d] - domain.lo()[d]);
  double prev = std::numeric_limits<double>::infinity();
  for (double rho : schedule.radii) {
    if (!(rho >= domain.spacing() - 1e-12))
      throw std::invalid_argument("schedule: radii must be >= h");
    if (!(rho < prev)) throw std::invalid_argument("schedule: radii must be decreasing");
    if (rho >= extent) throw std::invalid_argument("schedule: radius exceeds the domain extent");
    prev = rho;
  }
}

}  // namespace

RadiiSchedule default_schedule(const Domain& domain) {
  const double h = domain.spacing();
  return {{8.0 * h, 4.0 * h, 2.0 * h, h}};
}

ScalarField family_sup(const std::vector<ScalarField>& members) {
  if (members.empty()) throw std::invalid_argument("family_sup: empty family");
  const Domain& domain = members.front().domain();
  std::vector<double> w(domain.size(), 0.0);
  for (const ScalarField& u : members) {
    if (!u.domain().same_grid(domain))
      throw std::invalid_argument("family_sup: members must share one grid");
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double v = u[i];
      if (v > w[i]) w[i] = v;  // positive part: w starts at 0, -inf never wins
    }
  }
  return ScalarField(domain, std::move(w));
}

ScalarField usc_regularize(const ScalarField& w, const RadiiSchedule& schedule) {
  const Domain& domain = w.domain();
  validate_schedule(domain, schedule);
  const double rho_min = schedule.radii.back();
  const auto offsets = window_offsets(domain, rho_min);
  // Window sup (the schedule's infimum is the smallest radius), then the
  // adjoint window min. Pure max/min, so repeat application is bit-exact.
  std::vector<double> dilated = window_filter(domain, w.values(), offsets, WindowOp::kMax);
  std::vector<double> closed = window_filter(domain, dilated, offsets, WindowOp::kMin);
  return ScalarField(domain, std::move(closed));
}

FamilyEnvelope FamilyEnvelope::build(const std::vector<ScalarField>& members,
                                     const RadiiSchedule& schedule) {
  ScalarField w = family_sup(members);
  ScalarField w_star = usc_regularize(w, schedule);
  return FamilyEnvelope{std::move(w), std::move(w_star), schedule};
}

EnvelopeCheck check_envelope_qns(const ScalarField& w, const ScalarField& w_star, double k,
                                 const SampleSpec& samples, double tol) {
  if (!w.domain().same_grid(w_star.domain()))
    throw std::invalid_argument("envelope check: w and w* must share one grid");
  if (!(k >= 1.0)) throw std::invalid_argument("envelope check: K must be >= 1");
  if (samples.samples.empty()) throw std::invalid_argument("envelope check: empty sample set");

  EnvelopeCheck out;
  out.regularized_check = check_qns_ns(w_star, k, samples, tol);
  // Same right-hand side (averages of w*), left side from w.
  out.sup_check = out.regularized_check;
  out.sup_check.violations = 0;
  out.sup_check.worst_margin = -std::numeric_limits<double>::infinity();
  out.sup_check.fitted_k = 1.0;
  for (auto& row : out.sup_check.rows) {
    row.lhs = w.value_at(row.x).value();
    const double scale = std::max({1.0, std::abs(row.lhs), std::abs(row.rhs)});
    const double margin = (row.lhs - row.rhs) / scale;
    row.pass = margin <= tol;
    row.ratio = row.rhs != 0.0 ? row.lhs / row.rhs : std::numeric_limits<double>::quiet_NaN();
    if (!row.pass) ++out.sup_check.violations;
    if (margin > out.sup_check.worst_margin) out.sup_check.worst_margin = margin;
    if (row.rhs > 0.0) out.sup_check.fitted_k = std::max(out.sup_check.fitted_k, row.lhs * k / row.rhs);
  }
  out.pass = out.sup_check.pass() && out.regularized_check.pass();
  return out;
}

RegularizationReport nearly_subharmonic_regularization_check(const ScalarField& u,
                                                             const RadiiSchedule& schedule,
                                                             const SampleSpec& samples, double tol,
                                                             double diff_tol) {
  RegularizationReport rep;
  rep.diff_tol = diff_tol;
  rep.precondition = check_qns_ns(u, 1.0, samples, tol);
  rep.precondition_ok = rep.precondition.pass();

  const ScalarField u_star = usc_regularize(u, schedule);
  rep.u_star_ge_u = true;
  for (std::size_t i = 0; i < u.values().size(); ++i) {
    const double a = u[i];
    const double b = u_star[i];
    if (b < a) rep.u_star_ge_u = false;
    const double diff = std::isinf(a) ? (std::isinf(b) ? 0.0 : std::numeric_limits<double>::infinity())
                                      : b - a;
    if (diff > diff_tol) ++rep.differing_nodes;
  }
  rep.differing_fraction = static_cast<double>(rep.differing_nodes) / u.values().size();
  rep.regularized_check = check_qns_ns(u_star, 1.0, samples, tol);
  rep.pass = rep.precondition_ok && rep.u_star_ge_u && rep.regularized_check.pass();
  return rep;
}

LocalBoundReport local_bound_report(const std::vector<ScalarField>& members,
                                    const ScalarField& dominator, const MonotoneMap& psi,
                                    const CompactSetup& setup, double bound) {
  if (members.empty()) throw std::invalid_argument("local bound: empty family");
  const Domain& domain = members.front().domain();
  if (!dominator.domain().same_grid(domain))
    throw std::invalid_argument("local bound: dominator must share the family grid");

  LocalBoundReport rep;
  rep.bound = bound;

  rep.domination_ok = true;
  for (const ScalarField& u : members) {
    if (!u.domain().same_grid(domain))
      throw std::invalid_argument("local bound: members must share one grid");
    for (std::size_t i = 0; i < u.values().size(); ++i)
      if (u[i] > dominator[i] + 1e-12) ++rep.domination_violations;
  }
  rep.domination_ok = rep.domination_violations == 0;

  rep.psi_f_integral = box_integral_transformed(dominator, setup.e1, psi);
  rep.psi_integrable = std::isfinite(rep.psi_f_integral);

  const ScalarField w = family_sup(members);
  double sup = 0.0;
  for (std::size_t i = 0; i < w.values().size(); ++i) {
    const Point x = domain.node(i);
    bool in_e = true;
    for (int d = 0; d < domain.dim(); ++d)
      if (x[d] < setup.e.lo[d] - 1e-12 || x[d] > setup.e.hi[d] + 1e-12) {
        in_e = false;
        break;
      }
    if (in_e) sup = std::max(sup, w[i]);
  }
  rep.empirical_sup = sup;

  rep.hypothesis_ok = rep.domination_ok && rep.psi_integrable;
  rep.pass = rep.hypothesis_ok && rep.empirical_sup <= bound * (1.0 + 1e-12);
  return rep;
}

}  // namespace qns
