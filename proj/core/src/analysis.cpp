#include "nldiff/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "nldiff/error.hpp"

namespace nldiff {

RateFit rate_fit(std::span<const double> t, std::span<const double> value, FitWindow window) {
  if (t.size() != value.size()) throw InvalidArgument("rate_fit: t and value differ in length");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) throw InsufficientPoints("rate_fit: t must be strictly increasing");
  }
  const double t_max = window.t_max > 0.0 ? window.t_max : std::numeric_limits<double>::infinity();
  std::vector<double> X;
  std::vector<double> Y;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < window.t_min || t[i] > t_max) continue;
    if (!(value[i] > 0.0) || !(t[i] > 0.0)) {
      throw NonpositiveValue(fmt::format("rate_fit: nonpositive entry at t = {}", t[i]));
    }
    X.push_back(std::log(t[i]));
    Y.push_back(std::log(value[i]));
  }
  if (X.size() < 5) {
    throw InsufficientPoints(fmt::format("rate_fit needs 5 points in window, got {}", X.size()));
  }
  const double n = static_cast<double>(X.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    mx += X[i];
    my += Y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    sxx += (X[i] - mx) * (X[i] - mx);
    sxy += (X[i] - mx) * (Y[i] - my);
    syy += (Y[i] - my) * (Y[i] - my);
  }
  RateFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.window = {std::exp(X.front()), std::exp(X.back())};
  fit.n_points = X.size();
  return fit;
}

bool ConvergenceSeries::strictly_decreasing() const {
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (!(entries[i].metric < entries[i - 1].metric)) return false;
  }
  return !entries.empty();
}

double ConvergenceSeries::final_over_initial() const {
  if (entries.empty()) return std::numeric_limits<double>::quiet_NaN();
  return entries.back().metric / entries.front().metric;
}

std::optional<double> normalizer_factor(FamilyKind kind, double t) {
  if (!(t > 0.0)) return std::nullopt;
  const double s = 0.5 * std::log(t);
  switch (kind) {
    case FamilyKind::power_law:
    case FamilyKind::integrable:
      return 1.0;
    case FamilyKind::power_law_over_log:
    case FamilyKind::critical_power:
      if (!(s > 0.0)) return std::nullopt;
      return 1.0 / s;
    case FamilyKind::power_law_times_log:
      if (!(s > 0.0)) return std::nullopt;
      return s;
    case FamilyKind::critical_power_over_log:
      if (!(s > 0.0)) return std::nullopt;
      return 1.0 / (s * s);
    case FamilyKind::critical_power_times_log:
      if (!(s > 1.0)) return std::nullopt;
      return 1.0 / std::log(s);
  }
  return std::nullopt;
}

ConvergenceSeries convergence_series(const Trajectory& u, const ReferenceFn& reference,
                                     const ScalingFamily& family, double p, double R) {
  (void)p;
  if (!(R > 0.0)) throw InvalidArgument(fmt::format("window factor R must be positive, got {}", R));
  ConvergenceSeries series;
  series.R = R;
  series.kind = family.kind();
  const double beta = family.alpha();
  for (const Field& snap : u.snapshots) {
    const double t = snap.time();
    const auto g = normalizer_factor(family.kind(), t);
    if (!g) continue;
    const double radius = R * std::sqrt(t);
    if (radius > 0.5 * snap.grid().half_length()) {
      throw WindowExceedsDomain(fmt::format("window radius {:.6g} at t = {} exceeds L/2 = {}",
                                            radius, t, 0.5 * snap.grid().half_length()));
    }
    const Field U = reference(t);
    if (!(U.grid() == snap.grid())) throw GridMismatch("reference is on a different grid");
    const Grid& grid = snap.grid();
    const double r2 = radius * radius;
    double sup = 0.0;
    for (std::size_t i = 0; i < snap.size(); ++i) {
      const Point x = grid.point(i);
      const double d2 = grid.dimension() == 1 ? x[0] * x[0] : x[0] * x[0] + x[1] * x[1];
      if (d2 > r2) continue;
      sup = std::max(sup, std::abs(*g * snap[i] - U[i]));
    }
    series.entries.push_back({t, std::pow(t, 0.5 * beta) * sup});
  }
  return series;
}

double MassAudit::max_abs_residual() const {
  double m = 0.0;
  for (const auto& row : rows) m = std::max(m, std::abs(row.lhs - row.rhs));
  return m;
}

double MassAudit::max_relative_residual() const {
  return initial_mass != 0.0 ? max_abs_residual() / std::abs(initial_mass) : max_abs_residual();
}

MassAudit mass_audit(const Trajectory& trajectory) {
  MassAudit audit;
  audit.initial_mass = trajectory.initial_mass;
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    MassAuditRow row;
    row.t = trajectory.snapshots[i].time();
    row.lhs = integrate(trajectory.snapshots[i]);
    row.absorbed = i < trajectory.absorbed.size() ? trajectory.absorbed[i] : 0.0;
    row.rhs = trajectory.initial_mass - trajectory.absorption_coefficient * row.absorbed;
    audit.rows.push_back(row);
  }
  audit.M_limit = audit.rows.empty() ? trajectory.initial_mass : audit.rows.back().rhs;
  return audit;
}

namespace {

double max_member(const std::vector<SolutionBarrierRow>& rows, double SolutionBarrierRow::*m) {
  double v = 0.0;
  for (const auto& row : rows) v = std::max(v, row.*m);
  return v;
}

double spread_member(const std::vector<SolutionBarrierRow>& rows, double SolutionBarrierRow::*m) {
  if (rows.empty()) return std::numeric_limits<double>::quiet_NaN();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& row : rows) {
    lo = std::min(lo, row.*m);
    hi = std::max(hi, row.*m);
  }
  return hi / lo;
}

}  // namespace

double SolutionBarrierSummary::max_time_weighted() const {
  return max_member(rows, &SolutionBarrierRow::time_weighted);
}
double SolutionBarrierSummary::max_space_weighted() const {
  return max_member(rows, &SolutionBarrierRow::space_weighted);
}
double SolutionBarrierSummary::max_envelope() const {
  return max_member(rows, &SolutionBarrierRow::envelope);
}
double SolutionBarrierSummary::spread_time_weighted() const {
  return spread_member(rows, &SolutionBarrierRow::time_weighted);
}
double SolutionBarrierSummary::spread_space_weighted() const {
  return spread_member(rows, &SolutionBarrierRow::space_weighted);
}

SolutionBarrierSummary solution_barrier_report(const Trajectory& trajectory,
                                               const ScalingFamily& family,
                                               std::optional<double> p) {
  // f does not depend on p, so the law is built directly instead of through
  // scaling_law (which would reject linear runs).
  const ScalingLaw law(family.kind(), family.alpha(), family.dimension(), p.value_or(2.0), 0.0);
  const double r_min = std::max(1.0, law.k_min());
  const double mu = p ? 2.0 / (*p - 1.0) : 0.0;
  SolutionBarrierSummary summary;
  for (const Field& u : trajectory.snapshots) {
    const double t = u.time();
    const double st = std::sqrt(t);
    if (t < 1.0 || st < law.k_min()) continue;
    SolutionBarrierRow row;
    row.t = t;
    row.time_weighted = law.f(st) * sup_norm(u);
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double r = u.grid().radius(i);
      const double v = std::max(u[i], 0.0);
      if (r >= r_min) row.space_weighted = std::max(row.space_weighted, law.f(r) * v);
      if (p) row.envelope = std::max(row.envelope, v * std::pow(1.0 + st + r, mu));
    }
    summary.rows.push_back(row);
  }
  return summary;
}

}  // namespace nldiff
