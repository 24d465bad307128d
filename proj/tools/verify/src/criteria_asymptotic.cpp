#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include <fmt/format.h>

#include "criteria.hpp"
#include "nldiff/analysis.hpp"
#include "nldiff/heat_reference.hpp"
#include "nldiff/nonlocal_solver.hpp"
#include "nldiff/rescaling.hpp"

namespace nldiff::verify::detail {

namespace {

constexpr double kDt = 0.05;
const std::vector<double> kLadderTimes{16.0, 64.0, 256.0, 1024.0};  // k^2, k = 4, 8, 16, 32

KernelSpec asymptotic_kernel() { return KernelSpec(KernelFamily::epanechnikov, 1.0, 1); }
Grid base_grid() { return Grid(1, 16384, 512.0); }
Grid doubled_grid() { return Grid(1, 32768, 1024.0); }

std::vector<double> metrics(const ConvergenceSeries& s) {
  std::vector<double> out;
  for (const auto& e : s.entries) out.push_back(e.metric);
  return out;
}

std::string join_metrics(const std::vector<double>& v) {
  std::vector<std::string> parts;
  for (double x : v) parts.push_back(fmt::format("{:.4g}", x));
  return fmt::format("{}", fmt::join(parts, ", "));
}

ReferenceFn from_trajectory(const Trajectory& traj) {
  return [&traj](double t) { return traj.at_time(t); };
}

struct PowerLawRun {
  ConvergenceSeries r2;
  ConvergenceSeries r4;
};

// u from the nonlocal solver and U from the limit problem with datum A|x|^-alpha.
PowerLawRun power_law_run(const ScalingFamily& family, double p, const Grid& grid) {
  const KernelSpec kernel = asymptotic_kernel();
  const ScalingLaw law = scaling_law(family, p);
  const Field u0 = representative_datum(family, grid);
  const Trajectory u =
      evolve(SolveConfig{kernel, grid, p, kDt, kLadderTimes.back(), kLadderTimes}, u0);
  const LimitProblem limit{diffusivity(kernel), law.c0(), p,
                           PowerLawDatum{family.amplitude(), family.alpha()}};
  const Trajectory U = evolve_limit(limit, grid, kDt, kLadderTimes);
  return {convergence_series(u, from_trajectory(U), family, p, 2.0),
          convergence_series(u, from_trajectory(U), family, p, 4.0)};
}

void add_series(CsvTable& table, double L, const PowerLawRun& run) {
  for (std::size_t i = 0; i < run.r2.entries.size(); ++i) {
    table.add_row({L, run.r2.entries[i].t, run.r2.entries[i].metric, run.r4.entries[i].metric});
  }
}

}  // namespace

bool decreasing(const std::vector<double>& values) {
  if (values.empty()) return false;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] < values[i - 1])) return false;
  }
  return true;
}

CriterionResult critical_power_law(const Context& ctx) {
  CriterionResult result{6, "critical power-law convergence", true, {}, {}};
  const ScalingFamily family(FamilyKind::power_law, 1.0, 0.5, 1);
  const double p = family.critical_exponent();
  const PowerLawRun base = power_law_run(family, p, base_grid());
  const PowerLawRun doubled = power_law_run(family, p, doubled_grid());

  CsvTable table{"half_length", "t", "metric_R2", "metric_R4"};
  table.add_comment(fmt::format("N=1 alpha=0.5 p={} c0=1", format_number(p)));
  add_series(table, base_grid().half_length(), base);
  add_series(table, doubled_grid().half_length(), doubled);
  ctx.emit(result, "critical_power_law.csv", table);

  const auto m2 = metrics(base.r2);
  const auto m4 = metrics(base.r4);
  const auto d2 = metrics(doubled.r2);
  double worst_shift = 0.0;
  for (std::size_t i = 0; i < m2.size(); ++i) {
    worst_shift = std::max(worst_shift, std::abs(d2[i] - m2[i]) / m2[i]);
  }
  const double ratio2 = base.r2.final_over_initial();
  const double ratio4 = base.r4.final_over_initial();
  result.passed = m2.size() == kLadderTimes.size() && decreasing(m2) && ratio2 <= 0.35 &&
                  decreasing(m4) && ratio4 <= 0.35 && worst_shift < 0.01;
  result.summary = fmt::format(
      "R=2 metrics [{}] final/initial {:.4f}; R=4 final/initial {:.4f} (need decreasing, "
      "<= 0.35); doubling L shifts entries by at most {:.2e} (need < 1e-2)",
      join_metrics(m2), ratio2, ratio4, worst_shift);
  return result;
}

CriterionResult supercritical_power_law(const Context& ctx) {
  CriterionResult result{7, "supercritical power-law convergence", true, {}, {}};
  const ScalingFamily family(FamilyKind::power_law, 1.0, 0.5, 1);
  const double p = 7.0;
  const PowerLawRun run = power_law_run(family, p, base_grid());
  CsvTable table{"half_length", "t", "metric_R2", "metric_R4"};
  table.add_comment("N=1 alpha=0.5 p=7 c0=0");
  add_series(table, base_grid().half_length(), run);
  ctx.emit(result, "supercritical_power_law.csv", table);
  const auto m2 = metrics(run.r2);
  const auto m4 = metrics(run.r4);
  result.passed = m2.size() == kLadderTimes.size() && decreasing(m2) && decreasing(m4);
  result.summary = fmt::format("R=2 metrics [{}]; R=4 metrics [{}] (need decreasing)",
                               join_metrics(m2), join_metrics(m4));
  return result;
}

CriterionResult integrable_supercritical(const Context& ctx) {
  CriterionResult result{8, "integrable supercritical", true, {}, {}};
  const KernelSpec kernel = asymptotic_kernel();
  const Grid grid = base_grid();
  const double a = diffusivity(kernel);
  const double p = 4.0;
  const ScalingFamily family(FamilyKind::integrable, 1.0, 0.0, 1);
  const Field u0 = representative_datum(family, grid);
  const Trajectory u =
      evolve(SolveConfig{kernel, grid, p, kDt, kLadderTimes.back(), kLadderTimes}, u0);
  const MassAudit audit = mass_audit(u);
  const double M = audit.M_limit;

  CsvTable table{"t", "metric", "sqrt_t_u0", "mass"};
  table.add_comment(fmt::format("p=4 initial_mass={} M_limit={}", format_number(audit.initial_mass),
                                format_number(M)));
  std::vector<double> m;
  for (const Field& f : u.snapshots) {
    const double t = f.time();
    const Field G = gaussian_point_source(M, a, grid, t);
    double sup = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) sup = std::max(sup, std::abs(f[i] - G[i]));
    m.push_back(std::sqrt(t) * sup);
    table.add_row({t, m.back(), std::sqrt(t) * f[grid.origin_index()], integrate(f)});
  }
  ctx.emit(result, "integrable_supercritical.csv", table);

  const double plateau = std::sqrt(kLadderTimes.back()) * u.snapshots.back()[grid.origin_index()];
  const double expected = M / std::sqrt(4.0 * std::numbers::pi * a);
  const double plateau_error = std::abs(plateau - expected) / expected;
  const double ratio = m.back() / m.front();
  result.passed = decreasing(m) && ratio <= 0.35 && plateau_error <= 0.05;
  result.summary = fmt::format(
      "M = {:.6f}; metrics [{}] final/initial {:.4f} (need decreasing, <= 0.35); "
      "t^1/2 u(0,t) = {:.5f} vs M(4 pi a)^-1/2 = {:.5f}, rel. error {:.3e} (tol 5e-2)",
      M, join_metrics(m), ratio, plateau, expected, plateau_error);
  return result;
}

CriterionResult integrable_critical(const Context& ctx) {
  CriterionResult result{9, "integrable critical", true, {}, {}};
  const KernelSpec kernel = asymptotic_kernel();
  const Grid grid(1, 8192, 256.0);
  const ScalingFamily family(FamilyKind::integrable, 1.0, 0.0, 1);
  const double p = family.critical_exponent();
  const std::vector<double> times{10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000};
  const Trajectory u =
      evolve(SolveConfig{kernel, grid, p, 0.1, times.back(), times}, representative_datum(family, grid));
  CsvTable table{"t", "sqrt_t_sup_u", "mass"};
  std::vector<double> v;
  for (const Field& f : u.snapshots) {
    v.push_back(std::sqrt(f.time()) * sup_norm(f));
    table.add_row({f.time(), v.back(), integrate(f)});
  }
  ctx.emit(result, "integrable_critical.csv", table);
  const double decrease = 1.0 - v.back() / v.front();
  result.passed = decreasing(v) && decrease >= 0.30;
  result.summary = fmt::format(
      "t^1/2 sup u from {:.5f} (t=10) to {:.5f} (t=1e4), decrease {:.1f}% (need decreasing, "
      ">= 30%)",
      v.front(), v.back(), 100.0 * decrease);
  return result;
}

CriterionResult log_corrected(const Context& ctx) {
  CriterionResult result{10, "log-corrected families", true, {}, {}};
  const KernelSpec kernel = asymptotic_kernel();
  const Grid grid = base_grid();
  const double a = diffusivity(kernel);

  const ScalingFamily tlog(FamilyKind::power_law_times_log, 1.0, 0.5, 1);
  const double p4 = tlog.critical_exponent();
  const PowerLawRun run4 = power_law_run(tlog, p4, grid);

  const ScalingFamily crit(FamilyKind::critical_power, 1.0, 0.0, 1);
  const double p2 = 6.0;
  const double C = measured_delta_mass(crit, 1e6);
  const Trajectory u2 = evolve(SolveConfig{kernel, grid, p2, kDt, kLadderTimes.back(), kLadderTimes},
                               representative_datum(crit, grid));
  const ReferenceFn gaussian = [&](double t) { return gaussian_point_source(C, a, grid, t); };
  const auto series2 = convergence_series(u2, gaussian, crit, p2, 2.0);

  CsvTable table{"family", "t", "metric"};
  table.add_comment(fmt::format("power_law_times_log p={}; critical_power p={} delta_mass={}",
                                format_number(p4), format_number(p2), format_number(C)));
  for (const auto& e : run4.r2.entries) table.add_row("power_law_times_log", {e.t, e.metric});
  for (const auto& e : series2.entries) table.add_row("critical_power", {e.t, e.metric});
  ctx.emit(result, "log_corrected.csv", table);

  const auto m4 = metrics(run4.r2);
  const auto m2 = metrics(series2);
  result.passed = m4.size() == kLadderTimes.size() && m2.size() == kLadderTimes.size() &&
                  decreasing(m4) && decreasing(m2);
  result.summary = fmt::format(
      "power_law_times_log (p={:g}) metrics [{}]; critical_power (p={:g}, C={:.5f}) metrics [{}] "
      "(need decreasing)",
      p4, join_metrics(m4), p2, C, join_metrics(m2));
  return result;
}

}  // namespace nldiff::verify::detail
