#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include <fmt/format.h>

#include "criteria.hpp"
#include "nldiff/analysis.hpp"
#include "nldiff/nonlocal_solver.hpp"
#include "nldiff/rescaling.hpp"

namespace nldiff::verify::detail {

namespace {

double sup_difference(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

CriterionResult solver_cross_validation(const Context& ctx) {
  CriterionResult result{3, "solver cross-validation", true, {}, {}};
  const KernelSpec kernel(KernelFamily::epanechnikov, 1.0, 1);
  const Grid grid(1, 1024, 32.0);

  const Field indicator =
      Field::sample(grid, [](const Point& x) { return std::abs(x[0]) <= 1.0 ? 1.0 : 0.0; });
  SolveConfig linear{kernel, grid, std::nullopt, 1e-2, 5.0, {5.0}};
  const Field stepped = evolve(linear, indicator).snapshots.back();
  const Field closed = linear_solution_via_w(kernel, grid, indicator, 5.0);
  const double w_gap = sup_difference(stepped, closed);
  if (!(w_gap <= 1e-6)) result.passed = false;

  const Field gaussian = Field::sample(grid, [](const Point& x) { return std::exp(-x[0] * x[0]); });
  auto run = [&](double dt) {
    SolveConfig config{kernel, grid, 3.0, dt, 1.0, {1.0}};
    return evolve(config, gaussian).snapshots.back();
  };
  const Field reference = run(1e-4);
  const std::vector<double> dts{1e-2, 5e-3, 2.5e-3};
  std::vector<double> errors;
  for (double dt : dts) errors.push_back(sup_difference(run(dt), reference));
  double order = std::numeric_limits<double>::infinity();
  CsvTable table{"dt", "sup_error", "observed_order"};
  for (std::size_t i = 0; i < dts.size(); ++i) {
    double o = std::numeric_limits<double>::quiet_NaN();
    if (i > 0) {
      o = std::log2(errors[i - 1] / errors[i]);
      order = std::min(order, o);
    }
    table.add_row({dts[i], errors[i], o});
  }
  table.add_comment(fmt::format("linear_solution_via_w vs stepped linear run at t=5: {}",
                                format_number(w_gap)));
  ctx.emit(result, "solver_cross_validation.csv", table);
  if (!(order >= 1.9)) result.passed = false;
  result.summary = fmt::format(
      "|u_L(W) - u_L(stepped)| = {:.3e} (tol 1e-6); Strang order {:.3f} (need >= 1.9)", w_gap,
      order);
  return result;
}

CriterionResult comparison_and_envelope(const Context& ctx) {
  CriterionResult result{4, "comparison and envelope", true, {}, {}};
  const KernelSpec kernel(KernelFamily::epanechnikov, 1.0, 1);
  const Grid grid(1, 8192, 256.0);
  const ScalingFamily family(FamilyKind::power_law, 1.0, 0.5, 1);
  const Field u0 = representative_datum(family, grid);
  const std::vector<double> times{1, 2, 4, 8, 16, 32, 64, 128, 256, 400};
  constexpr double kDt = 0.05;

  auto run = [&](std::optional<double> p) {
    return evolve(SolveConfig{kernel, grid, p, kDt, times.back(), times}, u0);
  };
  const Trajectory linear = run(std::nullopt);

  CsvTable table{"p", "t", "min_u", "max_u_minus_uL", "sup_f_sqrt_t_u", "sup_f_x_u", "envelope"};
  const auto linear_barrier = solution_barrier_report(linear, family, std::nullopt);
  for (const auto& row : linear_barrier.rows) {
    table.add_row({0.0, row.t, 0.0, 0.0, row.time_weighted, row.space_weighted, 0.0});
  }
  const double s_time = linear_barrier.spread_time_weighted();
  const double s_space = linear_barrier.spread_space_weighted();
  if (!(s_time <= 3.0 && s_space <= 3.0)) result.passed = false;

  double worst_excess = -std::numeric_limits<double>::infinity();
  double worst_min = std::numeric_limits<double>::infinity();
  double max_envelope = 0.0;
  for (double p : {2.0, 3.0, 5.0}) {
    const Trajectory u = run(p);
    const auto barrier = solution_barrier_report(u, family, p);
    for (std::size_t i = 0; i < u.size(); ++i) {
      const Field& ui = u.snapshots[i];
      const Field& li = linear.snapshots[i];
      double lo = std::numeric_limits<double>::infinity();
      double excess = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < ui.size(); ++j) {
        lo = std::min(lo, ui[j]);
        excess = std::max(excess, ui[j] - li[j]);
      }
      worst_min = std::min(worst_min, lo);
      worst_excess = std::max(worst_excess, excess);
      const auto& row = barrier.rows.at(i);
      table.add_row({p, ui.time(), lo, excess, row.time_weighted, row.space_weighted, row.envelope});
    }
    max_envelope = std::max(max_envelope, barrier.max_envelope());
  }
  ctx.emit(result, "comparison_envelope.csv", table);
  if (!(worst_min >= 0.0) || !(worst_excess <= 1e-10) || !std::isfinite(max_envelope)) {
    result.passed = false;
  }
  result.summary = fmt::format(
      "min u = {:.3e}, max(u - u_L) = {:.3e} (tol 1e-10); linear-run spreads of sup f(sqrt t)u "
      "{:.3f} and sup f(|x|)u {:.3f} (limit 3); max mu-envelope {:.4g}",
      worst_min, worst_excess, s_time, s_space, max_envelope);
  return result;
}

CriterionResult mass_identity(const Context& ctx) {
  CriterionResult result{5, "mass identity", true, {}, {}};
  const KernelSpec kernel(KernelFamily::epanechnikov, 1.0, 1);
  const Grid grid(1, 1024, 32.0);
  const ScalingFamily family(FamilyKind::integrable, 1.0, 0.0, 1);
  const Field u0 = representative_datum(family, grid);
  std::vector<double> times;
  for (int i = 0; i <= 20; ++i) times.push_back(i);

  CsvTable table{"dt", "t", "lhs", "rhs", "relative_residual"};
  std::vector<double> residuals;
  for (double dt : {0.01, 0.005}) {
    const auto audit = mass_audit(evolve(SolveConfig{kernel, grid, 4.0, dt, 20.0, times}, u0));
    for (const auto& row : audit.rows) {
      table.add_row({dt, row.t, row.lhs, row.rhs, (row.lhs - row.rhs) / audit.initial_mass});
    }
    residuals.push_back(audit.max_relative_residual());
  }
  ctx.emit(result, "mass_identity.csv", table);
  const double order = std::log2(residuals[0] / residuals[1]);
  if (!(residuals[0] <= 1e-4 && residuals[1] <= 1e-4)) result.passed = false;
  if (!(order >= 1.7 && order <= 2.3)) result.passed = false;
  result.summary = fmt::format(
      "max relative residual {:.3e} (dt=0.01), {:.3e} (dt=0.005), tol 1e-4; halving ratio {:.3f} "
      "(order {:.3f}, need 1.7..2.3)",
      residuals[0], residuals[1], residuals[0] / residuals[1], order);
  return result;
}

}  // namespace nldiff::verify::detail
