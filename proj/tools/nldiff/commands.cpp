#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <fmt/format.h>

#include "nldiff/analysis.hpp"
#include "nldiff/error.hpp"
#include "nldiff/fundamental.hpp"
#include "nldiff/heat_reference.hpp"
#include "nldiff/nonlocal_solver.hpp"
#include "nldiff/snapshot.hpp"
#include "nldiff/verify/csv.hpp"

namespace nldiff::cli {

using verify::CsvTable;

namespace {

constexpr double kDeltaMassRadius = 1e6;

void write_table(const RunContext& ctx, const std::string& name, CsvTable table) {
  table.add_comment(fmt::format("config_hash={}", ctx.config.hash));
  table.write(ctx.out_dir / name);
}

std::vector<double> with_end(std::vector<double> times, double t_end) {
  if (times.empty() || times.back() < t_end) times.push_back(t_end);
  return times;
}

Trajectory simulate(const ExperimentConfig& c, std::vector<double> times, double t_end) {
  const SolveConfig solve{c.kernel, c.grid, c.p, c.dt, t_end, std::move(times)};
  return evolve(solve, representative_datum(c.family, c.grid));
}

Trajectory simulate(const ExperimentConfig& c) {
  return simulate(c, with_end(c.snapshot_times, c.t_end), c.t_end);
}

// f of the family; independent of p.
ScalingLaw family_law(const ExperimentConfig& c) {
  if (c.p) return scaling_law(c.family, *c.p);
  return ScalingLaw(c.family.kind(), c.family.alpha(), c.family.dimension(), 2.0, 0.0);
}

bool power_kind(FamilyKind kind) {
  return kind == FamilyKind::power_law || kind == FamilyKind::power_law_over_log ||
         kind == FamilyKind::power_law_times_log;
}

/// Limit problem selected by the config; `u` supplies M_limit for integrable data.
struct Reference {
  std::optional<LimitProblem> problem;  ///< empty: U is identically zero
};

Reference reference_problem(const ExperimentConfig& c, const Trajectory* u) {
  const ScalingLaw law = family_law(c);
  LimitProblem problem;
  problem.diffusivity = diffusivity(c.kernel);
  problem.p = c.p.value_or(2.0);
  problem.c0 = c.limit.c0.value_or(c.p ? law.c0() : 0.0);

  LimitDatumKind datum = c.limit.datum;
  if (datum == LimitDatumKind::automatic) {
    datum = power_kind(c.family.kind()) ? LimitDatumKind::power_law : LimitDatumKind::point_source;
  }
  if (datum == LimitDatumKind::power_law) {
    if (!power_kind(c.family.kind())) {
      throw InvalidArgument("limit.datum power_law needs a power_law family kind");
    }
    problem.datum = PowerLawDatum{c.family.amplitude(), c.family.alpha()};
    return {problem};
  }
  double mass = 0.0;
  if (c.limit.mass) {
    mass = *c.limit.mass;
  } else if (c.family.kind() == FamilyKind::integrable) {
    // At p = 1 + 2/N the limit vanishes identically.
    if (c.p && law.c0() > 0.0 && !c.limit.c0) return {};
    if (u == nullptr) throw InvalidArgument("point-source mass needs a solved trajectory");
    mass = mass_audit(*u).M_limit;
  } else {
    mass = measured_delta_mass(c.family, kDeltaMassRadius);
  }
  problem.datum = PointSourceDatum{mass};
  return {problem};
}

Trajectory solve_reference(const ExperimentConfig& c, const Reference& ref,
                           const std::vector<double>& times) {
  if (!ref.problem) {
    Trajectory zero;
    for (double t : times) {
      zero.snapshots.emplace_back(c.grid, t);
      zero.absorbed.push_back(0.0);
    }
    return zero;
  }
  std::vector<double> positive;
  for (double t : times) {
    if (t > 0.0) positive.push_back(t);
  }
  return evolve_limit(*ref.problem, c.grid, c.dt, positive);
}

void write_run(const RunContext& ctx, const Trajectory& traj, const std::string& ledger) {
  CsvTable table{"t", "mass", "sup", "absorbed_mass"};
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const Field& f = traj.snapshots[i];
    save(f, ctx.out_dir / snapshot_name("u", f.time()));
    table.add_row({f.time(), integrate(f), sup_norm(f), traj.absorbed[i]});
  }
  table.add_comment(fmt::format("steps={} clamp_events={} max_clamp={}", traj.steps,
                                traj.clamp_events, verify::format_number(traj.max_clamp)));
  write_table(ctx, ledger, std::move(table));
}

Grid rescale_target(const ExperimentConfig& c) {
  const double k_max = c.k_ladder.back();
  const std::size_t n = c.grid.dimension() == 1 ? 1024 : 256;
  return Grid(c.grid.dimension(), n, c.grid.half_length() / k_max);
}

std::vector<double> ladder_times(const ExperimentConfig& c) {
  std::vector<double> times;
  for (double k : c.k_ladder) times.push_back(k * k);
  if (times.back() > c.t_end * (1.0 + 1e-12)) {
    throw InvalidArgument(fmt::format("k_ladder needs t_end >= {} (k_max^2)", times.back()));
  }
  return times;
}

}  // namespace

std::string snapshot_name(const std::string& stem, double t) {
  return fmt::format("{}_t{}.nldf", stem, t);
}

int cmd_kernel(const RunContext& ctx) {
  const auto& k = ctx.config.kernel;
  const auto symbol = spectral_symbol(k, ctx.config.grid);
  const Field sampled = Field::sample(ctx.config.grid, [&](const Point& x) { return k.evaluate(x); });
  CsvTable table{"r", "J"};
  table.add_comment(fmt::format("family={} support_radius={} dimension={}", to_string(k.family()),
                                verify::format_number(k.support_radius()), k.dimension()));
  table.add_comment(fmt::format("normalization={} riemann_mass={} diffusivity={} symbol_min={}",
                                verify::format_number(k.normalization()),
                                verify::format_number(integrate(sampled)),
                                verify::format_number(diffusivity(k)),
                                verify::format_number(symbol.min())));
  constexpr int kRows = 65;
  for (int i = 0; i < kRows; ++i) {
    const double r = k.support_radius() * 1.25 * i / (kRows - 1);
    table.add_row({r, k.evaluate_radial(r)});
  }
  table.add_comment(fmt::format("config_hash={}", ctx.config.hash));
  table.write(ctx.out_dir / "kernel.csv");
  std::fputs(table.str().c_str(), stdout);
  return 0;
}

int cmd_w_table(const RunContext& ctx) {
  const auto& c = ctx.config;
  const auto report =
      barrier_report(c.kernel, c.grid, c.w.t_list, {c.w.min_radius_factor, c.w.K});
  CsvTable table{"t", "mass", "sup", "C_W", "C_grad", "C_T", "l1_grad", "l1_wt", "G1", "T1"};
  for (const auto& s : report.samples) {
    table.add_row({s.t, s.mass, s.sup, s.c_w, s.c_grad, s.c_t, s.l1_grad, s.l1_wt, s.g1, s.t1});
  }
  write_table(ctx, "w_table.csv", std::move(table));
  return 0;
}

int cmd_w_snapshot(const RunContext& ctx) {
  const auto& c = ctx.config;
  const auto W = w_field(c.kernel, c.grid, c.w.t);
  save(W.field, ctx.out_dir / snapshot_name("W", c.w.t));
  const auto grad = grad_w_field(c.kernel, c.grid, c.w.t);
  for (std::size_t a = 0; a < grad.size(); ++a) {
    save(grad[a], ctx.out_dir / snapshot_name(fmt::format("gradW{}", a), c.w.t));
  }
  save(wt_field(c.kernel, c.grid, c.w.t), ctx.out_dir / snapshot_name("Wt", c.w.t));
  return 0;
}

int cmd_simulate(const RunContext& ctx) {
  write_run(ctx, simulate(ctx.config), "run_ledger.csv");
  return 0;
}

int cmd_limit(const RunContext& ctx) {
  const auto& c = ctx.config;
  const auto times = with_end(c.snapshot_times, c.t_end);
  std::optional<Trajectory> u;
  if (c.family.kind() == FamilyKind::integrable && !c.limit.mass) u = simulate(c);
  const Reference ref = reference_problem(c, u ? &*u : nullptr);
  write_run(ctx, solve_reference(c, ref, times), "run_ledger.csv");
  return 0;
}

int cmd_rescale(const RunContext& ctx) {
  const auto& c = ctx.config;
  const auto times = ladder_times(c);
  const Trajectory u = simulate(c, times, times.back());
  const ScalingLaw law = family_law(c);
  const Grid target = rescale_target(c);
  CsvTable table{"k", "f_k", "F_k", "sup_uk"};
  for (std::size_t i = 0; i < c.k_ladder.size(); ++i) {
    const double k = c.k_ladder[i];
    const Field uk = rescale_field(u.at_time(times[i]), k, law.f(k), target, 1.0);
    save(uk, ctx.out_dir / fmt::format("uk_k{}.nldf", k));
    const double F = c.p ? law.F(k) : std::numeric_limits<double>::quiet_NaN();
    table.add_row({k, law.f(k), F, sup_norm(uk)});
  }
  write_table(ctx, "rescale.csv", std::move(table));
  return 0;
}

int cmd_compare(const RunContext& ctx) {
  const auto& c = ctx.config;
  const auto times = ladder_times(c);
  const Trajectory u = simulate(c, times, times.back());
  const Reference ref = reference_problem(c, &u);
  const Trajectory U = solve_reference(c, ref, times);
  const ScalingLaw law = family_law(c);
  const Grid target = rescale_target(c);

  const auto series = convergence_series(
      u, [&](double t) { return U.at_time(t); }, c.family, c.p.value_or(2.0), c.window_R);
  CsvTable table{"k", "t", "f_k", "metric_rescaled", "metric"};
  for (std::size_t i = 0; i < c.k_ladder.size(); ++i) {
    const double k = c.k_ladder[i];
    const Field uk = rescale_field(u.at_time(times[i]), k, law.f(k), target, 1.0);
    const Field Uk =
        rescale_field(U.at_time(times[i]), k, std::pow(k, c.family.alpha()), target, 1.0);
    double sup = 0.0;
    for (std::size_t j = 0; j < uk.size(); ++j) {
      if (target.radius(j) <= c.window_R) sup = std::max(sup, std::abs(uk[j] - Uk[j]));
    }
    const auto entry = std::find_if(series.entries.begin(), series.entries.end(),
                                    [&](const ConvergenceEntry& e) { return e.t == times[i]; });
    const double metric =
        entry == series.entries.end() ? std::numeric_limits<double>::quiet_NaN() : entry->metric;
    table.add_row({k, times[i], law.f(k), sup, metric});
  }
  write_table(ctx, "convergence.csv", std::move(table));
  return 0;
}

int cmd_rates(const RunContext& ctx) {
  const auto& c = ctx.config;
  const auto times = with_end(c.snapshot_times, c.t_end);
  const Trajectory u = simulate(c, times, c.t_end);
  const Reference ref = reference_problem(c, &u);
  const Trajectory U = solve_reference(c, ref, times);
  const auto series = convergence_series(
      u, [&](double t) { return U.at_time(t); }, c.family, c.p.value_or(2.0), c.window_R);
  CsvTable metrics{"t", "metric"};
  std::vector<double> t;
  std::vector<double> v;
  for (const auto& e : series.entries) {
    metrics.add_row({e.t, e.metric});
    t.push_back(e.t);
    v.push_back(e.metric);
  }
  write_table(ctx, "convergence_series.csv", std::move(metrics));
  const FitWindow window{c.t_end / 100.0, c.t_end};
  const RateFit fit = rate_fit(t, v, window);
  CsvTable table{"exponent", "intercept", "r_squared", "t_min", "t_max", "n_points"};
  table.add_row({fit.exponent, fit.intercept, fit.r_squared, fit.window.t_min, fit.window.t_max,
                 static_cast<double>(fit.n_points)});
  write_table(ctx, "rates.csv", std::move(table));
  return 0;
}

int cmd_mass_audit(const RunContext& ctx) {
  const auto audit = mass_audit(simulate(ctx.config));
  CsvTable table{"t", "lhs", "rhs", "absorbed", "residual"};
  for (const auto& row : audit.rows) {
    table.add_row({row.t, row.lhs, row.rhs, row.absorbed, row.lhs - row.rhs});
  }
  table.add_comment(fmt::format("initial_mass={} M_limit={} max_relative_residual={}",
                                verify::format_number(audit.initial_mass),
                                verify::format_number(audit.M_limit),
                                verify::format_number(audit.max_relative_residual())));
  write_table(ctx, "mass_audit.csv", std::move(table));
  return 0;
}

int cmd_barrier(const RunContext& ctx) {
  const auto& c = ctx.config;
  const auto summary = solution_barrier_report(simulate(c), c.family, c.p);
  CsvTable table{"t", "sup_f_sqrt_t_u", "sup_f_x_u", "envelope"};
  for (const auto& row : summary.rows) {
    table.add_row({row.t, row.time_weighted, row.space_weighted, row.envelope});
  }
  write_table(ctx, "barrier.csv", std::move(table));
  return 0;
}

}  // namespace nldiff::cli
