#include "nldiff/nonlocal_solver.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "absorption.hpp"
#include "nldiff/error.hpp"
#include "nldiff/fundamental.hpp"
#include "time_grid.hpp"

namespace nldiff {

void SolveConfig::validate() const {
  require_resolved(kernel, grid);
  if (p && !(*p > 1.0)) throw InvalidArgument(fmt::format("p must exceed 1, got {}", *p));
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw InvalidArgument(fmt::format("dt must be positive, got {}", dt));
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw InvalidArgument(fmt::format("t_end must be nonnegative, got {}", t_end));
  }
  detail::validate_snapshot_times(snapshot_times, t_end, dt);
}

namespace {

std::vector<double> linear_multiplier(const SpectralSymbol& symbol, double dt) {
  std::vector<double> m(symbol.size());
  for (std::size_t s = 0; s < m.size(); ++s) m[s] = std::exp(dt * (symbol[s] - 1.0));
  m[0] = 1.0;
  return m;
}

void require_same_grid(const Field& u, const SpectralSymbol& symbol) {
  if (!(u.grid() == symbol.grid())) {
    throw GridMismatch("field and symbol live on different grids");
  }
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

Field step_linear(const Field& u, const SpectralSymbol& symbol, double dt) {
  require_same_grid(u, symbol);
  Field out = u;
  spectral::Workspace ws(u.grid());
  spectral::apply_multiplier(ws, out.values(), linear_multiplier(symbol, dt));
  out.set_time(u.time() + dt);
  return out;
}

Field step_absorption(const Field& u, double p, double dt) {
  Field out = u;
  detail::absorb(out.values(), p, 1.0, dt);
  out.set_time(u.time() + dt);
  return out;
}

Field step_strang(const Field& u, const SpectralSymbol& symbol, std::optional<double> p,
                  double dt) {
  if (!p) return step_linear(u, symbol, dt);
  require_same_grid(u, symbol);
  Field out = u;
  spectral::Workspace ws(u.grid());
  const auto m = linear_multiplier(symbol, dt);
  detail::absorb(out.values(), *p, 1.0, 0.5 * dt);
  spectral::apply_multiplier(ws, out.values(), m);
  detail::absorb(out.values(), *p, 1.0, 0.5 * dt);
  out.set_time(u.time() + dt);
  return out;
}

Trajectory evolve(const SolveConfig& config, const Field& u0) {
  config.validate();
  if (!(u0.grid() == config.grid)) throw GridMismatch("initial datum is not on the config grid");
  const auto symbol = spectral_symbol(config.kernel, config.grid);
  const double dV = config.grid.cell_volume();

  Trajectory traj;
  traj.p = config.p;
  traj.initial_mass = integrate(u0);

  Field u = u0;
  spectral::Workspace ws(config.grid);
  detail::MultiplierCache cache([&](double h) { return linear_multiplier(symbol, h); });
  auto power_integral = [&](const Field& f) {
    return config.p ? detail::integral_of_power(f.values(), *config.p, dV) : 0.0;
  };

  double absorbed = 0.0;
  double rate = power_integral(u);
  auto record = [&] {
    traj.snapshots.push_back(u);
    traj.absorbed.push_back(absorbed);
  };

  const auto plan = detail::plan_segments(u0.time(), config.t_end, config.dt,
                                          config.snapshot_times);
  if (plan.record_start) record();
  for (const auto& seg : plan.segments) {
    const auto& m = cache.get(seg.h);
    for (std::size_t step = 0; step < seg.steps; ++step) {
      if (config.p) {
        traj.max_clamp = std::max(traj.max_clamp, detail::absorb(u.values(), *config.p, 1.0, 0.5 * seg.h));
        spectral::apply_multiplier(ws, u.values(), m);
        const double c = detail::absorb(u.values(), *config.p, 1.0, 0.5 * seg.h);
        if (c > 0.0) ++traj.clamp_events;
        traj.max_clamp = std::max(traj.max_clamp, c);
      } else {
        spectral::apply_multiplier(ws, u.values(), m);
      }
      u.set_time(seg.t_start + static_cast<double>(step + 1) * seg.h);
      if (!all_finite(u.values())) {
        throw NonfiniteState(fmt::format("non-finite value after step ending at t = {}", u.time()));
      }
      const double next = power_integral(u);
      absorbed += 0.5 * seg.h * (rate + next);
      rate = next;
      ++traj.steps;
    }
    u.set_time(seg.t_end);
    if (seg.record) record();
  }
  traj.absorbed_mass = absorbed;
  return traj;
}

Field linear_solution_via_w(const KernelSpec& kernel, const Grid& grid, const Field& u0,
                            double t) {
  if (!(u0.grid() == grid)) throw GridMismatch("initial datum is not on the given grid");
  const WEvaluation W = w_field(kernel, grid, t);

  // FFT of W re-centred on node 0, as a convolution multiplier.
  spectral::Workspace ws(grid);
  const std::size_t n = grid.points_per_axis();
  const std::size_t h = n / 2;
  auto real = ws.real();
  if (grid.dimension() == 1) {
    for (std::size_t j = 0; j < n; ++j) real[j] = W.field[(j + h) % n];
  } else {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        real[a * n + b] = W.field[((a + h) % n) * n + (b + h) % n];
      }
    }
  }
  ws.forward();
  const auto spec = ws.spectrum();
  std::vector<std::complex<double>> w_hat(spec.begin(), spec.end());
  for (auto& v : w_hat) v *= grid.cell_volume();

  auto u_hat = ws.forward(u0.values());
  for (std::size_t s = 0; s < u_hat.size(); ++s) u_hat[s] *= w_hat[s];
  ws.inverse();

  const double e = std::exp(-t);
  Field out(grid, u0.time() + t);
  const auto conv = ws.real();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = e * u0[i] + conv[i];
  return out;
}

}  // namespace nldiff

namespace nldiff {

const Field& Trajectory::at_time(double t) const {
  for (const auto& f : snapshots) {
    if (detail::same_time(f.time(), t)) return f;
  }
  throw InvalidArgument(fmt::format("no snapshot at t = {}", t));
}

}  // namespace nldiff
