#include "nldiff/heat_reference.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "absorption.hpp"
#include "nldiff/error.hpp"
#include "nldiff/spectral.hpp"
#include "time_grid.hpp"

namespace nldiff {

Field gaussian_point_source(double mass, double diffusivity, const Grid& grid, double t) {
  if (!(t > 0.0)) throw InvalidArgument(fmt::format("Gaussian needs t > 0, got {}", t));
  if (!(diffusivity > 0.0)) {
    throw InvalidArgument(fmt::format("diffusivity must be positive, got {}", diffusivity));
  }
  const double four_at = 4.0 * diffusivity * t;
  const double peak = mass * std::pow(std::numbers::pi * four_at, -0.5 * grid.dimension());
  return Field::sample(
      grid,
      [&](const Point& x) {
        const double r2 = grid.dimension() == 1 ? x[0] * x[0] : x[0] * x[0] + x[1] * x[1];
        return peak * std::exp(-r2 / four_at);
      },
      t);
}

namespace {

using boost::math::quadrature::gauss;
using boost::math::quadrature::gauss_kronrod;

// Mean of x^{-alpha} over [a, b], 0 <= a < b.
double mean_power_1d(double a, double b, double alpha) {
  const double q = 1.0 - alpha;
  return (std::pow(b, q) - std::pow(a, q)) / (q * (b - a));
}

// Mean of |x|^{-alpha} over the square [-h/2, h/2]^2, integrated in polar form.
double origin_cell_mean_2d(double h, double alpha) {
  const double q = 2.0 - alpha;
  auto radial = [&](double theta) { return std::pow(0.5 * h / std::cos(theta), q) / q; };
  const double octant =
      gauss_kronrod<double, 61>::integrate(radial, 0.0, std::numbers::pi / 4.0, 10, 1e-14);
  return 8.0 * octant / (h * h);
}

double cell_mean_2d(double x0, double y0, double h, double alpha, bool adaptive) {
  auto inner = [&](double x) {
    auto f = [&](double y) { return std::pow(x * x + y * y, -0.5 * alpha); };
    if (adaptive) {
      return gauss_kronrod<double, 31>::integrate(f, y0 - 0.5 * h, y0 + 0.5 * h, 10, 1e-13);
    }
    return gauss<double, 8>::integrate(f, y0 - 0.5 * h, y0 + 0.5 * h);
  };
  double total;
  if (adaptive) {
    total = gauss_kronrod<double, 31>::integrate(inner, x0 - 0.5 * h, x0 + 0.5 * h, 10, 1e-13);
  } else {
    total = gauss<double, 8>::integrate(inner, x0 - 0.5 * h, x0 + 0.5 * h);
  }
  return total / (h * h);
}

}  // namespace

Field power_law_cell_average(double A, double alpha, const Grid& grid) {
  const int N = grid.dimension();
  if (!(alpha > 0.0) || !(alpha < N)) {
    throw SingularDatumUnsupported(
        fmt::format("power-law datum needs 0 < alpha < {}, got {}", N, alpha));
  }
  const double h = grid.spacing();
  const std::size_t n = grid.points_per_axis();
  const long half = static_cast<long>(n / 2);
  Field out(grid);
  if (N == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      const long m = std::abs(static_cast<long>(i) - half);
      const double a = m == 0 ? 0.0 : (static_cast<double>(m) - 0.5) * h;
      const double b = (static_cast<double>(m) + 0.5) * h;
      out[i] = A * (m == 0 ? mean_power_1d(0.0, 0.5 * h, alpha) : mean_power_1d(a, b, alpha));
    }
    return out;
  }
  // The mean depends only on the unordered pair of absolute offsets.
  std::vector<double> table(static_cast<std::size_t>((half + 1) * (half + 1)), -1.0);
  auto mean = [&](long a, long b) {
    if (a > b) std::swap(a, b);
    double& slot = table[static_cast<std::size_t>(a * (half + 1) + b)];
    if (slot < 0.0) {
      if (a == 0 && b == 0) {
        slot = origin_cell_mean_2d(h, alpha);
      } else {
        slot = cell_mean_2d(static_cast<double>(a) * h, static_cast<double>(b) * h, h, alpha,
                            b <= 2);
      }
    }
    return slot;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const long a = std::abs(static_cast<long>(i) - half);
    for (std::size_t j = 0; j < n; ++j) {
      const long b = std::abs(static_cast<long>(j) - half);
      out[i * n + j] = A * mean(a, b);
    }
  }
  return out;
}

namespace {

std::vector<double> heat_multiplier(const Grid& grid, double diffusivity, double h) {
  std::vector<double> m(spectral::spectrum_size(grid));
  for (std::size_t s = 0; s < m.size(); ++s) {
    const Point xi = spectral::wavenumber(grid, s);
    m[s] = std::exp(-diffusivity * (xi[0] * xi[0] + xi[1] * xi[1]) * h);
  }
  return m;
}

Field initial_field(const LimitProblem& problem, const Grid& grid, double dt) {
  return std::visit(
      [&](const auto& d) -> Field {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, PowerLawDatum>) {
          return power_law_cell_average(d.A, d.alpha, grid);
        } else if constexpr (std::is_same_v<T, PointSourceDatum>) {
          return gaussian_point_source(d.mass, problem.diffusivity, grid, dt);
        } else {
          if (!(d.field.grid() == grid)) throw GridMismatch("datum field is not on the grid");
          return d.field;
        }
      },
      problem.datum);
}

}  // namespace

Trajectory evolve_limit(const LimitProblem& problem, const Grid& grid, double dt,
                        std::span<const double> snapshot_times) {
  if (!(problem.diffusivity > 0.0)) {
    throw InvalidArgument(fmt::format("diffusivity must be positive, got {}", problem.diffusivity));
  }
  if (!(problem.c0 >= 0.0)) throw InvalidArgument("c0 must be nonnegative");
  if (problem.c0 > 0.0 && !(problem.p > 1.0)) {
    throw InvalidArgument(fmt::format("p must exceed 1, got {}", problem.p));
  }
  if (!(dt > 0.0)) throw InvalidArgument(fmt::format("dt must be positive, got {}", dt));
  const double t_end = snapshot_times.empty() ? 0.0 : snapshot_times.back();
  detail::validate_snapshot_times(snapshot_times, t_end, dt);

  const bool point_source = std::holds_alternative<PointSourceDatum>(problem.datum);
  Field U = initial_field(problem, grid, dt);
  if (point_source) U.set_time(dt);
  const double t0 = U.time();
  const double dV = grid.cell_volume();

  Trajectory traj;
  traj.p = problem.p;
  traj.absorption_coefficient = problem.c0;
  traj.initial_mass = integrate(U);

  spectral::Workspace ws(grid);

  if (problem.c0 == 0.0) {
    const Field start = U;
    for (double t : snapshot_times) {
      if (detail::same_time(t, t0)) {
        traj.snapshots.push_back(start);
      } else if (t < t0) {
        if (!point_source) throw InvalidArgument("snapshot time precedes the datum time");
        traj.snapshots.push_back(gaussian_point_source(
            std::get<PointSourceDatum>(problem.datum).mass, problem.diffusivity, grid, t));
      } else {
        Field f = start;
        spectral::apply_multiplier(ws, f.values(), heat_multiplier(grid, problem.diffusivity, t - t0));
        f.set_time(t);
        traj.snapshots.push_back(std::move(f));
      }
      traj.absorbed.push_back(0.0);
    }
    return traj;
  }

  detail::MultiplierCache cache(
      [&](double h) { return heat_multiplier(grid, problem.diffusivity, h); });
  const double p = problem.p;
  const double c0 = problem.c0;
  double absorbed = 0.0;
  double rate = detail::integral_of_power(U.values(), p, dV);
  auto record = [&] {
    traj.snapshots.push_back(U);
    traj.absorbed.push_back(absorbed);
  };

  std::vector<double> later;
  for (double t : snapshot_times) {
    if (t < t0 && !detail::same_time(t, t0)) {
      throw InvalidArgument(fmt::format("snapshot time {} precedes the start time {}", t, t0));
    }
    later.push_back(t);
  }
  const auto plan = detail::plan_segments(t0, t_end, dt, later);
  if (plan.record_start) record();
  for (const auto& seg : plan.segments) {
    const auto& m = cache.get(seg.h);
    for (std::size_t step = 0; step < seg.steps; ++step) {
      traj.max_clamp = std::max(traj.max_clamp, detail::absorb(U.values(), p, c0, 0.5 * seg.h));
      spectral::apply_multiplier(ws, U.values(), m);
      const double c = detail::absorb(U.values(), p, c0, 0.5 * seg.h);
      if (c > 0.0) ++traj.clamp_events;
      traj.max_clamp = std::max(traj.max_clamp, c);
      U.set_time(seg.t_start + static_cast<double>(step + 1) * seg.h);
      for (double v : U.values()) {
        if (!std::isfinite(v)) {
          throw NonfiniteState(fmt::format("non-finite value after step ending at t = {}", U.time()));
        }
      }
      const double next = detail::integral_of_power(U.values(), p, dV);
      absorbed += 0.5 * seg.h * (rate + next);
      rate = next;
      ++traj.steps;
    }
    U.set_time(seg.t_end);
    if (seg.record) record();
  }
  traj.absorbed_mass = absorbed;
  return traj;
}

double self_similarity_check(const LimitProblem& problem, const Grid& grid, double t, double k,
                             double dt) {
  const auto* datum = std::get_if<PowerLawDatum>(&problem.datum);
  if (datum == nullptr) throw InvalidArgument("self_similarity_check needs a power-law datum");
  if (!(k >= 1.0)) throw InvalidArgument(fmt::format("k must be at least 1, got {}", k));
  if (!(t > 0.0)) throw InvalidArgument(fmt::format("t must be positive, got {}", t));

  std::vector<double> times{t};
  const double t_fine = k * k * t;
  if (!detail::same_time(t_fine, t)) times.push_back(t_fine);
  const Trajectory traj = evolve_limit(problem, grid, dt, times);
  const Field& coarse = traj.snapshots.front();
  const Field& fine = traj.snapshots.back();

  const double fk = std::pow(k, datum->alpha);
  const double R = grid.half_length() / (2.0 * k);
  double defect = 0.0;
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    if (grid.radius(i) > R) continue;
    const Point x = grid.point(i);
    const double v = fk * interpolate(fine, Point{k * x[0], k * x[1]});
    defect = std::max(defect, std::abs(v - coarse[i]));
  }
  return defect;
}

}  // namespace nldiff
