#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nldiff/field.hpp"
#include "nldiff/rescaling.hpp"
#include "nldiff/trajectory.hpp"

namespace nldiff {

struct FitWindow {
  double t_min = 0.0;
  double t_max = 0.0;
};

/// Least-squares slope of log(value) against log(t).
struct RateFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  FitWindow window;
  std::size_t n_points = 0;
};

/// Throws InsufficientPoints (< 5 in window or t not increasing) and
/// NonpositiveValue.
RateFit rate_fit(std::span<const double> t, std::span<const double> value,
                 FitWindow window);

struct ConvergenceEntry {
  double t = 0.0;
  double metric = 0.0;
};

/// metric(t) = t^{beta/2} sup_{|x| <= R sqrt(t)} |g(t) u(x,t) - U(x,t)| with
/// g = 1, 1/log sqrt(t), log sqrt(t), 1/log sqrt(t), 1/log^2 sqrt(t),
/// 1/log log sqrt(t), 1 for the seven family kinds.
struct ConvergenceSeries {
  std::vector<ConvergenceEntry> entries;
  double R = 2.0;
  FamilyKind kind = FamilyKind::power_law;

  bool strictly_decreasing() const;
  double final_over_initial() const;
};

/// Reference solution U(., t) on the trajectory grid.
using ReferenceFn = std::function<Field(double t)>;

/// Normalizer g(t) of the family (see ConvergenceSeries). Empty when t is too
/// small for the logarithms to be positive.
std::optional<double> normalizer_factor(FamilyKind kind, double t);

/// Snapshots at t <= 0 or with undefined normalizer are skipped.
/// Throws WindowExceedsDomain when R sqrt(t) > L/2.
ConvergenceSeries convergence_series(const Trajectory& u, const ReferenceFn& reference,
                                     const ScalingFamily& family, double p, double R);

struct MassAuditRow {
  double t = 0.0;
  double lhs = 0.0;  ///< int u(t)
  double rhs = 0.0;  ///< int u0 - c * A(t)
  double absorbed = 0.0;
};

struct MassAudit {
  std::vector<MassAuditRow> rows;
  double initial_mass = 0.0;
  double M_limit = 0.0;

  double max_abs_residual() const;
  double max_relative_residual() const;
};

MassAudit mass_audit(const Trajectory& trajectory);

struct SolutionBarrierRow {
  double t = 0.0;
  double time_weighted = 0.0;   ///< sup f(sqrt t) u
  double space_weighted = 0.0;  ///< sup_{|x| >= max(1, k_min)} f(|x|) u
  double envelope = 0.0;        ///< sup u (1 + sqrt t + |x|)^{2/(p-1)}
};

struct SolutionBarrierSummary {
  std::vector<SolutionBarrierRow> rows;

  double max_time_weighted() const;
  double max_space_weighted() const;
  double max_envelope() const;
  double spread_time_weighted() const;
  double spread_space_weighted() const;
};

/// Rows for snapshots with t >= 1 and sqrt(t) > k_min. The envelope column is
/// filled only when p is given.
SolutionBarrierSummary solution_barrier_report(const Trajectory& trajectory,
                                               const ScalingFamily& family,
                                               std::optional<double> p);

}  // namespace nldiff
