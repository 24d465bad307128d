#pragma once

#include <optional>
#include <vector>

#include "nldiff/field.hpp"
#include "nldiff/kernel.hpp"
#include "nldiff/spectral.hpp"
#include "nldiff/trajectory.hpp"

namespace nldiff {

/// Parameters of one run of u_t = J*u - u - u^p (p empty: linear equation).
struct SolveConfig {
  KernelSpec kernel;
  Grid grid;
  std::optional<double> p;
  double dt = 1e-2;
  double t_end = 1.0;
  std::vector<double> snapshot_times;

  /// Throws InvalidArgument / UnderresolvedKernel on inconsistent fields.
  void validate() const;
};

/// Exact discrete semigroup of the linear operator over dt.
Field step_linear(const Field& u, const SpectralSymbol& symbol, double dt);

/// Exact pointwise flow of u' = -u^p over dt. Negative inputs are clamped to 0.
Field step_absorption(const Field& u, double p, double dt);

/// Half absorption, full linear step, half absorption. With no p this is
/// step_linear.
Field step_strang(const Field& u, const SpectralSymbol& symbol,
                  std::optional<double> p, double dt);

/// Runs step_strang from u0.time() (normally 0) to t_end, landing exactly on
/// every snapshot time. Throws NonfiniteState when a step produces NaN/Inf.
Trajectory evolve(const SolveConfig& config, const Field& u0);

/// u_L(t) = e^{-t} u0 + W(., t) * u0, with W taken from w_field.
Field linear_solution_via_w(const KernelSpec& kernel, const Grid& grid,
                            const Field& u0, double t);

}  // namespace nldiff
