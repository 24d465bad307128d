#pragma once

#include <span>
#include <variant>

#include "nldiff/field.hpp"
#include "nldiff/trajectory.hpp"

namespace nldiff {

/// U(x, 0) = A |x|^{-alpha}, 0 < alpha < N.
struct PowerLawDatum {
  double A = 1.0;
  double alpha = 0.5;
};

/// U(x, 0) = M delta.
struct PointSourceDatum {
  double mass = 1.0;
};

/// U(x, 0) given on the grid.
struct FieldDatum {
  Field field;
};

using LimitDatum = std::variant<PowerLawDatum, PointSourceDatum, FieldDatum>;

/// U_t - a Laplace(U) = -c0 U^p.
struct LimitProblem {
  double diffusivity = 0.1;
  double c0 = 0.0;
  double p = 3.0;
  LimitDatum datum = PointSourceDatum{};
};

/// M (4 pi a t)^{-N/2} exp(-|x|^2 / (4 a t)).
Field gaussian_point_source(double mass, double diffusivity, const Grid& grid,
                            double t);

/// Cell averages of A|x|^{-alpha}; the cell containing the origin is averaged
/// exactly. Throws SingularDatumUnsupported when alpha >= N.
Field power_law_cell_average(double A, double alpha, const Grid& grid);

/// Strang splitting with the exact heat multiplier exp(-a |xi|^2 dt) and the
/// closed-form absorption substep. With c0 = 0 the snapshots are produced by
/// one exact multiplier each. A point source starts from the Gaussian at
/// t0 = dt.
Trajectory evolve_limit(const LimitProblem& problem, const Grid& grid, double dt,
                        std::span<const double> snapshot_times);

/// sup over |x| <= L/(2k) of |k^alpha U(kx, k^2 t) - U(x, t)| for a power-law
/// datum.
double self_similarity_check(const LimitProblem& problem, const Grid& grid,
                             double t, double k, double dt);

}  // namespace nldiff
