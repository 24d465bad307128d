#pragma once

#include <string_view>

#include "nldiff/grid.hpp"
#include "nldiff/spectral.hpp"

namespace nldiff {

enum class KernelFamily { bump, epanechnikov, quartic };

std::string_view to_string(KernelFamily family) noexcept;
/// Throws InvalidArgument for unknown names.
KernelFamily parse_kernel_family(std::string_view name);

/// Radial, nonnegative, compactly supported convolution kernel with unit mass:
/// J(x) = c * profile(|x| / R_J), profile vanishing for |x| >= R_J.
///
/// Profiles: bump exp(-1/(1-r^2)), epanechnikov (1-r^2), quartic (1-r^2)^2.
/// The constant c comes from adaptive quadrature at construction.
class KernelSpec {
 public:
  KernelSpec(KernelFamily family, double support_radius, int dimension);

  KernelFamily family() const noexcept { return family_; }
  double support_radius() const noexcept { return radius_; }
  int dimension() const noexcept { return dimension_; }
  double normalization() const noexcept { return normalization_; }

  double evaluate(const Point& x) const noexcept;
  double evaluate_radial(double r) const noexcept;

  /// Unnormalized profile on the unit ball, zero for s >= 1.
  static double profile(KernelFamily family, double s) noexcept;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

 private:
  KernelFamily family_;
  double radius_;
  int dimension_;
  double normalization_;
};

/// Surface measure of the unit sphere in R^N (2 for N = 1, 2*pi for N = 2).
double unit_sphere_measure(int dimension) noexcept;

/// (1/2N) * integral of J(x)|x|^2, by adaptive quadrature.
double diffusivity(const KernelSpec& kernel);

/// Points of the grid spanning one support radius.
double points_per_radius(const KernelSpec& kernel, const Grid& grid) noexcept;

/// Throws UnderresolvedKernel unless R_J / dx >= 16 and the dimensions agree.
void require_resolved(const KernelSpec& kernel, const Grid& grid);

/// Discrete Fourier symbol of J on the grid, renormalized so that the
/// frequency-0 value is exactly 1.
SpectralSymbol spectral_symbol(const KernelSpec& kernel, const Grid& grid);

}  // namespace nldiff
