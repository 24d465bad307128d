#pragma once

// Independent reference computations used by the unit tests. None of these
// go through the spectral machinery of the library.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "nldiff/field.hpp"
#include "nldiff/kernel.hpp"

namespace nldiff::testing {

/// Periodic convolution by direct O(n^2) summation, N = 1.
inline std::vector<double> direct_convolution_1d(const KernelSpec& kernel, const Field& u) {
  const Grid& g = u.grid();
  const std::size_t n = g.points_per_axis();
  const double dx = g.spacing();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      long d = static_cast<long>(i) - static_cast<long>(j);
      if (d > static_cast<long>(n / 2)) d -= static_cast<long>(n);
      if (d < -static_cast<long>(n / 2)) d += static_cast<long>(n);
      s += kernel.evaluate_radial(std::abs(static_cast<double>(d) * dx)) * u[j];
    }
    out[i] = s * dx;
  }
  return out;
}

/// Closed-form Fourier transform of the unit epanechnikov kernel in 1-D.
inline double epanechnikov_transform(double xi) {
  if (std::abs(xi) < 1e-3) return 1.0 - xi * xi / 10.0 + std::pow(xi, 4) / 280.0;
  return 3.0 * (std::sin(xi) - xi * std::cos(xi)) / (xi * xi * xi);
}

/// (1/2N) sum J |x|^2 dx^N over a dense uniform grid on [-R, R]^N.
inline double riemann_diffusivity(const KernelSpec& kernel, std::size_t m) {
  const int N = kernel.dimension();
  const double R = kernel.support_radius();
  const double h = 2.0 * R / static_cast<double>(m);
  double sum = 0.0;
  if (N == 1) {
    for (std::size_t i = 0; i < m; ++i) {
      const double x = -R + (static_cast<double>(i) + 0.5) * h;
      sum += kernel.evaluate_radial(x) * x * x;
    }
    return sum * h / 2.0;
  }
  for (std::size_t i = 0; i < m; ++i) {
    const double x = -R + (static_cast<double>(i) + 0.5) * h;
    for (std::size_t j = 0; j < m; ++j) {
      const double y = -R + (static_cast<double>(j) + 0.5) * h;
      const double r2 = x * x + y * y;
      sum += kernel.evaluate_radial(std::sqrt(r2)) * r2;
    }
  }
  return sum * h * h / 4.0;
}

inline double max_abs_difference(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double heat_kernel(double mass, double a, double t, double r, int N) {
  return mass * std::pow(4.0 * std::numbers::pi * a * t, -0.5 * N) *
         std::exp(-r * r / (4.0 * a * t));
}

}  // namespace nldiff::testing
