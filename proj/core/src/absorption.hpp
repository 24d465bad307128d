#pragma once

#include <cmath>
#include <span>

namespace nldiff::detail {

/// u^p for u >= 0 with exact multiplication for small integer p.
inline double power(double u, double p) noexcept {
  if (p == 2.0) return u * u;
  if (p == 3.0) return u * u * u;
  if (p == 4.0) {
    const double u2 = u * u;
    return u2 * u2;
  }
  if (p == 5.0) {
    const double u2 = u * u;
    return u2 * u2 * u;
  }
  if (p == 7.0) {
    const double u3 = u * u * u;
    return u3 * u3 * u;
  }
  return std::pow(u, p);
}

/// Exact flow of u' = -c u^p over time h, applied in place. Negative entries
/// are clamped to zero first; returns the largest clamp magnitude.
inline double absorb(std::span<double> u, double p, double c, double h) noexcept {
  const double q = p - 1.0;
  const double rate = q * c * h;
  double max_clamp = 0.0;
  for (double& v : u) {
    if (v <= 0.0) {
      if (-v > max_clamp) max_clamp = -v;
      v = 0.0;
      continue;
    }
    const double z = 1.0 + rate * power(v, q);
    double factor;
    if (q == 1.0) {
      factor = 1.0 / z;
    } else if (q == 2.0) {
      factor = 1.0 / std::sqrt(z);
    } else if (q == 4.0) {
      factor = 1.0 / std::sqrt(std::sqrt(z));
    } else {
      factor = std::pow(z, -1.0 / q);
    }
    v *= factor;
  }
  return max_clamp;
}

/// Riemann sum of max(u, 0)^p times the cell volume.
inline double integral_of_power(std::span<const double> u, double p, double cell_volume) noexcept {
  double sum = 0.0;
  for (double v : u) {
    if (v > 0.0) sum += power(v, p);
  }
  return sum * cell_volume;
}

}  // namespace nldiff::detail
