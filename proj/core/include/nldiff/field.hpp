#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nldiff/grid.hpp"

namespace nldiff {

class SpectralSymbol;

/// Real function sampled on a Grid at a given time.
class Field {
 public:
  explicit Field(Grid grid, double time = 0.0);
  Field(Grid grid, std::vector<double> values, double time);

  template <class Fn>
  static Field sample(const Grid& grid, Fn&& fn, double time = 0.0) {
    Field out(grid, time);
    for (std::size_t i = 0; i < out.values_.size(); ++i) {
      out.values_[i] = fn(grid.point(i));
    }
    return out;
  }

  const Grid& grid() const noexcept { return grid_; }
  double time() const noexcept { return time_; }
  void set_time(double t) noexcept { time_ = t; }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }

 private:
  Grid grid_;
  std::vector<double> values_;
  double time_;
};

/// Riemann sums with weight dx^N. The two-argument overloads restrict the
/// sum (or maximum) to nodes with |x| <= ball_radius.
double integrate(const Field& f);
double integrate(const Field& f, double ball_radius);
double sup_norm(const Field& f);
double sup_norm(const Field& f, double ball_radius);
/// q >= 1; q = infinity gives sup_norm.
double lq_norm(const Field& f, double q);
double lq_norm(const Field& f, double q, double ball_radius);

/// Multilinear interpolation between the 2^N surrounding nodes, wrapping
/// periodically across the last cell. Throws OutOfDomain outside [-L, L)^N.
double interpolate(const Field& f, const Point& x);

/// Periodic convolution J*u through the spectral symbol of J.
/// Throws GridMismatch when the symbol was built on another grid.
Field convolve(const Field& u, const SpectralSymbol& symbol);

}  // namespace nldiff
