#pragma once

#include <array>
#include <cstddef>

namespace nldiff {

/// A point of R^N, N <= 2. The second coordinate is ignored when N = 1.
using Point = std::array<double, 2>;

/// Periodic uniform grid on the box [-L, L)^N.
///
/// Nodes sit at x_i = -L + i*dx along each axis, so the origin is node n/2.
/// Values are stored row-major with axis 0 varying slowest.
class Grid {
 public:
  /// Throws InvalidArgument unless N is 1 or 2, n is a power of two >= 256
  /// and L > 0.
  Grid(int dimension, std::size_t points_per_axis, double half_length);

  int dimension() const noexcept { return dimension_; }
  std::size_t points_per_axis() const noexcept { return n_; }
  double half_length() const noexcept { return half_length_; }
  double spacing() const noexcept { return spacing_; }

  /// Total node count n^N.
  std::size_t size() const noexcept;
  /// Quadrature weight dx^N.
  double cell_volume() const noexcept;

  double coordinate(std::size_t i) const noexcept {
    return -half_length_ + static_cast<double>(i) * spacing_;
  }
  Point point(std::size_t flat) const noexcept;
  double radius(std::size_t flat) const noexcept;
  std::size_t origin_index() const noexcept;

  /// True when x lies in [-L, L)^N.
  bool contains(const Point& x) const noexcept;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int dimension_;
  std::size_t n_;
  double half_length_;
  double spacing_;
};

inline bool is_power_of_two(std::size_t n) noexcept {
  return n != 0 && (n & (n - 1)) == 0;
}

}  // namespace nldiff
