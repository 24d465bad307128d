#include "nldiff/grid.hpp"

#include <cmath>

#include <fmt/format.h>

#include "nldiff/error.hpp"

namespace nldiff {

Grid::Grid(int dimension, std::size_t points_per_axis, double half_length)
    : dimension_(dimension), n_(points_per_axis), half_length_(half_length) {
  if (dimension != 1 && dimension != 2) {
    throw InvalidArgument(fmt::format("grid dimension must be 1 or 2, got {}", dimension));
  }
  if (!is_power_of_two(points_per_axis) || points_per_axis < 256) {
    throw InvalidArgument(fmt::format(
        "points_per_axis must be a power of two >= 256, got {}", points_per_axis));
  }
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw InvalidArgument(fmt::format("half_length must be positive, got {}", half_length));
  }
  spacing_ = 2.0 * half_length / static_cast<double>(points_per_axis);
}

std::size_t Grid::size() const noexcept { return dimension_ == 1 ? n_ : n_ * n_; }

double Grid::cell_volume() const noexcept {
  return dimension_ == 1 ? spacing_ : spacing_ * spacing_;
}

Point Grid::point(std::size_t flat) const noexcept {
  if (dimension_ == 1) return {coordinate(flat), 0.0};
  return {coordinate(flat / n_), coordinate(flat % n_)};
}

double Grid::radius(std::size_t flat) const noexcept {
  const Point x = point(flat);
  return dimension_ == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]);
}

std::size_t Grid::origin_index() const noexcept {
  const std::size_t h = n_ / 2;
  return dimension_ == 1 ? h : h * n_ + h;
}

bool Grid::contains(const Point& x) const noexcept {
  for (int a = 0; a < dimension_; ++a) {
    if (!(x[a] >= -half_length_ && x[a] < half_length_)) return false;
  }
  return true;
}

}  // namespace nldiff
