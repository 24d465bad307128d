#include "nldiff/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "nldiff/error.hpp"
#include "nldiff/spectral.hpp"

namespace nldiff {

Field::Field(Grid grid, double time)
    : grid_(grid), values_(grid.size(), 0.0), time_(time) {}

Field::Field(Grid grid, std::vector<double> values, double time)
    : grid_(grid), values_(std::move(values)), time_(time) {
  if (values_.size() != grid_.size()) {
    throw GridMismatch(fmt::format("field has {} values, grid has {}", values_.size(),
                                   grid_.size()));
  }
}

namespace {

template <class Fn>
void for_each_in_ball(const Field& f, double ball_radius, Fn&& fn) {
  const Grid& g = f.grid();
  const double r2 = ball_radius * ball_radius;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Point x = g.point(i);
    const double d2 = g.dimension() == 1 ? x[0] * x[0] : x[0] * x[0] + x[1] * x[1];
    if (d2 <= r2) fn(f[i]);
  }
}

}  // namespace

double integrate(const Field& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  return sum * f.grid().cell_volume();
}

double integrate(const Field& f, double ball_radius) {
  double sum = 0.0;
  for_each_in_ball(f, ball_radius, [&](double v) { sum += v; });
  return sum * f.grid().cell_volume();
}

double sup_norm(const Field& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double sup_norm(const Field& f, double ball_radius) {
  double m = 0.0;
  for_each_in_ball(f, ball_radius, [&](double v) { m = std::max(m, std::abs(v)); });
  return m;
}

double lq_norm(const Field& f, double q) {
  return lq_norm(f, q, std::numeric_limits<double>::infinity());
}

double lq_norm(const Field& f, double q, double ball_radius) {
  if (!(q >= 1.0)) throw InvalidArgument(fmt::format("lq_norm needs q >= 1, got {}", q));
  if (std::isinf(q)) return sup_norm(f, ball_radius);
  double sum = 0.0;
  if (q == 1.0) {
    for_each_in_ball(f, ball_radius, [&](double v) { sum += std::abs(v); });
    return sum * f.grid().cell_volume();
  }
  if (q == 2.0) {
    for_each_in_ball(f, ball_radius, [&](double v) { sum += v * v; });
    return std::sqrt(sum * f.grid().cell_volume());
  }
  for_each_in_ball(f, ball_radius, [&](double v) { sum += std::pow(std::abs(v), q); });
  return std::pow(sum * f.grid().cell_volume(), 1.0 / q);
}

double interpolate(const Field& f, const Point& x) {
  const Grid& g = f.grid();
  if (!g.contains(x)) {
    throw OutOfDomain(fmt::format("point ({}, {}) outside [-{}, {})^{}", x[0], x[1],
                                  g.half_length(), g.half_length(), g.dimension()));
  }
  const std::size_t n = g.points_per_axis();
  std::size_t i0[2] = {0, 0};
  std::size_t i1[2] = {0, 0};
  double w[2] = {0.0, 0.0};
  for (int a = 0; a < g.dimension(); ++a) {
    double s = (x[a] + g.half_length()) / g.spacing();
    const double r = std::round(s);
    if (std::abs(s - r) < 1e-9) s = r;
    auto base = static_cast<std::size_t>(std::floor(s));
    if (base >= n) base = n - 1;
    i0[a] = base;
    i1[a] = (base + 1) % n;
    w[a] = s - static_cast<double>(base);
  }
  if (g.dimension() == 1) {
    const double a = f[i0[0]];
    return w[0] == 0.0 ? a : (1.0 - w[0]) * a + w[0] * f[i1[0]];
  }
  auto at = [&](std::size_t r, std::size_t c) { return f[r * n + c]; };
  const double lo = w[1] == 0.0 ? at(i0[0], i0[1])
                                : (1.0 - w[1]) * at(i0[0], i0[1]) + w[1] * at(i0[0], i1[1]);
  if (w[0] == 0.0) return lo;
  const double hi = w[1] == 0.0 ? at(i1[0], i0[1])
                                : (1.0 - w[1]) * at(i1[0], i0[1]) + w[1] * at(i1[0], i1[1]);
  return (1.0 - w[0]) * lo + w[0] * hi;
}

Field convolve(const Field& u, const SpectralSymbol& symbol) {
  if (!(u.grid() == symbol.grid())) {
    throw GridMismatch("convolve: symbol was built on a different grid");
  }
  Field out = u;
  spectral::Workspace ws(u.grid());
  spectral::apply_multiplier(ws, out.values(), symbol.values());
  return out;
}

}  // namespace nldiff
