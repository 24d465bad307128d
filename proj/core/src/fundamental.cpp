#include "nldiff/fundamental.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "nldiff/error.hpp"
#include "nldiff/spectral.hpp"

namespace nldiff {

double w_multiplier(double symbol, double t) noexcept {
  if (t < 30.0) return std::exp(-t) * std::expm1(t * symbol);
  return std::exp(t * (symbol - 1.0)) - std::exp(-t);
}

double wt_multiplier(double symbol, double t) noexcept {
  return (symbol - 1.0) * w_multiplier(symbol, t) + std::exp(-t) * symbol;
}

namespace {

void require_positive_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw InvalidArgument(fmt::format("W requires t > 0, got {}", t));
  }
}

// Inverse transform of a per-mode multiplier, centred on the grid origin and
// scaled to a density. derivative_axis >= 0 multiplies by i*xi along that axis.
Field field_from_multiplier(const Grid& grid, const SpectralSymbol& symbol, double t,
                            double (*multiplier)(double, double), int derivative_axis) {
  spectral::Workspace ws(grid);
  auto spec = ws.spectrum();
  for (std::size_t s = 0; s < spec.size(); ++s) {
    const auto j = spectral::mode_index(grid, s);
    const double sign = ((j[0] + j[1]) % 2 == 0) ? 1.0 : -1.0;
    const double m = sign * multiplier(symbol[s], t);
    if (derivative_axis < 0) {
      spec[s] = {m, 0.0};
    } else if (spectral::is_nyquist(grid, s, derivative_axis)) {
      spec[s] = {0.0, 0.0};
    } else {
      spec[s] = {0.0, m * spectral::wavenumber(grid, s)[derivative_axis]};
    }
  }
  ws.inverse();
  Field out(grid, t);
  const double scale = 1.0 / grid.cell_volume();
  auto r = ws.real();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = r[i] * scale;
  return out;
}

double dist2(const Point& x, int dimension) {
  return dimension == 1 ? x[0] * x[0] : x[0] * x[0] + x[1] * x[1];
}

}  // namespace

WEvaluation w_field(const KernelSpec& kernel, const Grid& grid, double t) {
  require_positive_time(t);
  const auto symbol = spectral_symbol(kernel, grid);
  return {field_from_multiplier(grid, symbol, t, &w_multiplier, -1), kernel, t};
}

std::vector<Field> grad_w_field(const KernelSpec& kernel, const Grid& grid, double t) {
  require_positive_time(t);
  const auto symbol = spectral_symbol(kernel, grid);
  std::vector<Field> out;
  for (int a = 0; a < grid.dimension(); ++a) {
    out.push_back(field_from_multiplier(grid, symbol, t, &w_multiplier, a));
  }
  return out;
}

Field wt_field(const KernelSpec& kernel, const Grid& grid, double t) {
  require_positive_time(t);
  const auto symbol = spectral_symbol(kernel, grid);
  return field_from_multiplier(grid, symbol, t, &wt_multiplier, -1);
}

namespace {

double max_of(const std::vector<BarrierSample>& samples, double BarrierSample::*member) {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, s.*member);
  return m;
}

}  // namespace

double BarrierReport::max_c_w() const { return max_of(samples, &BarrierSample::c_w); }
double BarrierReport::max_c_grad() const { return max_of(samples, &BarrierSample::c_grad); }
double BarrierReport::max_c_t() const { return max_of(samples, &BarrierSample::c_t); }
double BarrierReport::max_g1() const { return max_of(samples, &BarrierSample::g1); }
double BarrierReport::max_t1() const { return max_of(samples, &BarrierSample::t1); }

double BarrierReport::spread(double BarrierSample::*member) const {
  if (samples.empty()) return std::numeric_limits<double>::quiet_NaN();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& s : samples) {
    lo = std::min(lo, s.*member);
    hi = std::max(hi, s.*member);
  }
  return hi / lo;
}

BarrierReport barrier_report(const KernelSpec& kernel, const Grid& grid,
                             std::span<const double> t_list, ExclusionRegion exclusion) {
  if (t_list.empty()) throw InvalidArgument("barrier_report needs a nonempty t_list");
  for (std::size_t i = 0; i < t_list.size(); ++i) {
    require_positive_time(t_list[i]);
    if (i > 0 && !(t_list[i] > t_list[i - 1])) {
      throw InvalidArgument("barrier_report t_list must be increasing");
    }
  }
  const auto symbol = spectral_symbol(kernel, grid);
  const int N = grid.dimension();
  const double L = grid.half_length();
  const double dV = grid.cell_volume();

  BarrierReport report;
  for (double t : t_list) {
    const double r_min =
        std::max(exclusion.K * std::sqrt(t), exclusion.min_radius_factor * kernel.support_radius());
    if (r_min >= L) {
      throw EmptyExclusionRegion(fmt::format(
          "exclusion radius {:.6g} at t = {} exceeds half length {}", r_min, t, L));
    }
    const Field W = field_from_multiplier(grid, symbol, t, &w_multiplier, -1);
    const Field Wt = field_from_multiplier(grid, symbol, t, &wt_multiplier, -1);
    std::vector<Field> grad;
    for (int a = 0; a < N; ++a) {
      grad.push_back(field_from_multiplier(grid, symbol, t, &w_multiplier, a));
    }

    BarrierSample s;
    s.t = t;
    s.mass = integrate(W);
    s.sup = sup_norm(W);
    const double e = std::exp(-t);
    double l1_grad = 0.0;
    double l1_wt = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < W.size(); ++i) {
      const Point x = grid.point(i);
      double g2 = 0.0;
      for (int a = 0; a < N; ++a) g2 += grad[a][i] * grad[a][i];
      const double gnorm = std::sqrt(g2);
      l1_grad += gnorm;
      l1_wt += std::abs(Wt[i]);
      const double r = std::sqrt(dist2(x, N));
      if (r < r_min || r >= L) continue;
      any = true;
      s.c_w = std::max(s.c_w, W[i] * std::pow(r, N + 2) / t);
      s.c_grad = std::max(s.c_grad, gnorm * std::pow(r, N + 3) / t);
      const double excess = std::max(std::abs(Wt[i]) - e * kernel.evaluate(x), 0.0);
      s.c_t = std::max(s.c_t, excess * std::pow(1.0 + r, N + 4) / t);
    }
    if (!any) {
      throw EmptyExclusionRegion(fmt::format("no grid node in the exclusion region at t = {}", t));
    }
    s.l1_grad = l1_grad * dV;
    s.l1_wt = l1_wt * dV;
    s.g1 = s.l1_grad * std::max(std::sqrt(t), 1.0 / t);
    s.t1 = s.l1_wt * std::max(t, 1.0 / (e + t));
    report.samples.push_back(s);
  }
  return report;
}

}  // namespace nldiff
