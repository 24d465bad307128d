#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "criteria.hpp"
#include "nldiff/fundamental.hpp"
#include "nldiff/kernel.hpp"

namespace nldiff::verify::detail {

CriterionResult w_mass_law(const Context& ctx) {
  CriterionResult result{1, "W mass law", true, {}, {}};
  const std::vector<double> times{0.01, 0.1, 1.0, 10.0, 100.0};
  CsvTable table{"N", "t", "mass", "expected", "abs_error", "min_over_sup"};
  double worst = 0.0;
  for (int N : {1, 2}) {
    const KernelSpec kernel(KernelFamily::epanechnikov, 1.0, N);
    const Grid grid = N == 1 ? Grid(1, 4096, 64.0) : Grid(2, 512, 16.0);
    for (double t : times) {
      const auto W = w_field(kernel, grid, t);
      const double mass = integrate(W.field);
      const double expected = -std::expm1(-t);
      const double err = std::abs(mass - expected);
      double lo = 0.0;
      for (double v : W.field.values()) lo = std::min(lo, v);
      table.add_row({static_cast<double>(N), t, mass, expected, err, lo / sup_norm(W.field)});
      worst = std::max(worst, err);
      if (!(err <= 1e-8)) result.passed = false;
    }
  }
  ctx.emit(result, "w_mass_law.csv", table);
  result.summary = fmt::format("max |int W - (1 - e^-t)| = {:.3e} (tol 1e-8)", worst);
  return result;
}

namespace {

std::vector<double> geometric(double a, double b, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(a * std::pow(b / a, static_cast<double>(i) / (count - 1)));
  }
  return out;
}

double spread(const std::vector<double>& v) {
  double lo = v.front();
  double hi = v.front();
  for (double x : v) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return hi / lo;
}

}  // namespace

CriterionResult w_barriers(const Context& ctx) {
  CriterionResult result{2, "W barriers", true, {}, {}};
  constexpr double kSpreadLimit = 4.0;
  const KernelSpec kernel(KernelFamily::bump, 2.9, 1);
  const Grid grid(1, 16384, 256.0);

  const auto large = geometric(1.0, 100.0, 21);
  const auto report = barrier_report(kernel, grid, large, {2.0, 4.0});
  CsvTable table{"t", "mass", "sup", "C_W", "C_grad", "C_T", "l1_grad", "l1_wt", "G1", "T1"};
  std::vector<double> grad_sqrt_t;
  std::vector<double> wt_t;
  for (const auto& s : report.samples) {
    table.add_row({s.t, s.mass, s.sup, s.c_w, s.c_grad, s.c_t, s.l1_grad, s.l1_wt, s.g1, s.t1});
    grad_sqrt_t.push_back(s.l1_grad * std::sqrt(s.t));
    wt_t.push_back(s.l1_wt * s.t);
  }
  ctx.emit(result, "w_barriers_large_t.csv", table);

  const auto small = geometric(1e-3, 1e-1, 11);
  const auto small_report = barrier_report(kernel, grid, small, {2.0, 4.0});
  CsvTable small_table{"t", "l1_grad", "l1_grad_over_t", "l1_wt"};
  std::vector<double> grad_over_t;
  for (const auto& s : small_report.samples) {
    small_table.add_row({s.t, s.l1_grad, s.l1_grad / s.t, s.l1_wt});
    grad_over_t.push_back(s.l1_grad / s.t);
  }
  ctx.emit(result, "w_barriers_small_t.csv", small_table);

  const double s_w = report.spread(&BarrierSample::c_w);
  const double s_grad = report.spread(&BarrierSample::c_grad);
  const double s_t = report.spread(&BarrierSample::c_t);
  const double s_g1 = spread(grad_sqrt_t);
  const double s_t1 = spread(wt_t);
  const double s_small = spread(grad_over_t);
  for (double s : {s_w, s_grad, s_t, s_g1, s_t1, s_small}) {
    if (!(std::isfinite(s) && s <= kSpreadLimit)) result.passed = false;
  }
  result.summary = fmt::format(
      "spreads over t in [1,100]: C_W {:.3f}, C_grad {:.3f}, C_T {:.3f}, "
      "|grad W|_1 sqrt(t) {:.3f}, |W_t|_1 t {:.3f}; |grad W|_1/t over [1e-3,1e-1] {:.3f} "
      "(limit {})",
      s_w, s_grad, s_t, s_g1, s_t1, s_small, kSpreadLimit);
  return result;
}

}  // namespace nldiff::verify::detail
