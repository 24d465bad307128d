#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "nldiff/error.hpp"
#include "nldiff/fundamental.hpp"
#include "nldiff/heat_reference.hpp"
#include "nldiff/nonlocal_solver.hpp"
#include "nldiff/rescaling.hpp"
#include "oracles.hpp"

using namespace nldiff;
using Catch::Approx;

namespace {

const KernelSpec kEpan(KernelFamily::epanechnikov, 1.0, 1);
const KernelSpec kBump(KernelFamily::bump, 1.0, 1);

// The kernel as the spectral convolution sees it: sampled and renormalized
// to unit discrete mass.
Field discrete_kernel(const KernelSpec& k, const Grid& g) {
  Field J = Field::sample(g, [&](const Point& x) { return k.evaluate(x); });
  const double m = integrate(J);
  for (auto& v : J.values()) v /= m;
  return J;
}

void axpy(Field& y, double a, const Field& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

}  // namespace

TEST_CASE("W multipliers at frequency zero", "[fundamental]") {
  for (double t : {1e-3, 0.5, 5.0, 29.9, 30.0, 200.0}) {
    CHECK(w_multiplier(1.0, t) == Approx(-std::expm1(-t)).epsilon(1e-14));
    CHECK(wt_multiplier(1.0, t) == Approx(std::exp(-t)).epsilon(1e-13));
  }
  // Both branches agree at the switch.
  CHECK(w_multiplier(0.3, 30.0 - 1e-12) == Approx(w_multiplier(0.3, 30.0)).epsilon(1e-10));
  CHECK_THROWS_AS(w_field(kEpan, Grid(1, 1024, 32.0), 0.0), InvalidArgument);
}

TEST_CASE("W mass law and positivity", "[fundamental]") {
  const Grid g(1, 2048, 64.0);
  for (double t : {1e-3, 0.1, 1.0, 10.0, 100.0}) {
    const auto w = w_field(kBump, g, t);
    CHECK(std::abs(integrate(w.field) - (1.0 - std::exp(-t))) <= 1e-8);
    CHECK(std::ranges::min(w.field.values()) >= -1e-10 * sup_norm(w.field));
    CHECK(w.field.time() == t);
  }
  const Grid g2(2, 256, 8.0);
  const auto w2 = w_field(KernelSpec(KernelFamily::quartic, 1.0, 2), g2, 2.0);
  CHECK(std::abs(integrate(w2.field) - (1.0 - std::exp(-2.0))) <= 1e-8);
}

TEST_CASE("W vanishes as t goes to zero", "[fundamental]") {
  const Grid g(1, 1024, 32.0);
  double prev = sup_norm(w_field(kEpan, g, 1e-1).field);
  for (double t : {1e-2, 1e-3, 1e-4}) {
    const double s = sup_norm(w_field(kEpan, g, t).field);
    CHECK(s < prev);
    prev = s;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("W matches a time-stepped solution of its equation", "[fundamental]") {
  // W_t = J*W - W + e^{-t} J with W(0) = 0. Each step propagates exactly with
  // step_linear and integrates the source by Simpson's rule.
  const Grid g(1, 1024, 32.0);
  const auto symbol = spectral_symbol(kEpan, g);
  const Field J = discrete_kernel(kEpan, g);
  const double h = 1e-3;
  const int steps = 5000;
  Field W(g);
  for (int s = 0; s < steps; ++s) {
    const double t = s * h;
    Field next = step_linear(W, symbol, h);
    Field src = step_linear(J, symbol, h);
    for (auto& v : src.values()) v *= std::exp(-t);
    Field mid = step_linear(J, symbol, 0.5 * h);
    axpy(src, 4.0 * std::exp(-(t + 0.5 * h)), mid);
    axpy(src, std::exp(-(t + h)), J);
    axpy(next, h / 6.0, src);
    W = std::move(next);
  }
  const auto exact = w_field(kEpan, g, steps * h);
  CHECK(testing::max_abs_difference(W, exact.field) <= 1e-6);
}

TEST_CASE("Gradient of W", "[fundamental]") {
  const Grid g(1, 4096, 32.0);
  const double t = 4.0;
  const auto grad = grad_w_field(kBump, g, t);
  REQUIRE(grad.size() == 1);
  const Field& d = grad[0];
  CHECK(std::abs(integrate(d)) <= 1e-9);
  const std::size_t n = g.points_per_axis();
  double asym = 0.0;
  for (std::size_t i = 1; i < n; ++i) asym = std::max(asym, std::abs(d[i] + d[n - i]));
  CHECK(asym <= 1e-10);

  const Field W = w_field(kBump, g, t).field;
  const double dx = g.spacing();
  double fd = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    fd += std::abs(W[(i + 1) % n] - W[(i + n - 1) % n]) / (2.0 * dx);
  }
  fd *= dx;
  CHECK(lq_norm(d, 1.0) == Approx(fd).epsilon(1e-4));

  const auto grad2 = grad_w_field(KernelSpec(KernelFamily::quartic, 1.0, 2), Grid(2, 256, 8.0), 1.0);
  REQUIRE(grad2.size() == 2);
  for (const auto& c : grad2) CHECK(std::abs(integrate(c)) <= 1e-9);
}

TEST_CASE("Time derivative of W", "[fundamental]") {
  const Grid g(1, 1024, 32.0);
  const double t = 1.0, h = 1e-4;
  const Field wt = wt_field(kEpan, g, t);
  const Field plus = w_field(kEpan, g, t + h).field;
  const Field minus = w_field(kEpan, g, t - h).field;
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    err = std::max(err, std::abs(wt[i] - (plus[i] - minus[i]) / (2.0 * h)));
  }
  CHECK(err <= 1e-6);
  CHECK(integrate(wt) == Approx(std::exp(-t)).epsilon(1e-10));

  const Grid wide(1, 2048, 64.0);
  double prev = sup_norm(wt_field(kEpan, wide, 10.0));
  for (double s : {15.0, 20.0, 40.0, 80.0}) {
    const double cur = sup_norm(wt_field(kEpan, wide, s));
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("Rescaled W matches W of the dilated kernel", "[fundamental][rescaling]") {
  // W_k(x, t) = k^N W(kx, k^2 t) is the W of J_k(x) = k^N J(kx) at time k^2 t.
  const double k = 2.0, t = 1.5;
  const Grid base(1, 4096, 64.0);
  const Grid target(1, 4096, 32.0);
  const Field fine = w_field(kEpan, base, k * k * t).field;
  const Field wk = rescale_field(fine, k, k, target, t);
  const Field direct = w_field(KernelSpec(KernelFamily::epanechnikov, 1.0 / k, 1), target, k * k * t).field;
  CHECK(testing::max_abs_difference(wk, direct) <= 1e-4 * sup_norm(direct));
}

TEST_CASE("W approaches the heat kernel", "[fundamental][heat]") {
  const Grid g(1, 2048, 64.0);
  const double a = diffusivity(kEpan);
  std::vector<double> metric;
  double final_ratio = 0.0;
  for (double t : {10.0, 20.0, 50.0, 100.0, 200.0}) {
    const Field W = w_field(kEpan, g, t).field;
    const Field U = gaussian_point_source(1.0, a, g, t);
    metric.push_back(testing::max_abs_difference(W, U) * std::sqrt(t));
    final_ratio = testing::max_abs_difference(W, U) / sup_norm(U);
  }
  for (std::size_t i = 1; i < metric.size(); ++i) CHECK(metric[i] < metric[i - 1]);
  CHECK(final_ratio < 0.05);
}

TEST_CASE("Barrier report", "[fundamental]") {
  const KernelSpec wide(KernelFamily::bump, 2.9, 1);
  const Grid g(1, 4096, 128.0);
  const std::vector<double> ts{4.0, 16.0, 64.0};
  const auto report = barrier_report(wide, g, ts);
  REQUIRE(report.samples.size() == 3);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto& s = report.samples[i];
    CHECK(s.t == ts[i]);
    CHECK(std::isfinite(s.c_w));
    CHECK(s.c_w > 0.0);
    CHECK(s.mass == Approx(1.0 - std::exp(-ts[i])).margin(1e-8));
  }
  CHECK(report.spread(&BarrierSample::c_w) <= 4.0);
  CHECK(report.max_c_w() >= report.samples[0].c_w);

  const std::vector<double> big{1100.0};
  CHECK_THROWS_AS(barrier_report(wide, g, big), EmptyExclusionRegion);
  const std::vector<double> unordered{2.0, 1.0};
  CHECK_THROWS_AS(barrier_report(wide, g, unordered), InvalidArgument);
}
