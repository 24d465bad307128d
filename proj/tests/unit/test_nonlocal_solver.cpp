#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "nldiff/error.hpp"
#include "nldiff/fundamental.hpp"
#include "nldiff/nonlocal_solver.hpp"
#include "oracles.hpp"

using namespace nldiff;
using Catch::Approx;

namespace {

const KernelSpec kEpan(KernelFamily::epanechnikov, 1.0, 1);
const Grid kGrid(1, 1024, 32.0);

Field indicator(const Grid& g) {
  return Field::sample(g, [](const Point& x) { return std::abs(x[0]) <= 1.0 ? 1.0 : 0.0; });
}

Field gaussian(const Grid& g, double scale = 1.0) {
  return Field::sample(g, [&](const Point& x) { return scale * std::exp(-x[0] * x[0]); });
}

SolveConfig config(std::optional<double> p, double dt, double t_end, std::vector<double> times) {
  return SolveConfig{kEpan, kGrid, p, dt, t_end, std::move(times)};
}

}  // namespace

TEST_CASE("Linear step", "[solver]") {
  const auto symbol = spectral_symbol(kEpan, kGrid);
  const Field c(kGrid, std::vector<double>(kGrid.size(), 2.5), 0.0);
  const Field cs = step_linear(c, symbol, 0.7);
  CHECK(testing::max_abs_difference(c, cs) <= 1e-14);
  CHECK(cs.time() == Approx(0.7));

  const Field u = indicator(kGrid);
  const Field v = step_linear(u, symbol, 0.3);
  CHECK(integrate(v) == Approx(integrate(u)).epsilon(1e-13));
  CHECK(sup_norm(v) <= sup_norm(u) + 1e-14);

  CHECK_THROWS_AS(step_linear(Field(Grid(1, 512, 32.0)), symbol, 0.1), GridMismatch);
}

TEST_CASE("Repeated linear steps reproduce the fundamental solution", "[solver][fundamental]") {
  const auto symbol = spectral_symbol(kEpan, kGrid);
  Field delta(kGrid);
  delta[kGrid.origin_index()] = 1.0 / kGrid.spacing();
  Field u = delta;
  for (int s = 0; s < 500; ++s) u = step_linear(u, symbol, 1e-2);
  Field expected = w_field(kEpan, kGrid, 5.0).field;
  for (std::size_t i = 0; i < expected.size(); ++i) expected[i] += std::exp(-5.0) * delta[i];
  CHECK(testing::max_abs_difference(u, expected) <= 1e-8);
}

TEST_CASE("Absorption step", "[solver]") {
  const Grid g(1, 256, 1.0);
  auto constant = [&](double c) { return Field(g, std::vector<double>(g.size(), c), 0.0); };
  CHECK(step_absorption(constant(1.0), 2.0, 1.0)[3] == Approx(0.5).epsilon(1e-15));
  CHECK(step_absorption(constant(1.0), 3.0, 1.5)[3] == Approx(0.5).epsilon(1e-15));
  CHECK(step_absorption(constant(0.0), 3.0, 1.5)[3] == 0.0);
  CHECK(step_absorption(constant(-1e-14), 3.0, 1.5)[3] == 0.0);
  // Non-special exponent goes through the general power.
  CHECK(step_absorption(constant(2.0), 2.5, 0.4)[0] ==
        Approx(std::pow(std::pow(2.0, -1.5) + 1.5 * 0.4, -1.0 / 1.5)).epsilon(1e-14));
  CHECK(step_absorption(constant(2.0), 5.0, 0.4)[0] ==
        Approx(std::pow(std::pow(2.0, -4.0) + 4.0 * 0.4, -0.25)).epsilon(1e-14));
}

TEST_CASE("Strang step", "[solver]") {
  const auto symbol = spectral_symbol(kEpan, kGrid);
  const Field u = gaussian(kGrid);
  CHECK(testing::max_abs_difference(step_strang(u, symbol, std::nullopt, 0.1),
                                    step_linear(u, symbol, 0.1)) == 0.0);

  const Field c(kGrid, std::vector<double>(kGrid.size(), 0.8), 0.0);
  const Field cs = step_strang(c, symbol, 2.0, 0.05);
  const auto [lo, hi] = std::ranges::minmax(cs.values());
  CHECK(hi - lo <= 1e-15);
  CHECK(hi <= 0.8);
  CHECK(hi == Approx(0.8 / (1.0 + 0.8 * 0.05)).epsilon(1e-13));
}

TEST_CASE("Strang splitting is second order", "[solver]") {
  const Field u0 = gaussian(kGrid);
  auto run = [&](double dt) { return evolve(config(3.0, dt, 1.0, {1.0}), u0).snapshots.back(); };
  const Field ref = run(1e-4);
  std::vector<double> err;
  for (double dt : {1e-2, 5e-3, 2.5e-3}) err.push_back(testing::max_abs_difference(run(dt), ref));
  for (std::size_t i = 1; i < err.size(); ++i) CHECK(std::log2(err[i - 1] / err[i]) >= 1.9);
}

TEST_CASE("Evolve", "[solver]") {
  const Field u0 = gaussian(kGrid);

  SECTION("linear mass is conserved") {
    const auto traj = evolve(config(std::nullopt, 1e-2, 50.0, {10.0, 25.0, 50.0}), u0);
    REQUIRE(traj.size() == 3);
    for (const auto& s : traj.snapshots) {
      CHECK(integrate(s) == Approx(traj.initial_mass).epsilon(1e-12));
    }
    CHECK(traj.absorbed_mass == 0.0);
    CHECK(traj.at_time(25.0).time() == Approx(25.0));
    CHECK_THROWS_AS(traj.at_time(24.0), InvalidArgument);
  }

  SECTION("mass identity with absorption") {
    const auto traj = evolve(config(3.0, 1e-2, 20.0, {1.0, 5.0, 20.0}), u0);
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const double rhs = traj.initial_mass - traj.absorbed[i];
      CHECK(integrate(traj.snapshots[i]) == Approx(rhs).epsilon(1e-4));
      if (i > 0) CHECK(traj.absorbed[i] >= traj.absorbed[i - 1]);
    }
    CHECK(traj.absorbed_mass == traj.absorbed.back());
    for (const auto& s : traj.snapshots) CHECK(sup_norm(s) <= sup_norm(u0));
  }

  SECTION("absorbing solutions lie below the linear one") {
    const std::vector<double> ts{0.5, 2.0, 8.0};
    const auto u = evolve(config(3.0, 1e-2, 8.0, ts), u0);
    const auto uL = evolve(config(std::nullopt, 1e-2, 8.0, ts), u0);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      double worst = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < kGrid.size(); ++j) {
        worst = std::max(worst, u.snapshots[i][j] - uL.snapshots[i][j]);
      }
      CHECK(worst <= 1e-10);
    }
  }

  SECTION("comparison principle") {
    const Field v0 = gaussian(kGrid, 1.5);
    const std::vector<double> ts{1.0, 4.0};
    const auto u = evolve(config(2.0, 1e-2, 4.0, ts), u0);
    const auto v = evolve(config(2.0, 1e-2, 4.0, ts), v0);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      for (std::size_t j = 0; j < kGrid.size(); ++j) {
        REQUIRE(u.snapshots[i][j] <= v.snapshots[i][j] + 1e-10);
      }
    }
  }

  SECTION("snapshots land on requested times") {
    const auto traj = evolve(config(2.0, 0.3, 1.0, {0.0, 0.35, 1.0}), u0);
    REQUIRE(traj.size() == 3);
    CHECK(traj.snapshots[0].time() == 0.0);
    CHECK(traj.snapshots[1].time() == Approx(0.35).epsilon(1e-12));
    CHECK(traj.snapshots[2].time() == Approx(1.0).epsilon(1e-12));
    CHECK(testing::max_abs_difference(traj.snapshots[0], u0) == 0.0);
  }
}

TEST_CASE("Evolve rejects bad input", "[solver]") {
  const Field u0 = gaussian(kGrid);
  CHECK_THROWS_AS(evolve(config(1.0, 1e-2, 1.0, {1.0}), u0), InvalidArgument);
  CHECK_THROWS_AS(evolve(config(2.0, -1.0, 1.0, {1.0}), u0), InvalidArgument);
  CHECK_THROWS_AS(evolve(config(2.0, 1e-2, 1.0, {2.0}), u0), InvalidArgument);
  CHECK_THROWS_AS(evolve(config(2.0, 0.5, 1.0, {0.6, 0.8}), u0), InvalidArgument);
  CHECK_THROWS_AS(evolve(config(2.0, 1e-2, 1.0, {1.0}), Field(Grid(1, 512, 32.0))), GridMismatch);

  SolveConfig coarse = config(2.0, 1e-2, 1.0, {1.0});
  coarse.grid = Grid(1, 256, 32.0);
  CHECK_THROWS_AS(evolve(coarse, Field(coarse.grid)), UnderresolvedKernel);

  const Field huge = gaussian(kGrid, 1e308);
  CHECK_THROWS_AS(evolve(config(std::nullopt, 1e-2, 0.1, {0.1}), huge), NonfiniteState);
}

TEST_CASE("Linear solution through W", "[solver][fundamental]") {
  const Field u0 = indicator(kGrid);
  const Field via_w = linear_solution_via_w(kEpan, kGrid, u0, 2.0);
  const auto stepped = evolve(config(std::nullopt, 1e-3, 2.0, {2.0}), u0);
  CHECK(testing::max_abs_difference(via_w, stepped.snapshots.back()) <= 1e-6);
  CHECK(via_w.time() == Approx(2.0));

  const Field small = linear_solution_via_w(kEpan, kGrid, u0, 1e-9);
  CHECK(testing::max_abs_difference(small, u0) <= 1e-8);

  const Field c(kGrid, std::vector<double>(kGrid.size(), 3.0), 0.0);
  for (double t : {0.1, 10.0, 100.0}) {
    CHECK(testing::max_abs_difference(linear_solution_via_w(kEpan, kGrid, c, t), c) <= 1e-12);
  }

  const Field g0 = gaussian(kGrid);
  const auto lin = evolve(config(std::nullopt, 1e-2, 3.0, {3.0}), g0);
  CHECK(testing::max_abs_difference(linear_solution_via_w(kEpan, kGrid, g0, 3.0), lin.snapshots.back()) <=
        1e-8);
}
