#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nldiff/error.hpp"
#include "nldiff/field.hpp"
#include "nldiff/kernel.hpp"
#include "oracles.hpp"

using namespace nldiff;
using Catch::Approx;

namespace {

const KernelFamily kFamilies[] = {KernelFamily::bump, KernelFamily::epanechnikov,
                                  KernelFamily::quartic};

double riemann_mass(const KernelSpec& k, double points_per_radius) {
  const double dx = k.support_radius() / points_per_radius;
  const double L = 4.0 * k.support_radius();
  const auto n = static_cast<std::size_t>(std::llround(2.0 * L / dx));
  std::size_t m = 256;
  while (m < n) m *= 2;
  const Grid g(k.dimension(), m, 0.5 * static_cast<double>(m) * dx);
  return integrate(Field::sample(g, [&](const Point& x) { return k.evaluate(x); }));
}

}  // namespace

TEST_CASE("Kernel evaluation", "[kernel]") {
  const KernelSpec epan(KernelFamily::epanechnikov, 1.0, 1);
  CHECK(epan.evaluate({0.0, 0.0}) == Approx(0.75).epsilon(1e-14));
  for (auto family : kFamilies) {
    for (int N : {1, 2}) {
      const KernelSpec k(family, 1.5, N);
      CHECK(k.evaluate({3.0, 0.0}) == 0.0);
      CHECK(k.evaluate({1.5, 0.0}) == 0.0);
      CHECK(k.evaluate({0.3, 0.4}) == k.evaluate_radial(N == 1 ? 0.3 : 0.5));
      CHECK(k.evaluate({0.2, 0.0}) >= 0.0);
    }
  }
  const KernelSpec bump(KernelFamily::bump, 1.0, 1);
  CHECK(bump.evaluate_radial(1.0 - 1e-3) < 1e-200);
  CHECK(bump.evaluate_radial(0.999) <= bump.evaluate_radial(0.99));
  CHECK_THROWS_AS(KernelSpec(KernelFamily::bump, -1.0, 1), InvalidArgument);
  CHECK_THROWS_AS(KernelSpec(KernelFamily::bump, 1.0, 3), InvalidArgument);
  CHECK(parse_kernel_family("quartic") == KernelFamily::quartic);
  CHECK_THROWS_AS(parse_kernel_family("gauss"), InvalidArgument);
}

TEST_CASE("Kernels have unit mass", "[kernel]") {
  using boost::math::quadrature::gauss_kronrod;
  for (auto family : kFamilies) {
    for (int N : {1, 2}) {
      const KernelSpec k(family, 1.7, N);
      auto radial = [&](double r) { return k.evaluate_radial(r) * std::pow(r, N - 1); };
      const double mass = unit_sphere_measure(N) *
                          gauss_kronrod<double, 61>::integrate(radial, 0.0, 1.7, 20, 1e-15);
      CHECK(std::abs(mass - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("Diffusivity", "[kernel]") {
  CHECK(diffusivity(KernelSpec(KernelFamily::epanechnikov, 1.0, 1)) == Approx(0.1).epsilon(1e-10));

  const KernelSpec quartic(KernelFamily::quartic, 1.0, 2);
  CHECK(diffusivity(quartic) == Approx(testing::riemann_diffusivity(quartic, 4096)).epsilon(1e-6));

  for (auto family : kFamilies) {
    for (int N : {1, 2}) {
      const double a = diffusivity(KernelSpec(family, 1.0, N));
      for (double k : {2.0, 4.0}) {
        CHECK(diffusivity(KernelSpec(family, 1.0 / k, N)) == Approx(a / (k * k)).epsilon(1e-10));
      }
    }
  }
  CHECK(diffusivity(KernelSpec(KernelFamily::bump, 1e-4, 1)) < 1e-8);
}

TEST_CASE("Discrete kernel mass converges under refinement", "[kernel]") {
  // The unnormalized Riemann sum at the 16-point floor is not exact; the
  // symbol renormalization absorbs the difference.
  for (auto family : kFamilies) {
    for (int N : {1, 2}) {
      const KernelSpec k(family, 1.0, N);
      const double e16 = std::abs(riemann_mass(k, 16.0) - 1.0);
      const double e32 = std::abs(riemann_mass(k, 32.0) - 1.0);
      CHECK(e16 < 2e-3);
      CHECK(e32 < e16);
    }
  }
  const KernelSpec bump(KernelFamily::bump, 1.0, 1);
  CHECK(std::abs(riemann_mass(bump, 128.0) - 1.0) <= 1e-10);
}

TEST_CASE("Spectral symbol", "[kernel][spectral]") {
  const KernelSpec epan(KernelFamily::epanechnikov, 1.0, 1);
  const Grid g(1, 1 << 14, 4.0);
  const auto symbol = spectral_symbol(epan, g);
  CHECK(symbol[0] == 1.0);
  CHECK(symbol.min() >= -1.0);
  CHECK(symbol.max() <= 1.0);
  double err = 0.0;
  for (std::size_t s = 0; s < symbol.size(); s += 7) {
    const double xi = spectral::wavenumber(g, s)[0];
    err = std::max(err, std::abs(symbol[s] - testing::epanechnikov_transform(xi)));
  }
  CHECK(err <= 1e-6);
  for (std::size_t s = 1; s < symbol.size(); ++s) CHECK(symbol[s] < 1.0);

  const Grid g2(2, 256, 8.0);
  const auto s2 = spectral_symbol(KernelSpec(KernelFamily::quartic, 1.0, 2), g2);
  CHECK(s2[0] == 1.0);
  CHECK(s2.min() >= -1.0);
  // Evenness in the first axis: rows j and n - j agree.
  const std::size_t half = 256 / 2 + 1;
  double asym = 0.0;
  for (std::size_t j = 1; j < 128; ++j) {
    for (std::size_t c = 0; c < half; ++c) {
      asym = std::max(asym, std::abs(s2[j * half + c] - s2[(256 - j) * half + c]));
    }
  }
  CHECK(asym < 1e-14);
  // Evenness across axes.
  CHECK(s2[3 * half + 5] == Approx(s2[5 * half + 3]).margin(1e-14));
}

TEST_CASE("Underresolved kernels are rejected", "[kernel]") {
  const KernelSpec k(KernelFamily::bump, 1.0, 1);
  CHECK_THROWS_AS(spectral_symbol(k, Grid(1, 256, 16.0)), UnderresolvedKernel);
  CHECK_NOTHROW(spectral_symbol(k, Grid(1, 256, 8.0)));
  CHECK_THROWS_AS(spectral_symbol(k, Grid(2, 256, 8.0)), GridMismatch);
  CHECK(points_per_radius(k, Grid(1, 256, 8.0)) == 16.0);
}
