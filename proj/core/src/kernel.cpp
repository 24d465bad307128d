#include "nldiff/kernel.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "nldiff/error.hpp"

namespace nldiff {

namespace {

using boost::math::quadrature::gauss_kronrod;

// Integral over [0, 1] of profile(s) s^power.
double radial_moment(KernelFamily family, int power) {
  auto integrand = [&](double s) { return KernelSpec::profile(family, s) * std::pow(s, power); };
  return gauss_kronrod<double, 61>::integrate(integrand, 0.0, 1.0, 15, 1e-15);
}

}  // namespace

std::string_view to_string(KernelFamily family) noexcept {
  switch (family) {
    case KernelFamily::bump:
      return "bump";
    case KernelFamily::epanechnikov:
      return "epanechnikov";
    case KernelFamily::quartic:
      return "quartic";
  }
  return "unknown";
}

KernelFamily parse_kernel_family(std::string_view name) {
  if (name == "bump") return KernelFamily::bump;
  if (name == "epanechnikov") return KernelFamily::epanechnikov;
  if (name == "quartic") return KernelFamily::quartic;
  throw InvalidArgument(fmt::format("unknown kernel family '{}'", name));
}

double unit_sphere_measure(int dimension) noexcept {
  return dimension == 1 ? 2.0 : 2.0 * std::numbers::pi;
}

double KernelSpec::profile(KernelFamily family, double s) noexcept {
  if (!(s < 1.0)) return 0.0;
  const double q = 1.0 - s * s;
  switch (family) {
    case KernelFamily::bump:
      return std::exp(-1.0 / q);
    case KernelFamily::epanechnikov:
      return q;
    case KernelFamily::quartic:
      return q * q;
  }
  return 0.0;
}

KernelSpec::KernelSpec(KernelFamily family, double support_radius, int dimension)
    : family_(family), radius_(support_radius), dimension_(dimension) {
  if (!(support_radius > 0.0) || !std::isfinite(support_radius)) {
    throw InvalidArgument(fmt::format("support_radius must be positive, got {}", support_radius));
  }
  if (dimension != 1 && dimension != 2) {
    throw InvalidArgument(fmt::format("kernel dimension must be 1 or 2, got {}", dimension));
  }
  const double mass = unit_sphere_measure(dimension) * std::pow(support_radius, dimension) *
                      radial_moment(family, dimension - 1);
  normalization_ = 1.0 / mass;
}

double KernelSpec::evaluate_radial(double r) const noexcept {
  return normalization_ * profile(family_, std::abs(r) / radius_);
}

double KernelSpec::evaluate(const Point& x) const noexcept {
  const double r = dimension_ == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]);
  return evaluate_radial(r);
}

double diffusivity(const KernelSpec& kernel) {
  const int N = kernel.dimension();
  const double second = kernel.normalization() * unit_sphere_measure(N) *
                        std::pow(kernel.support_radius(), N + 2) *
                        radial_moment(kernel.family(), N + 1);
  return second / (2.0 * N);
}

double points_per_radius(const KernelSpec& kernel, const Grid& grid) noexcept {
  return kernel.support_radius() / grid.spacing();
}

void require_resolved(const KernelSpec& kernel, const Grid& grid) {
  if (kernel.dimension() != grid.dimension()) {
    throw GridMismatch(fmt::format("kernel dimension {} does not match grid dimension {}",
                                   kernel.dimension(), grid.dimension()));
  }
  const double ppr = points_per_radius(kernel, grid);
  if (ppr < 16.0) {
    throw UnderresolvedKernel(
        fmt::format("kernel support spans {:.3g} grid points, at least 16 required", ppr));
  }
  if (kernel.support_radius() >= grid.half_length()) {
    throw DomainTooSmall(fmt::format("kernel support {} does not fit in half length {}",
                                     kernel.support_radius(), grid.half_length()));
  }
}

SpectralSymbol spectral_symbol(const KernelSpec& kernel, const Grid& grid) {
  require_resolved(kernel, grid);
  spectral::Workspace ws(grid);
  spectral::sample_periodic_offsets(grid, ws.real(),
                                    [&](const Point& x) { return kernel.evaluate(x); });
  ws.forward();
  auto spec = ws.spectrum();
  std::vector<double> values(spec.size());
  const double zero = spec[0].real();
  for (std::size_t s = 0; s < spec.size(); ++s) values[s] = spec[s].real() / zero;
  values[0] = 1.0;
  return SpectralSymbol(grid, std::move(values));
}

}  // namespace nldiff
