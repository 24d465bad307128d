#include "nldiff/rescaling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "nldiff/error.hpp"
#include "nldiff/kernel.hpp"

namespace nldiff {

namespace {

constexpr double kExponentTolerance = 1e-12;

bool power_kind(FamilyKind kind) {
  return kind == FamilyKind::power_law || kind == FamilyKind::power_law_over_log ||
         kind == FamilyKind::power_law_times_log;
}

double smooth_step(double z) {
  if (z <= 0.0) return 0.0;
  if (z >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / z);
  const double b = std::exp(-1.0 / (1.0 - z));
  return a / (a + b);
}

double k_min_of(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::power_law:
    case FamilyKind::integrable:
      return 1.0;
    case FamilyKind::critical_power_times_log:
      return std::exp(std::numbers::e);
    default:
      return std::numbers::e;
  }
}

}  // namespace

std::string_view to_string(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::power_law:
      return "power_law";
    case FamilyKind::power_law_over_log:
      return "power_law_over_log";
    case FamilyKind::power_law_times_log:
      return "power_law_times_log";
    case FamilyKind::critical_power:
      return "critical_power";
    case FamilyKind::critical_power_over_log:
      return "critical_power_over_log";
    case FamilyKind::critical_power_times_log:
      return "critical_power_times_log";
    case FamilyKind::integrable:
      return "integrable";
  }
  return "unknown";
}

FamilyKind parse_family_kind(std::string_view name) {
  for (auto kind : {FamilyKind::power_law, FamilyKind::power_law_over_log,
                    FamilyKind::power_law_times_log, FamilyKind::critical_power,
                    FamilyKind::critical_power_over_log, FamilyKind::critical_power_times_log,
                    FamilyKind::integrable}) {
    if (to_string(kind) == name) return kind;
  }
  throw InvalidArgument(fmt::format("unknown family kind '{}'", name));
}

ScalingFamily::ScalingFamily(FamilyKind kind, double A, double alpha, int dimension)
    : kind_(kind), A_(A), alpha_(alpha), dimension_(dimension) {
  if (dimension != 1 && dimension != 2) {
    throw InvalidArgument(fmt::format("family dimension must be 1 or 2, got {}", dimension));
  }
  if (!(A > 0.0) || !std::isfinite(A)) {
    throw InvalidArgument(fmt::format("amplitude A must be positive, got {}", A));
  }
  if (power_kind(kind)) {
    if (!(alpha > 0.0) || !(alpha < dimension)) {
      throw InvalidAlpha(fmt::format("{} needs 0 < alpha < {}, got {}", to_string(kind),
                                     dimension, alpha));
    }
  } else {
    alpha_ = dimension;
  }
}

ScalingFamily ScalingFamily::integrable(Field datum, double A) {
  ScalingFamily family(FamilyKind::integrable, A, 0.0, datum.grid().dimension());
  family.datum_ = std::move(datum);
  return family;
}

double ScalingFamily::critical_exponent() const noexcept { return 1.0 + 2.0 / alpha_; }

double ScalingFamily::k_min() const noexcept { return k_min_of(kind_); }

double ScalingFamily::representative(double r) const noexcept {
  r = std::abs(r);
  const double N = dimension_;
  const double log_e = std::log(std::numbers::e + r);
  switch (kind_) {
    case FamilyKind::power_law:
      return A_ * std::pow(1.0 + r * r, -0.5 * alpha_);
    case FamilyKind::power_law_over_log:
      return A_ * std::pow(1.0 + r * r, -0.5 * alpha_) * log_e;
    case FamilyKind::power_law_times_log:
      return A_ * std::pow(1.0 + r * r, -0.5 * alpha_) / log_e;
    case FamilyKind::critical_power:
      return A_ * std::pow(r, 2.0 * N) / (1.0 + std::pow(r, 3.0 * N));
    case FamilyKind::critical_power_over_log:
      return A_ * std::pow(r, 2.0 * N) * log_e / (1.0 + std::pow(r, 3.0 * N));
    case FamilyKind::critical_power_times_log:
      return A_ * std::pow(r, 2.0 * N) / ((1.0 + std::pow(r, 3.0 * N)) * log_e);
    case FamilyKind::integrable:
      return A_ * smooth_step((1.25 - r) / 0.5);
  }
  return 0.0;
}

Field representative_datum(const ScalingFamily& family, const Grid& grid) {
  if (family.dimension() != grid.dimension()) {
    throw GridMismatch(fmt::format("family dimension {} does not match grid dimension {}",
                                   family.dimension(), grid.dimension()));
  }
  if (const auto& custom = family.custom_datum()) {
    if (!(custom->grid() == grid)) throw GridMismatch("integrable datum lives on another grid");
    Field out = *custom;
    out.set_time(0.0);
    return out;
  }
  Field out(grid, 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = family.representative(grid.radius(i));
  return out;
}

ScalingLaw::ScalingLaw(FamilyKind kind, double exponent, int dimension, double p, double c0)
    : kind_(kind), beta_(exponent), dimension_(dimension), p_(p), c0_(c0) {}

double ScalingLaw::k_min() const noexcept { return k_min_of(kind_); }

double ScalingLaw::log_factor(double k) const {
  switch (kind_) {
    case FamilyKind::power_law:
    case FamilyKind::integrable:
      return 1.0;
    case FamilyKind::power_law_over_log:
    case FamilyKind::critical_power:
      return 1.0 / std::log(k);
    case FamilyKind::power_law_times_log:
      return std::log(k);
    case FamilyKind::critical_power_over_log: {
      const double l = std::log(k);
      return 1.0 / (l * l);
    }
    case FamilyKind::critical_power_times_log:
      return 1.0 / std::log(std::log(k));
  }
  return 1.0;
}

double ScalingLaw::f(double k) const { return std::pow(k, beta_) * log_factor(k); }

double ScalingLaw::F(double k) const {
  return std::exp((2.0 - beta_ * (p_ - 1.0)) * std::log(k) +
                  (1.0 - p_) * std::log(log_factor(k)));
}

ScalingLaw scaling_law(const ScalingFamily& family, double p) {
  if (!(p > 1.0)) throw SubcriticalExponent(fmt::format("p must exceed 1, got {}", p));
  const double pc = family.critical_exponent();
  const bool at_critical = std::abs(p - pc) <= kExponentTolerance * pc;
  const bool below = p < pc && !at_critical;
  auto reject = [&](std::string_view need) {
    return SubcriticalExponent(fmt::format("{} requires p {} {}, got {}",
                                           to_string(family.kind()), need, pc, p));
  };
  double c0 = 0.0;
  switch (family.kind()) {
    case FamilyKind::power_law:
    case FamilyKind::integrable:
      if (below) throw reject(">=");
      c0 = at_critical ? 1.0 : 0.0;
      break;
    case FamilyKind::power_law_times_log:
      if (below) throw reject(">=");
      break;
    case FamilyKind::power_law_over_log:
    case FamilyKind::critical_power:
    case FamilyKind::critical_power_over_log:
    case FamilyKind::critical_power_times_log:
      if (below || at_critical) throw reject(">");
      break;
  }
  return ScalingLaw(family.kind(), family.alpha(), family.dimension(), p, c0);
}

double f2_constant(const ScalingLaw& law, double delta, double k0, double k_max) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidArgument(fmt::format("delta must lie in (0, 1), got {}", delta));
  }
  k0 = std::max(k0, law.k_min());
  if (!(k_max > k0)) throw InvalidArgument("f2_constant needs k_max > k0");
  constexpr int kSamples = 200;
  const double step = std::log(k_max / k0) / (kSamples - 1);
  double C = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double k = k0 * std::exp(step * i);
    const double fk = law.f(k);
    for (int j = 0; j < kSamples; ++j) {
      const double l = k0 * std::exp(step * j);
      if (k > l / delta) continue;
      C = std::max(C, fk / law.f(l));
    }
  }
  return C;
}

double f1_bound(const ScalingLaw& law, const Field& u0) {
  const double r_min = law.k_min();
  double B = 0.0;
  for (std::size_t i = 0; i < u0.size(); ++i) {
    const double r = u0.grid().radius(i);
    if (r < r_min) continue;
    B = std::max(B, law.f(r) * u0[i]);
  }
  return B;
}

Field rescale_field(const Field& fine, double k, double f_k, const Grid& target, double t) {
  if (!(k > 0.0)) throw InvalidArgument(fmt::format("k must be positive, got {}", k));
  if (fine.grid().dimension() != target.dimension()) {
    throw GridMismatch("rescale_field: dimensions differ");
  }
  const double expected = k * k * t;
  if (std::abs(fine.time() - expected) > 1e-9 * std::max(1.0, expected)) {
    throw InvalidArgument(fmt::format("fine field is at t = {}, expected k^2 t = {}",
                                      fine.time(), expected));
  }
  const double reach = k * target.half_length();
  if (reach > fine.grid().half_length() * (1.0 + 1e-12)) {
    throw DomainTooSmall(fmt::format("k * L_target = {} exceeds fine half length {}", reach,
                                     fine.grid().half_length()));
  }
  const double L = fine.grid().half_length();
  Field out(target, t);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Point x = target.point(i);
    Point y{std::max(k * x[0], -L), std::max(k * x[1], -L)};
    out[i] = f_k * interpolate(fine, y);
  }
  return out;
}

double rescaled_absorption_coefficient(const ScalingFamily& family, double p, double k) {
  return scaling_law(family, p).F(k);
}

double measured_delta_mass(const ScalingFamily& family, double k) {
  using boost::math::quadrature::gauss_kronrod;
  if (!(k > family.k_min())) {
    throw InvalidArgument(fmt::format("k must exceed {}, got {}", family.k_min(), k));
  }
  const int N = family.dimension();
  double ball = 0.0;
  if (const auto& custom = family.custom_datum()) {
    ball = integrate(*custom, k);
  } else {
    auto integrand = [&](double r) { return family.representative(r) * std::pow(r, N - 1); };
    double a = 0.0;
    double b = std::min(1.0, k);
    while (a < k) {
      ball += gauss_kronrod<double, 61>::integrate(integrand, a, b, 15, 1e-13);
      a = b;
      b = std::min(10.0 * b, k);
    }
    ball *= unit_sphere_measure(N);
  }
  const ScalingLaw law(family.kind(), family.alpha(), N, 2.0, 0.0);
  return ball * law.f(k) / std::pow(k, N);
}

}  // namespace nldiff
