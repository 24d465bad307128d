#pragma once

#include <optional>
#include <string_view>

#include "nldiff/field.hpp"

namespace nldiff {

/// Initial-data families, named by the quantity that tends to A at infinity:
///   power_law                |x|^a u0              f = k^a
///   power_law_over_log       |x|^a / log|x| u0     f = k^a / log k
///   power_law_times_log      |x|^a log|x| u0       f = k^a log k
///   critical_power           |x|^N u0              f = k^N / log k
///   critical_power_over_log  |x|^N / log|x| u0     f = k^N / log^2 k
///   critical_power_times_log |x|^N log|x| u0       f = k^N / log log k
///   integrable               u0 in L^1             f = k^N
enum class FamilyKind {
  power_law,
  power_law_over_log,
  power_law_times_log,
  critical_power,
  critical_power_over_log,
  critical_power_times_log,
  integrable,
};

std::string_view to_string(FamilyKind kind) noexcept;
FamilyKind parse_family_kind(std::string_view name);

class ScalingFamily {
 public:
  /// alpha is required in (0, N) for the power_law kinds and ignored
  /// otherwise. Throws InvalidAlpha.
  ScalingFamily(FamilyKind kind, double A, double alpha, int dimension);

  /// Integrable family with a caller-provided datum.
  static ScalingFamily integrable(Field datum, double A = 1.0);

  FamilyKind kind() const noexcept { return kind_; }
  double amplitude() const noexcept { return A_; }
  /// Tail exponent: alpha for the power_law kinds, N otherwise.
  double alpha() const noexcept { return alpha_; }
  int dimension() const noexcept { return dimension_; }
  const std::optional<Field>& custom_datum() const noexcept { return datum_; }

  /// 1 + 2/alpha (or 1 + 2/N).
  double critical_exponent() const noexcept;
  /// Smallest k for which f(k) is defined and positive.
  double k_min() const noexcept;

  /// Value of the canonical representative at radius r.
  double representative(double r) const noexcept;

 private:
  FamilyKind kind_;
  double A_;
  double alpha_;
  int dimension_;
  std::optional<Field> datum_;
};

/// Canonical bounded representative sampled on the grid:
///   power_law                A (1+r^2)^{-a/2}
///   power_law_over_log       A (1+r^2)^{-a/2} log(e+r)
///   power_law_times_log      A (1+r^2)^{-a/2} / log(e+r)
///   critical_power           A r^{2N} / (1 + r^{3N})
///   critical_power_over_log  A r^{2N} log(e+r) / (1 + r^{3N})
///   critical_power_times_log A r^{2N} / ((1 + r^{3N}) log(e+r))
///   integrable               A * smooth step, 1 on |x| <= 3/4, 0 on |x| >= 5/4
/// or the custom datum of an integrable family.
Field representative_datum(const ScalingFamily& family, const Grid& grid);

/// f(k), F(k) = f(k)^{1-p} k^2 and c0 = lim F.
class ScalingLaw {
 public:
  ScalingLaw(FamilyKind kind, double exponent, int dimension, double p, double c0);

  double f(double k) const;
  double F(double k) const;
  /// f(k) / k^{beta} where beta is the tail exponent; 1 for pure powers.
  double log_factor(double k) const;
  double c0() const noexcept { return c0_; }
  double p() const noexcept { return p_; }
  double exponent() const noexcept { return beta_; }
  FamilyKind kind() const noexcept { return kind_; }
  double k_min() const noexcept;

 private:
  FamilyKind kind_;
  double beta_;
  int dimension_;
  double p_;
  double c0_;
};

/// Throws SubcriticalExponent when p is below the family's admissible range.
ScalingLaw scaling_law(const ScalingFamily& family, double p);

/// Measured C_delta = max over the log grid of f(k)/f(l), k0 <= k <= l/delta.
double f2_constant(const ScalingLaw& law, double delta, double k0, double k_max);

/// sup over nodes with |x| >= k_min of f(|x|) u0(x).
double f1_bound(const ScalingLaw& law, const Field& u0);

/// u^k(x, t) = f_k * fine(kx) sampled on target. fine.time() must equal k^2 t.
/// Throws DomainTooSmall when k * L_target > L_fine.
Field rescale_field(const Field& fine, double k, double f_k, const Grid& target,
                    double t);

/// F(k) of the rescaled equation u^k_t = k^2 L_k u^k - F(k) (u^k)^p.
/// Only used to audit the limit coefficient c0: u^k itself always comes from
/// rescale_field applied to a fine solve.
double rescaled_absorption_coefficient(const ScalingFamily& family, double p,
                                       double k);

/// Constant C with u0^k -> C delta for critical_power-type families and
/// integrable data, measured as (int_{B_k} u0) f(k) / k^N at large k.
double measured_delta_mass(const ScalingFamily& family, double k);

}  // namespace nldiff
