#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nldiff/field.hpp"

namespace nldiff {

/// Time-ordered snapshots of one run with its absorption ledger.
///
/// absorbed[i] is A(t_i) = int_0^{t_i} int u^p dx ds accumulated by the
/// trapezoid rule on step endpoints; the mass identity reads
/// int u(t_i) = initial_mass - absorption_coefficient * absorbed[i].
struct Trajectory {
  std::vector<Field> snapshots;
  std::vector<double> absorbed;
  double initial_mass = 0.0;
  double absorbed_mass = 0.0;  ///< A(t_end)
  double absorption_coefficient = 1.0;
  std::optional<double> p;

  // Diagnostics of the clamp applied to ringing-induced negative values
  // before each absorption substep.
  double max_clamp = 0.0;
  std::size_t clamp_events = 0;
  std::size_t steps = 0;

  const Field& at(std::size_t i) const { return snapshots.at(i); }
  std::size_t size() const noexcept { return snapshots.size(); }
  /// Snapshot whose time matches t within 1e-9 relative; throws
  /// InvalidArgument when none does.
  const Field& at_time(double t) const;
};

}  // namespace nldiff
