#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include <fmt/format.h>

#include "nldiff/error.hpp"

namespace nldiff::detail {

/// Stretch of uniform steps between two consecutive stopping times.
struct Segment {
  double t_start = 0.0;
  double t_end = 0.0;
  double h = 0.0;
  std::size_t steps = 0;
  bool record = false;
};

struct SegmentPlan {
  bool record_start = false;
  std::vector<Segment> segments;
};

inline bool same_time(double a, double b) noexcept {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

inline void validate_snapshot_times(std::span<const double> times, double t_end, double dt) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    if (!(t >= 0.0) || !(t <= t_end * (1.0 + 1e-12))) {
      throw InvalidArgument(fmt::format("snapshot time {} outside [0, {}]", t, t_end));
    }
    if (i > 0) {
      const double gap = t - times[i - 1];
      if (!(gap > 0.0)) throw InvalidArgument("snapshot_times must be strictly increasing");
      if (gap < dt * (1.0 - 1e-9)) {
        throw InvalidArgument(
            fmt::format("dt = {} exceeds the snapshot spacing {} near t = {}", dt, gap, t));
      }
    }
  }
}

/// Each segment uses the smallest number of equal steps of size <= dt.
inline SegmentPlan plan_segments(double t0, double t_end, double dt,
                                 std::span<const double> snapshot_times) {
  SegmentPlan plan;
  std::vector<std::pair<double, bool>> stops;
  for (double t : snapshot_times) {
    if (same_time(t, t0)) {
      plan.record_start = true;
    } else if (t > t0) {
      stops.emplace_back(t, true);
    }
  }
  if (t_end > t0 && !same_time(t_end, t0) &&
      (stops.empty() || !same_time(stops.back().first, t_end))) {
    stops.emplace_back(t_end, false);
  }
  double start = t0;
  for (const auto& [stop, record] : stops) {
    const double gap = stop - start;
    const auto steps =
        static_cast<std::size_t>(std::max(1.0, std::ceil(gap / dt - 1e-9)));
    plan.segments.push_back({start, stop, gap / static_cast<double>(steps), steps, record});
    start = stop;
  }
  return plan;
}

/// Per-step-size cache of spectral multipliers.
class MultiplierCache {
 public:
  explicit MultiplierCache(std::function<std::vector<double>(double)> make)
      : make_(std::move(make)) {}

  const std::vector<double>& get(double h) {
    auto it = cache_.find(h);
    if (it == cache_.end()) it = cache_.emplace(h, make_(h)).first;
    return it->second;
  }

 private:
  std::function<std::vector<double>(double)> make_;
  std::map<double, std::vector<double>> cache_;
};

}  // namespace nldiff::detail
