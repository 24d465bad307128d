#pragma once

#include <span>
#include <vector>

#include "nldiff/field.hpp"
#include "nldiff/kernel.hpp"

namespace nldiff {

/// Smooth part W of the fundamental solution e^{-t} delta + W of
/// u_t = J*u - u, sampled at time t.
struct WEvaluation {
  Field field;
  KernelSpec kernel;
  double t;
};

/// Per-frequency value of W: exp(t (Jhat - 1)) - exp(-t).
double w_multiplier(double symbol, double t) noexcept;
/// Per-frequency value of W_t: (Jhat - 1) What + exp(-t) Jhat.
double wt_multiplier(double symbol, double t) noexcept;

/// W(., t) centred on the grid origin. Throws UnderresolvedKernel, and
/// InvalidArgument for t <= 0.
WEvaluation w_field(const KernelSpec& kernel, const Grid& grid, double t);

/// Spectral gradient of W, one field per axis.
std::vector<Field> grad_w_field(const KernelSpec& kernel, const Grid& grid, double t);

/// Time derivative W_t.
Field wt_field(const KernelSpec& kernel, const Grid& grid, double t);

/// Region {|x| >= K sqrt(t)} ∩ {|x| >= min_radius_factor * R_J}.
struct ExclusionRegion {
  double min_radius_factor = 2.0;
  double K = 4.0;
};

struct BarrierSample {
  double t = 0.0;
  double mass = 0.0;      ///< integral of W
  double sup = 0.0;       ///< sup of W
  double c_w = 0.0;       ///< sup_A W |x|^{N+2} / t
  double c_grad = 0.0;    ///< sup_A |grad W| |x|^{N+3} / t
  double c_t = 0.0;       ///< sup_A (|W_t| - e^{-t} J)_+ (1+|x|)^{N+4} / t
  double l1_grad = 0.0;   ///< ||grad W||_1
  double l1_wt = 0.0;     ///< ||W_t||_1
  double g1 = 0.0;        ///< ||grad W||_1 * max(sqrt(t), 1/t)
  double t1 = 0.0;        ///< ||W_t||_1 * max(t, 1/(e^{-t} + t))
};

struct BarrierReport {
  std::vector<BarrierSample> samples;  ///< ordered by t

  double max_c_w() const;
  double max_c_grad() const;
  double max_c_t() const;
  double max_g1() const;
  double max_t1() const;

  /// max/min over samples of the given member.
  double spread(double BarrierSample::*member) const;
};

/// Measures the barrier constants at each t of an increasing, nonempty list.
/// Throws EmptyExclusionRegion when the region misses the grid for some t.
BarrierReport barrier_report(const KernelSpec& kernel, const Grid& grid,
                             std::span<const double> t_list,
                             ExclusionRegion exclusion = {});

}  // namespace nldiff
