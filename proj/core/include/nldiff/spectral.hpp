#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "nldiff/grid.hpp"

namespace nldiff {

/// Real multiplier sampled on the half-spectrum of a Grid (the r2c layout:
/// n^(N-1) * (n/2 + 1) entries, last axis truncated).
class SpectralSymbol {
 public:
  SpectralSymbol(Grid grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  double min() const noexcept;
  double max() const noexcept;

 private:
  Grid grid_;
  std::vector<double> values_;
};

namespace spectral {

/// Number of complex modes in the half-spectrum of the grid.
std::size_t spectrum_size(const Grid& grid) noexcept;

/// Signed integer frequency index along each axis of half-spectrum entry s.
std::array<long, 2> mode_index(const Grid& grid, std::size_t s) noexcept;

/// Angular wavenumber (rad / length) of half-spectrum entry s.
Point wavenumber(const Grid& grid, std::size_t s) noexcept;

/// True when entry s sits on the Nyquist plane of the given axis.
bool is_nyquist(const Grid& grid, std::size_t s, int axis) noexcept;

/// Scratch buffers bound to a cached FFTW plan pair for one grid.
///
/// Plans are shared through a process-wide registry; a Workspace owns only
/// its buffers, so independent workspaces may run on different threads.
class Workspace {
 public:
  explicit Workspace(const Grid& grid);
  ~Workspace();
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;
  Workspace(Workspace&&) noexcept;
  Workspace& operator=(Workspace&&) noexcept;

  const Grid& grid() const noexcept;

  std::span<double> real() noexcept;
  std::span<std::complex<double>> spectrum() noexcept;

  /// real() -> spectrum(), unnormalized.
  void forward();
  /// spectrum() -> real(), divided by n^N so that inverse(forward(u)) == u.
  /// The spectrum buffer is clobbered.
  void inverse();

  /// Convenience: copy `in` to real() and transform.
  std::span<std::complex<double>> forward(std::span<const double> in);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// u <- IFFT(multiplier * FFT(u)) in place.
void apply_multiplier(Workspace& ws, std::span<double> u,
                      std::span<const double> multiplier);

/// Writes FFT of a kernel sampled around node 0 (the periodic origin):
/// sample[j] = fn(periodic offset of node j).
template <class Fn>
void sample_periodic_offsets(const Grid& grid, std::span<double> out, Fn&& fn) {
  const std::size_t n = grid.points_per_axis();
  const double dx = grid.spacing();
  auto offset = [&](std::size_t j) {
    return j < n / 2 ? static_cast<double>(j) * dx
                     : (static_cast<double>(j) - static_cast<double>(n)) * dx;
  };
  if (grid.dimension() == 1) {
    for (std::size_t j = 0; j < n; ++j) out[j] = fn(Point{offset(j), 0.0});
  } else {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        out[a * n + b] = fn(Point{offset(a), offset(b)});
      }
    }
  }
}

}  // namespace spectral
}  // namespace nldiff
