#include "nldiff/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include <fftw3.h>
#include <fmt/format.h>

#include "nldiff/error.hpp"

namespace nldiff {

SpectralSymbol::SpectralSymbol(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != spectral::spectrum_size(grid_)) {
    throw GridMismatch(fmt::format("symbol has {} entries, grid spectrum needs {}",
                                   values_.size(), spectral::spectrum_size(grid_)));
  }
}

double SpectralSymbol::min() const noexcept {
  return *std::min_element(values_.begin(), values_.end());
}

double SpectralSymbol::max() const noexcept {
  return *std::max_element(values_.begin(), values_.end());
}

namespace spectral {

std::size_t spectrum_size(const Grid& grid) noexcept {
  const std::size_t half = grid.points_per_axis() / 2 + 1;
  return grid.dimension() == 1 ? half : grid.points_per_axis() * half;
}

std::array<long, 2> mode_index(const Grid& grid, std::size_t s) noexcept {
  const auto n = static_cast<long>(grid.points_per_axis());
  if (grid.dimension() == 1) return {static_cast<long>(s), 0};
  const auto half = static_cast<std::size_t>(n / 2 + 1);
  auto a = static_cast<long>(s / half);
  if (a > n / 2) a -= n;
  return {a, static_cast<long>(s % half)};
}

Point wavenumber(const Grid& grid, std::size_t s) noexcept {
  const double scale = std::numbers::pi / grid.half_length();
  const auto j = mode_index(grid, s);
  return {scale * static_cast<double>(j[0]), scale * static_cast<double>(j[1])};
}

bool is_nyquist(const Grid& grid, std::size_t s, int axis) noexcept {
  const auto n = static_cast<long>(grid.points_per_axis());
  const auto j = mode_index(grid, s);
  if (grid.dimension() == 1) return axis == 0 && j[0] == n / 2;
  return std::abs(j[axis]) == n / 2;
}

namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

class PlanRegistry {
 public:
  static PlanRegistry& instance() {
    static PlanRegistry registry;
    return registry;
  }

  PlanPair get(const Grid& grid) {
    const std::pair<int, std::size_t> key{grid.dimension(), grid.points_per_axis()};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    const int n = static_cast<int>(grid.points_per_axis());
    auto* real = fftw_alloc_real(grid.size());
    auto* spec = fftw_alloc_complex(spectrum_size(grid));
    PlanPair pair;
    if (grid.dimension() == 1) {
      pair.forward = fftw_plan_dft_r2c_1d(n, real, spec, FFTW_ESTIMATE);
      pair.inverse = fftw_plan_dft_c2r_1d(n, spec, real, FFTW_ESTIMATE);
    } else {
      pair.forward = fftw_plan_dft_r2c_2d(n, n, real, spec, FFTW_ESTIMATE);
      pair.inverse = fftw_plan_dft_c2r_2d(n, n, spec, real, FFTW_ESTIMATE);
    }
    fftw_free(real);
    fftw_free(spec);
    if (pair.forward == nullptr || pair.inverse == nullptr) {
      throw Error("FFTW plan creation failed");
    }
    plans_.emplace(key, pair);
    return pair;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, std::size_t>, PlanPair> plans_;
};

}  // namespace

struct Workspace::Impl {
  Grid grid;
  PlanPair plans;
  double* real = nullptr;
  fftw_complex* spec = nullptr;

  explicit Impl(const Grid& g) : grid(g), plans(PlanRegistry::instance().get(g)) {
    real = fftw_alloc_real(grid.size());
    spec = fftw_alloc_complex(spectrum_size(grid));
    if (real == nullptr || spec == nullptr) throw Error("FFTW allocation failed");
  }
  ~Impl() {
    fftw_free(real);
    fftw_free(spec);
  }
};

Workspace::Workspace(const Grid& grid) : impl_(std::make_unique<Impl>(grid)) {}
Workspace::~Workspace() = default;
Workspace::Workspace(Workspace&&) noexcept = default;
Workspace& Workspace::operator=(Workspace&&) noexcept = default;

const Grid& Workspace::grid() const noexcept { return impl_->grid; }

std::span<double> Workspace::real() noexcept {
  return {impl_->real, impl_->grid.size()};
}

std::span<std::complex<double>> Workspace::spectrum() noexcept {
  return {reinterpret_cast<std::complex<double>*>(impl_->spec),
          spectrum_size(impl_->grid)};
}

void Workspace::forward() { fftw_execute_dft_r2c(impl_->plans.forward, impl_->real, impl_->spec); }

void Workspace::inverse() {
  fftw_execute_dft_c2r(impl_->plans.inverse, impl_->spec, impl_->real);
  const double scale = 1.0 / static_cast<double>(impl_->grid.size());
  for (auto& v : real()) v *= scale;
}

std::span<std::complex<double>> Workspace::forward(std::span<const double> in) {
  if (in.size() != impl_->grid.size()) {
    throw GridMismatch(fmt::format("input has {} values, grid has {}", in.size(),
                                   impl_->grid.size()));
  }
  std::copy(in.begin(), in.end(), real().begin());
  forward();
  return spectrum();
}

void apply_multiplier(Workspace& ws, std::span<double> u,
                      std::span<const double> multiplier) {
  auto spec = ws.forward(u);
  if (multiplier.size() != spec.size()) {
    throw GridMismatch(fmt::format("multiplier has {} entries, spectrum has {}",
                                   multiplier.size(), spec.size()));
  }
  for (std::size_t s = 0; s < spec.size(); ++s) spec[s] *= multiplier[s];
  ws.inverse();
  auto r = ws.real();
  std::copy(r.begin(), r.end(), u.begin());
}

}  // namespace spectral
}  // namespace nldiff
