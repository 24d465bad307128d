#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nldiff/grid.hpp"
#include "nldiff/kernel.hpp"
#include "nldiff/rescaling.hpp"

namespace nldiff::cli {

/// Invalid configuration; path names the offending field ("grid.points_per_axis").
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct WSettings {
  std::vector<double> t_list;
  double K = 4.0;
  double min_radius_factor = 2.0;
  double t = 1.0;
};

enum class LimitDatumKind { automatic, power_law, point_source };

struct LimitSettings {
  LimitDatumKind datum = LimitDatumKind::automatic;
  std::optional<double> c0;    ///< default: from the family's scaling law
  std::optional<double> mass;  ///< point-source mass; default measured
};

struct ExperimentConfig {
  KernelSpec kernel;
  Grid grid;
  ScalingFamily family;
  std::optional<double> p;
  double dt;
  double t_end;
  std::vector<double> snapshot_times;
  std::vector<double> k_ladder;
  double window_R;
  std::string output_dir;
  WSettings w;
  LimitSettings limit;

  /// Canonical JSON the config was built from (after overrides).
  nlohmann::json document;
  /// FNV-1a 64-bit digest of document.dump(), as 16 hex digits.
  std::string hash;
};

/// Built-in configuration used when no file is given.
nlohmann::json default_document();

/// Applies "a.b.c=value" overrides; value is parsed as JSON when possible and
/// taken as a string otherwise.
void apply_override(nlohmann::json& doc, const std::string& assignment);

/// Validates every field and the cross-field rules of the library types.
ExperimentConfig parse_config(const nlohmann::json& doc);

ExperimentConfig load_config(const std::optional<std::filesystem::path>& path,
                             const std::vector<std::string>& overrides);

std::string fnv1a_hex(const std::string& text);

}  // namespace nldiff::cli
