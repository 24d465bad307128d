#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <fmt/format.h>

#include "nldiff/error.hpp"

namespace nldiff::cli {

using nlohmann::json;

json default_document() {
  return json::parse(R"({
    "kernel": {"family": "epanechnikov", "support_radius": 1.0, "dimension": 1},
    "grid": {"points_per_axis": 8192, "half_length": 256.0},
    "family": {"kind": "power_law", "A": 1.0, "alpha": 0.5},
    "p": 5.0,
    "dt": 0.05,
    "t_end": 256.0,
    "snapshot_times": [1.0, 4.0, 16.0, 64.0, 256.0],
    "k_ladder": [2.0, 4.0, 8.0, 16.0],
    "window_R": 2.0,
    "output_dir": "nldiff_out",
    "w": {"t_list": [1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0], "K": 4.0,
          "min_radius_factor": 2.0, "t": 5.0},
    "limit": {"datum": "auto", "c0": null, "mass": null}
  })");
}

namespace {

// Objects merge key by key; any other value (including null) replaces.
void merge_into(json& base, const json& patch, const std::string& path) {
  if (!patch.is_object()) {
    base = patch;
    return;
  }
  if (!base.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    const std::string child = path.empty() ? it.key() : path + "." + it.key();
    if (!base.contains(it.key())) throw ConfigError(child, "unknown key");
    if (base[it.key()].is_object()) {
      merge_into(base[it.key()], it.value(), child);
    } else {
      base[it.key()] = it.value();
    }
  }
}

const json& at(const json& doc, const std::string& path) {
  const json* node = &doc;
  std::size_t start = 0;
  while (start <= path.size()) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!node->is_object() || !node->contains(key)) throw ConfigError(path, "missing");
    node = &(*node)[key];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return *node;
}

double number(const json& doc, const std::string& path) {
  const json& v = at(doc, path);
  if (!v.is_number()) throw ConfigError(path, fmt::format("expected a number, got {}", v.dump()));
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
  return x;
}

double positive(const json& doc, const std::string& path) {
  const double x = number(doc, path);
  if (!(x > 0.0)) throw ConfigError(path, fmt::format("must be positive, got {}", x));
  return x;
}

std::optional<double> optional_number(const json& doc, const std::string& path) {
  if (at(doc, path).is_null()) return std::nullopt;
  return number(doc, path);
}

std::string text(const json& doc, const std::string& path) {
  const json& v = at(doc, path);
  if (!v.is_string()) throw ConfigError(path, fmt::format("expected a string, got {}", v.dump()));
  return v.get<std::string>();
}

std::vector<double> increasing_list(const json& doc, const std::string& path) {
  const json& v = at(doc, path);
  if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string item = fmt::format("{}[{}]", path, i);
    if (!v[i].is_number()) throw ConfigError(item, "expected a number");
    out.push_back(v[i].get<double>());
    if (!std::isfinite(out.back())) throw ConfigError(item, "must be finite");
    if (i > 0 && !(out[i] > out[i - 1])) throw ConfigError(item, "list must be strictly increasing");
  }
  return out;
}

template <class Fn>
auto wrap(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
}

}  // namespace

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError(assignment, "override must have the form key=value");
  }
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value = json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;

  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!node->is_object() || !node->contains(key)) throw ConfigError(path, "unknown key");
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

ExperimentConfig parse_config(const json& doc) {
  const auto family_name = text(doc, "kernel.family");
  const auto kernel_family = wrap("kernel.family", [&] { return parse_kernel_family(family_name); });
  const double support = positive(doc, "kernel.support_radius");
  const double dim_value = number(doc, "kernel.dimension");
  if (dim_value != 1.0 && dim_value != 2.0) {
    throw ConfigError("kernel.dimension", fmt::format("must be 1 or 2, got {}", dim_value));
  }
  const int N = static_cast<int>(dim_value);
  const KernelSpec kernel(kernel_family, support, N);

  const double n_value = number(doc, "grid.points_per_axis");
  if (!(n_value >= 256.0) || n_value != std::floor(n_value) ||
      !is_power_of_two(static_cast<std::size_t>(n_value))) {
    throw ConfigError("grid.points_per_axis",
                      fmt::format("must be a power of two >= 256, got {}", n_value));
  }
  const double half_length = positive(doc, "grid.half_length");
  const Grid grid(N, static_cast<std::size_t>(n_value), half_length);
  wrap("grid", [&] {
    require_resolved(kernel, grid);
    return 0;
  });

  const auto kind = wrap("family.kind", [&] { return parse_family_kind(text(doc, "family.kind")); });
  const double A = positive(doc, "family.A");
  const double alpha = number(doc, "family.alpha");
  const ScalingFamily family = wrap("family.alpha", [&] { return ScalingFamily(kind, A, alpha, N); });

  const auto p = optional_number(doc, "p");
  if (p && !(*p > 1.0)) throw ConfigError("p", fmt::format("must exceed 1, got {}", *p));
  const double dt = positive(doc, "dt");
  const double t_end = positive(doc, "t_end");
  const auto snapshots = increasing_list(doc, "snapshot_times");
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    const std::string item = fmt::format("snapshot_times[{}]", i);
    if (snapshots[i] < 0.0 || snapshots[i] > t_end) {
      throw ConfigError(item, fmt::format("{} outside [0, t_end = {}]", snapshots[i], t_end));
    }
    if (i > 0 && snapshots[i] - snapshots[i - 1] < dt * (1.0 - 1e-9)) {
      throw ConfigError(item, fmt::format("spacing below dt = {}", dt));
    }
  }
  const auto ladder = increasing_list(doc, "k_ladder");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] > 1.0)) throw ConfigError(fmt::format("k_ladder[{}]", i), "entries must exceed 1");
  }
  const double R = positive(doc, "window_R");
  const auto out = text(doc, "output_dir");

  WSettings w;
  w.t_list = increasing_list(doc, "w.t_list");
  for (std::size_t i = 0; i < w.t_list.size(); ++i) {
    if (!(w.t_list[i] > 0.0)) throw ConfigError(fmt::format("w.t_list[{}]", i), "must be positive");
  }
  w.K = positive(doc, "w.K");
  w.min_radius_factor = number(doc, "w.min_radius_factor");
  if (w.min_radius_factor < 0.0) throw ConfigError("w.min_radius_factor", "must be nonnegative");
  w.t = positive(doc, "w.t");

  LimitSettings limit;
  const auto datum = text(doc, "limit.datum");
  if (datum == "auto") {
    limit.datum = LimitDatumKind::automatic;
  } else if (datum == "power_law") {
    limit.datum = LimitDatumKind::power_law;
  } else if (datum == "point_source") {
    limit.datum = LimitDatumKind::point_source;
  } else {
    throw ConfigError("limit.datum", fmt::format("expected auto, power_law or point_source, got '{}'", datum));
  }
  limit.c0 = optional_number(doc, "limit.c0");
  if (limit.c0 && *limit.c0 < 0.0) throw ConfigError("limit.c0", "must be nonnegative");
  limit.mass = optional_number(doc, "limit.mass");
  if (limit.mass && !(*limit.mass > 0.0)) throw ConfigError("limit.mass", "must be positive");

  ExperimentConfig config{kernel, grid, family, p, dt, t_end, snapshots, ladder, R, out, w, limit,
                          doc, fnv1a_hex(doc.dump())};
  return config;
}

ExperimentConfig load_config(const std::optional<std::filesystem::path>& path,
                             const std::vector<std::string>& overrides) {
  json doc = default_document();
  if (path) {
    std::ifstream in(*path);
    if (!in) throw ConfigError(path->string(), "cannot open config file");
    json user = json::parse(in, nullptr, false);
    if (user.is_discarded()) throw ConfigError(path->string(), "not valid JSON");
    merge_into(doc, user, "");
  }
  for (const auto& o : overrides) apply_override(doc, o);
  return parse_config(doc);
}

}  // namespace nldiff::cli
