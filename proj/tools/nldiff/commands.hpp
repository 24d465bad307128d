#pragma once

#include <filesystem>
#include <string>

#include "config.hpp"

namespace nldiff::cli {

struct RunContext {
  ExperimentConfig config;
  std::filesystem::path out_dir;
  int threads = 1;
};

int cmd_kernel(const RunContext& ctx);
int cmd_w_table(const RunContext& ctx);
int cmd_w_snapshot(const RunContext& ctx);
int cmd_simulate(const RunContext& ctx);
int cmd_limit(const RunContext& ctx);
int cmd_rescale(const RunContext& ctx);
int cmd_compare(const RunContext& ctx);
int cmd_rates(const RunContext& ctx);
int cmd_mass_audit(const RunContext& ctx);
int cmd_barrier(const RunContext& ctx);

/// Snapshot file name for time t: u_t<t>.nldf.
std::string snapshot_name(const std::string& stem, double t);

}  // namespace nldiff::cli
