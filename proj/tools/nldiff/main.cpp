#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "commands.hpp"
#include "config.hpp"
#include "nldiff/error.hpp"
#include "nldiff/verify/verify.hpp"

namespace {

constexpr int kConfigError = 1;
constexpr int kNumericalFailure = 2;
constexpr int kAcceptanceFailure = 3;

using Command = int (*)(const nldiff::cli::RunContext&);

std::filesystem::path resolve_out(const std::string& flag, const std::string& from_config) {
  if (const char* env = std::getenv("NLDF_OUT"); env != nullptr && *env != '\0') return env;
  if (!flag.empty()) return flag;
  return from_config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlocal diffusion with absorption: solvers, references and checks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_flag;
  int threads = 1;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "JSON experiment configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_flag, "Output directory (NLDF_OUT takes precedence)");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--override", overrides, "Set a config value: dotted.key=value")
      ->take_all();

  const std::map<std::string, std::pair<Command, std::string>> commands{
      {"kernel", {nldiff::cli::cmd_kernel, "Kernel mass, diffusivity and radial profile"}},
      {"w-table", {nldiff::cli::cmd_w_table, "Barrier constants of W over w.t_list"}},
      {"w-snapshot", {nldiff::cli::cmd_w_snapshot, "Snapshots of W, grad W and W_t at w.t"}},
      {"simulate", {nldiff::cli::cmd_simulate, "Solve the nonlocal problem"}},
      {"limit", {nldiff::cli::cmd_limit, "Solve the local limit problem"}},
      {"rescale", {nldiff::cli::cmd_rescale, "Rescaled solutions along k_ladder"}},
      {"compare", {nldiff::cli::cmd_compare, "Convergence of rescaled solutions to the limit"}},
      {"rates", {nldiff::cli::cmd_rates, "Fitted decay of the convergence metric"}},
      {"mass-audit", {nldiff::cli::cmd_mass_audit, "Mass identity ledger"}},
      {"barrier", {nldiff::cli::cmd_barrier, "Solution barrier summary"}},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, entry] : commands) subs[name] = app.add_subcommand(name, entry.second);
  auto* verify_all = app.add_subcommand("verify-all", "Run every acceptance criterion");
  std::vector<int> only;
  verify_all->add_option("--only", only, "Run only these criterion ids")
      ->check(CLI::Range(1, 11))
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    std::optional<std::filesystem::path> path;
    if (!config_path.empty()) path = config_path;
    auto config = nldiff::cli::load_config(path, overrides);
    const auto out = resolve_out(out_flag, config.output_dir);
    std::filesystem::create_directories(out);

    if (verify_all->parsed()) {
      nldiff::verify::VerifyOptions options;
      options.only = only;
      options.on_result = [](const nldiff::verify::CriterionResult& r) {
        std::printf("%s\n", nldiff::verify::format_result_line(r).c_str());
        std::fflush(stdout);
      };
      const auto results = nldiff::verify::run_verification(out, options);
      return nldiff::verify::all_passed(results) ? 0 : kAcceptanceFailure;
    }
    nldiff::cli::RunContext ctx{std::move(config), out, threads};
    for (const auto& [name, sub] : subs) {
      if (sub->parsed()) return commands.at(name).first(ctx);
    }
    return kConfigError;
  } catch (const nldiff::cli::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const nldiff::NonfiniteState& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumericalFailure;
  } catch (const nldiff::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kConfigError;
  }
}
