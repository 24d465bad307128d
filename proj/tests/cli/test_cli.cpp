#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = fmt::format("{} '{}' {} 2>/dev/null", env, NLDIFF_CLI_PATH, args);
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string smoke() { return fmt::format("--config '{}/smoke.json'", NLDIFF_CONFIG_DIR); }

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "nldiff_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("Kernel command", "[cli]") {
  const auto dir = scratch("kernel");
  const auto r = run(fmt::format("{} --out '{}' kernel", smoke(), dir.string()));
  CHECK(r.code == 0);
  CHECK(r.out.find("diffusivity") != std::string::npos);
  REQUIRE(fs::exists(dir / "kernel.csv"));
  CHECK(slurp(dir / "kernel.csv").find("\n# config_hash=") != std::string::npos);
}

TEST_CASE("Every command writes its outputs", "[cli]") {
  const auto dir = scratch("all");
  for (const char* cmd : {"w-table", "w-snapshot", "simulate", "limit", "rescale", "compare", "rates",
                          "mass-audit", "barrier"}) {
    INFO(cmd);
    CHECK(run(fmt::format("{} --out '{}' {}", smoke(), dir.string(), cmd)).code == 0);
  }
  for (const char* file : {"w_table.csv", "W_t2.nldf", "gradW0_t2.nldf", "Wt_t2.nldf", "u_t1.nldf",
                           "u_t1.5.nldf", "u_t4.nldf", "run_ledger.csv", "uk_k2.nldf", "rescale.csv",
                           "convergence.csv", "convergence_series.csv", "rates.csv", "mass_audit.csv",
                           "barrier.csv"}) {
    INFO(file);
    CHECK(fs::exists(dir / file));
  }
  // No temporaries left behind by the atomic writes.
  for (const auto& entry : fs::directory_iterator(dir)) CHECK(entry.path().extension() != ".tmp");
}

TEST_CASE("Compare on the critical power-law default", "[cli]") {
  const auto dir = scratch("compare");
  REQUIRE(run(fmt::format("--config '{}/default.json' --out '{}' compare", NLDIFF_CONFIG_DIR, dir.string())).code == 0);
  std::ifstream in(dir / "convergence.csv");
  std::string line;
  std::vector<double> metric;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'k') continue;
    metric.push_back(std::stod(line.substr(line.rfind(',') + 1)));
  }
  REQUIRE(metric.size() >= 3);
  for (double m : metric) CHECK(m > 0.0);
  CHECK(metric.back() < metric[metric.size() - 2]);
  CHECK(metric.back() < metric.front());
}

TEST_CASE("Runs are byte-for-byte reproducible", "[cli]") {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  for (const auto& dir : {a, b}) {
    for (const char* cmd : {"simulate", "compare"}) {
      REQUIRE(run(fmt::format("{} --out '{}' {}", smoke(), dir.string(), cmd)).code == 0);
    }
  }
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    const auto other = b / entry.path().filename();
    INFO(entry.path().filename().string());
    REQUIRE(fs::exists(other));
    CHECK(slurp(entry.path()) == slurp(other));
    ++compared;
  }
  CHECK(compared >= 6);
}

TEST_CASE("Output directory precedence", "[cli]") {
  const auto env_dir = scratch("env");
  const auto flag_dir = scratch("flag");
  const auto cfg_dir = scratch("cfg");
  const std::string cfg = fmt::format("{} --override output_dir='{}'", smoke(), cfg_dir.string());

  CHECK(run(fmt::format("{} --out '{}' kernel", cfg, flag_dir.string()),
            fmt::format("NLDF_OUT='{}'", env_dir.string()))
            .code == 0);
  CHECK(fs::exists(env_dir / "kernel.csv"));
  CHECK_FALSE(fs::exists(flag_dir / "kernel.csv"));

  CHECK(run(fmt::format("{} --out '{}' kernel", cfg, flag_dir.string()), "NLDF_OUT=").code == 0);
  CHECK(fs::exists(flag_dir / "kernel.csv"));
  CHECK_FALSE(fs::exists(cfg_dir / "kernel.csv"));

  CHECK(run(fmt::format("{} kernel", cfg), "NLDF_OUT=").code == 0);
  CHECK(fs::exists(cfg_dir / "kernel.csv"));
}

TEST_CASE("Configuration errors exit with 1", "[cli]") {
  const auto dir = scratch("errors");
  const std::string out = fmt::format("--out '{}'", dir.string());
  CHECK(run(fmt::format("{} {} --override grid.nonsense=3 kernel", smoke(), out)).code == 1);
  CHECK(run(fmt::format("{} {} --override dt=-1 simulate", smoke(), out)).code == 1);
  CHECK(run(fmt::format("{} {} --override grid.points_per_axis=1000 kernel", smoke(), out)).code == 1);
  CHECK(run(fmt::format("{} {} --override family.alpha=1.5 simulate", smoke(), out)).code == 1);
  CHECK(run(fmt::format("{} {} --override snapshot_times=[9] simulate", smoke(), out)).code == 1);
  CHECK(run(fmt::format("{} {}", smoke(), out)).code == 1);
  CHECK(run(fmt::format("{} {} frobnicate", smoke(), out)).code == 1);

  const auto bad = dir / "bad.json";
  std::ofstream(bad) << "{ \"dt\": ";
  CHECK(run(fmt::format("--config '{}' {} kernel", bad.string(), out)).code == 1);
  const auto unknown = dir / "unknown.json";
  std::ofstream(unknown) << R"({"kernel": {"colour": "red"}})";
  CHECK(run(fmt::format("--config '{}' {} kernel", unknown.string(), out)).code == 1);
}

TEST_CASE("Non-finite states exit with 2", "[cli]") {
  const auto dir = scratch("nonfinite");
  const auto r = run(fmt::format("{} --out '{}' --override family.A=1e308 --override p=null simulate",
                                 smoke(), dir.string()));
  CHECK(r.code == 2);
}

TEST_CASE("Config hash follows the configuration", "[cli]") {
  const auto a = scratch("hash_a");
  const auto b = scratch("hash_b");
  REQUIRE(run(fmt::format("{} --out '{}' kernel", smoke(), a.string())).code == 0);
  REQUIRE(run(fmt::format("{} --out '{}' --override dt=0.025 kernel", smoke(), b.string())).code == 0);
  auto hash_line = [](const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    while (std::getline(in, line)) {
      if (line.rfind("# config_hash=", 0) == 0) return line;
    }
    return std::string{};
  };
  CHECK_FALSE(hash_line(a / "kernel.csv").empty());
  CHECK(hash_line(a / "kernel.csv") != hash_line(b / "kernel.csv"));
}

TEST_CASE("verify-all runs selected criteria", "[cli]") {
  const auto dir = scratch("verify");
  const auto r = run(fmt::format("{} --out '{}' verify-all --only 3", smoke(), dir.string()));
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS [3]") != std::string::npos);
  CHECK(r.out.find("[1]") == std::string::npos);
  CHECK(run(fmt::format("{} --out '{}' verify-all --only 12", smoke(), dir.string())).code == 1);
}
