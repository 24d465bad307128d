#include "nldiff/verify/verify.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

#include <fmt/format.h>

#include "criteria.hpp"
#include "nldiff/error.hpp"

namespace nldiff::verify {

namespace detail {

void Context::emit(CriterionResult& result, const std::string& name, const CsvTable& table) const {
  table.write(out_dir_ / name);
  result.artifacts.emplace_back(name);
}

}  // namespace detail

namespace {

using Runner = CriterionResult (*)(const detail::Context&);

constexpr Runner kRunners[] = {
    detail::w_mass_law,
    detail::w_barriers,
    detail::solver_cross_validation,
    detail::comparison_and_envelope,
    detail::mass_identity,
    detail::critical_power_law,
    detail::supercritical_power_law,
    detail::integrable_supercritical,
    detail::integrable_critical,
    detail::log_corrected,
};

CriterionResult run_guarded(int id, Runner runner, const detail::Context& ctx) {
  try {
    return runner(ctx);
  } catch (const std::exception& e) {
    return {id, fmt::format("criterion {}", id), false, fmt::format("error: {}", e.what()), {}};
  }
}

std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool selected(const VerifyOptions& options, int id) {
  return options.only.empty() ||
         std::find(options.only.begin(), options.only.end(), id) != options.only.end();
}

}  // namespace

std::vector<CriterionResult> run_verification(const std::filesystem::path& out_dir,
                                              const VerifyOptions& options) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError(fmt::format("cannot create {}: {}", out_dir.string(), ec.message()));

  const detail::Context ctx(out_dir);
  std::vector<CriterionResult> results;
  std::vector<int> ran;
  for (int id = 1; id <= kCriterionCount - 1; ++id) {
    if (!selected(options, id)) continue;
    results.push_back(run_guarded(id, kRunners[id - 1], ctx));
    ran.push_back(id);
    if (options.on_result) options.on_result(results.back());
  }
  if (!selected(options, kCriterionCount)) return results;

  CriterionResult det{kCriterionCount, "determinism", true, {}, {}};
  const auto second_dir = out_dir / "determinism";
  std::filesystem::create_directories(second_dir, ec);
  const detail::Context second(second_dir);
  std::vector<int> replay = ran;
  if (replay.empty()) {
    // Run on its own: produce a first pass of the cheaper criteria to compare.
    replay = {1, 3, 5};
    for (int id : replay) results.push_back(run_guarded(id, kRunners[id - 1], ctx));
  }
  std::size_t compared = 0;
  std::vector<std::string> mismatched;
  for (int id : replay) {
    const auto again = run_guarded(id, kRunners[id - 1], second);
    const auto first = std::find_if(results.begin(), results.end(),
                                    [&](const CriterionResult& r) { return r.id == id; });
    if (first->artifacts != again.artifacts || first->summary != again.summary) {
      mismatched.push_back(fmt::format("criterion {} summary/artifacts", id));
    }
    for (const auto& name : again.artifacts) {
      ++compared;
      const auto a = read_bytes(out_dir / name);
      const auto b = read_bytes(second_dir / name);
      if (a.empty() || a != b) mismatched.push_back(name.string());
    }
  }
  if (ran.empty()) {
    results.erase(std::remove_if(results.begin(), results.end(),
                                 [](const CriterionResult& r) { return r.id != kCriterionCount; }),
                  results.end());
  }
  det.passed = mismatched.empty() && compared > 0;
  det.summary = mismatched.empty()
                    ? fmt::format("{} output files byte-identical across two runs", compared)
                    : fmt::format("differing outputs: {}", fmt::join(mismatched, ", "));
  results.push_back(det);
  if (options.on_result) options.on_result(results.back());
  return results;
}

std::string format_result_line(const CriterionResult& result) {
  return fmt::format("{} [{}] {}: {}", result.passed ? "PASS" : "FAIL", result.id, result.name,
                     result.summary);
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.passed; });
}

}  // namespace nldiff::verify
