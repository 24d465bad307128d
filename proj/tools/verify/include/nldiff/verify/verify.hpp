#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace nldiff::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  /// One-line account of the measured quantities.
  std::string summary;
  /// Files written, relative to the output directory.
  std::vector<std::filesystem::path> artifacts;
};

struct VerifyOptions {
  /// Criteria to run (1..11); empty runs all of them.
  std::vector<int> only;
  /// Called as soon as each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

inline constexpr int kCriterionCount = 11;

/// Runs the acceptance experiments, writing their tables under out_dir.
/// Criterion 11 re-runs every other selected criterion into
/// out_dir/determinism and compares the files byte for byte.
std::vector<CriterionResult> run_verification(const std::filesystem::path& out_dir,
                                              const VerifyOptions& options = {});

/// "PASS [6] name: summary" / "FAIL [6] ...".
std::string format_result_line(const CriterionResult& result);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace nldiff::verify
