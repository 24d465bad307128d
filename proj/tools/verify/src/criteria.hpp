#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "nldiff/verify/csv.hpp"
#include "nldiff/verify/verify.hpp"

namespace nldiff::verify::detail {

/// Output sink shared by the criteria of one run.
class Context {
 public:
  explicit Context(std::filesystem::path out_dir) : out_dir_(std::move(out_dir)) {}

  const std::filesystem::path& out_dir() const noexcept { return out_dir_; }

  /// Writes table to out_dir/name and records it as an artifact of result.
  void emit(CriterionResult& result, const std::string& name, const CsvTable& table) const;

 private:
  std::filesystem::path out_dir_;
};

CriterionResult w_mass_law(const Context& ctx);
CriterionResult w_barriers(const Context& ctx);
CriterionResult solver_cross_validation(const Context& ctx);
CriterionResult comparison_and_envelope(const Context& ctx);
CriterionResult mass_identity(const Context& ctx);
CriterionResult critical_power_law(const Context& ctx);
CriterionResult supercritical_power_law(const Context& ctx);
CriterionResult integrable_supercritical(const Context& ctx);
CriterionResult integrable_critical(const Context& ctx);
CriterionResult log_corrected(const Context& ctx);

/// Strictly decreasing sequence.
bool decreasing(const std::vector<double>& values);

}  // namespace nldiff::verify::detail
