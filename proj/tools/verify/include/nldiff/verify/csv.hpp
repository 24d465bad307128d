#pragma once

#include <filesystem>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nldiff::verify {

/// Accumulates a CSV table in memory and writes it atomically.
///
/// Numbers use the shortest round-trip "{:.17g}" form so output is
/// byte-identical across runs.
class CsvTable {
 public:
  CsvTable(std::initializer_list<std::string_view> columns);
  explicit CsvTable(std::vector<std::string> columns);

  /// Comment line written before the header, without the leading '#'.
  void add_comment(std::string_view text);
  void add_row(std::initializer_list<double> values);
  void add_row(std::span<const double> values);
  /// Row with a leading text cell.
  void add_row(std::string_view label, std::initializer_list<double> values);

  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> comments_;
  std::vector<std::string> rows_;
};

std::string format_number(double value);

}  // namespace nldiff::verify
