#include "nldiff/verify/csv.hpp"

#include <fmt/format.h>

#include "nldiff/error.hpp"
#include "nldiff/snapshot.hpp"

namespace nldiff::verify {

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

CsvTable::CsvTable(std::initializer_list<std::string_view> columns) {
  for (auto c : columns) columns_.emplace_back(c);
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_comment(std::string_view text) { comments_.emplace_back(text); }

void CsvTable::add_row(std::span<const double> values) {
  if (values.size() != columns_.size()) {
    throw InvalidArgument(fmt::format("CSV row has {} cells, table has {} columns",
                                      values.size(), columns_.size()));
  }
  std::string row;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) row += ',';
    row += format_number(values[i]);
  }
  rows_.push_back(std::move(row));
}

void CsvTable::add_row(std::initializer_list<double> values) {
  add_row(std::span<const double>(values.begin(), values.size()));
}

void CsvTable::add_row(std::string_view label, std::initializer_list<double> values) {
  if (values.size() + 1 != columns_.size()) {
    throw InvalidArgument(fmt::format("CSV row has {} cells, table has {} columns",
                                      values.size() + 1, columns_.size()));
  }
  std::string row(label);
  for (double v : values) {
    row += ',';
    row += format_number(v);
  }
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  for (const auto& c : comments_) out += fmt::format("# {}\n", c);
  out += fmt::format("{}\n", fmt::join(columns_, ","));
  for (const auto& r : rows_) {
    out += r;
    out += '\n';
  }
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const { write_file_atomic(path, str()); }

}  // namespace nldiff::verify
