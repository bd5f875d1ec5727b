#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace uwqkd {

/// Empty, number, integer, or text (including "ERR:..." sentinels).
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Index of a column; throws std::out_of_range if missing.
  std::size_t column(std::string_view name) const;
  /// Appends rows of `other`, which must have identical columns.
  void append(const Dataset& other);
};

enum class OutputFormat { csv, json_lines };

OutputFormat parse_output_format(std::string_view name);

/// 12 significant digits, shortest of fixed/scientific ("%.12g").
std::string format_number(double value);

void write_csv(const Dataset& data, std::ostream& out);
void write_json_lines(const Dataset& data, std::ostream& out);
void write_dataset(const Dataset& data, OutputFormat format, std::ostream& out);

/// Writes to `path`; throws std::runtime_error carrying the OS error text.
void emit_dataset(const Dataset& data, OutputFormat format, const std::filesystem::path& path);

}  // namespace uwqkd
