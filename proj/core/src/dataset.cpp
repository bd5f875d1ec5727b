#include "uwqkd/dataset.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "uwqkd/errors.hpp"

namespace uwqkd {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::string csv_field(const Cell& cell) {
  return std::visit(
      Overloaded{[](std::monostate) { return std::string(); },
                 [](double v) { return format_number(v); },
                 [](std::int64_t v) { return std::to_string(v); },
                 [](const std::string& s) {
                   if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
                   std::string quoted = "\"";
                   for (char c : s) {
                     if (c == '"') quoted += '"';
                     quoted += c;
                   }
                   return quoted + "\"";
                 }},
      cell);
}

std::string json_field(const Cell& cell) {
  return std::visit(
      Overloaded{[](std::monostate) { return std::string("null"); },
                 [](double v) {
                   return std::isfinite(v) ? format_number(v)
                                           : nlohmann::json(format_number(v)).dump();
                 },
                 [](std::int64_t v) { return std::to_string(v); },
                 [](const std::string& s) { return nlohmann::json(s).dump(); }},
      cell);
}

}  // namespace

std::size_t Dataset::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw std::out_of_range("dataset has no column \"" + std::string(name) + "\"");
}

void Dataset::append(const Dataset& other) {
  if (columns.empty() && rows.empty()) columns = other.columns;
  if (other.columns != columns) throw std::invalid_argument("dataset append: column mismatch");
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "jsonl" || name == "json-lines") return OutputFormat::json_lines;
  throw ConfigError("unknown output format \"" + std::string(name) + "\" (expected csv or jsonl)",
                    "format");
}

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

void write_csv(const Dataset& data, std::ostream& out) {
  for (std::size_t i = 0; i < data.columns.size(); ++i) {
    out << (i ? "," : "") << csv_field(Cell{data.columns[i]});
  }
  out << '\n';
  for (const auto& row : data.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << '\n';
  }
}

void write_json_lines(const Dataset& data, std::ostream& out) {
  for (const auto& row : data.rows) {
    out << '{';
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << nlohmann::json(data.columns[i]).dump() << ':' << json_field(row[i]);
    }
    out << "}\n";
  }
}

void write_dataset(const Dataset& data, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::csv) {
    write_csv(data, out);
  } else {
    write_json_lines(data, out);
  }
}

void emit_dataset(const Dataset& data, OutputFormat format, const std::filesystem::path& path) {
  if (data.rows.empty()) throw std::invalid_argument("emit_dataset: dataset is empty");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + ": " + std::strerror(errno));
  }
  write_dataset(data, format, out);
  out.flush();
  if (!out) throw std::runtime_error("write to " + path.string() + " failed: " + std::strerror(errno));
}

}  // namespace uwqkd
