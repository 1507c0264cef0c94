#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fieldrank/types.hpp"

namespace fieldrank::table {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  bool empty() const { return columns.empty(); }
  void add_row(std::vector<Cell> cells);
};

/// A result document: the resolved configuration (with the tool version),
/// the data rows, and optional fit rows.
struct Document {
  nlohmann::ordered_json config;
  Table rows;
  Table fits;
};

/// 17 significant digits; the shortest form that round-trips any double.
std::string format_double(double v);

/// RFC-4180-style CSV: leading "# key = value" metadata lines, a header row,
/// then the data. Fit rows, when present, follow after a "# fits" marker with
/// their own header.
std::string to_csv(const Document& doc);

/// One object: {"config": ..., "rows": [...], "fits": [...]}.
std::string to_json(const Document& doc);

/// Writes via a temporary file and renames into place, so a failed run never
/// leaves a partial output behind.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace fieldrank::table
