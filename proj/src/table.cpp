#include "fieldrank/table.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace fieldrank::table {

void Table::add_row(std::vector<Cell> cells) {
  if (cells.size() != columns.size())
    throw error("table: row width " + std::to_string(cells.size()) +
                " does not match " + std::to_string(columns.size()) + " columns");
  rows.push_back(std::move(cells));
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string cell_to_string(const Cell& c) {
  if (std::holds_alternative<std::int64_t>(c)) return std::to_string(std::get<std::int64_t>(c));
  if (std::holds_alternative<double>(c)) return format_double(std::get<double>(c));
  return csv_escape(std::get<std::string>(c));
}

void append_table(std::string& out, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(t.columns[i]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += cell_to_string(row[i]);
    }
    out += '\n';
  }
}

nlohmann::ordered_json cell_to_json(const Cell& c) {
  if (std::holds_alternative<std::int64_t>(c)) return std::get<std::int64_t>(c);
  if (std::holds_alternative<double>(c)) return std::get<double>(c);
  return std::get<std::string>(c);
}

nlohmann::ordered_json table_to_json(const Table& t) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_to_json(row[i]);
    arr.push_back(std::move(obj));
  }
  return arr;
}

}  // namespace

std::string to_csv(const Document& doc) {
  std::string out;
  for (const auto& [key, value] : doc.config.items())
    out += "# " + key + " = " + (value.is_string() ? value.get<std::string>() : value.dump()) +
           "\n";
  append_table(out, doc.rows);
  if (!doc.fits.empty()) {
    out += "# fits\n";
    append_table(out, doc.fits);
  }
  return out;
}

std::string to_json(const Document& doc) {
  nlohmann::ordered_json j;
  j["config"] = doc.config;
  j["rows"] = table_to_json(doc.rows);
  j["fits"] = table_to_json(doc.fits);
  return j.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw error("table: cannot open '" + tmp + "' for writing");
    out << content;
    if (!out.good()) {
      out.close();
      std::filesystem::remove(tmp);
      throw error("table: failed writing '" + tmp + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw error("table: failed to move output into place at '" + path + "'");
  }
}

}  // namespace fieldrank::table
