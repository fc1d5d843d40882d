#pragma once

// Deterministic tabular emission for the CLI: CSV (header row, '.' decimal,
// 17 significant digits) and JSON (manifest object plus row objects). The
// manifest makes every output self-describing; nothing in the data sections
// depends on run time unless the caller opts into a stamp.

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "fockmeter/version.hpp"

namespace fockmeter {

using Cell = std::variant<double, std::int64_t, std::string>;

struct RunManifest {
  std::string command;
  std::string format = "csv";
  bool deterministic = true;
  std::string stamp;  // empty unless explicitly requested
  std::vector<std::pair<std::string, std::string>> config;  // insertion-ordered

  void set(std::string key, std::string value) {
    config.emplace_back(std::move(key), std::move(value));
  }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string format_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return std::get<std::string>(cell);
}

inline void write_csv(std::ostream& out, const RunManifest& manifest, const Table& table) {
  out << "# fockmeter " << manifest.command << " v" << kVersion << "\n";
  out << "# deterministic=" << (manifest.deterministic ? "true" : "false") << "\n";
  if (!manifest.stamp.empty()) out << "# stamp=" << manifest.stamp << "\n";
  for (const auto& [key, value] : manifest.config) {
    out << "# " << key << "=" << value << "\n";
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c == 0 ? "" : ",") << table.columns[c];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c == 0 ? "" : ",") << format_cell(row[c]);
    }
    out << "\n";
  }
}

inline void write_json(std::ostream& out, const RunManifest& manifest, const Table& table) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json m;
  m["command"] = manifest.command;
  m["version"] = kVersion;
  m["format"] = manifest.format;
  m["deterministic"] = manifest.deterministic;
  if (!manifest.stamp.empty()) m["stamp"] = manifest.stamp;
  nlohmann::ordered_json cfg;
  for (const auto& [key, value] : manifest.config) cfg[key] = value;
  m["config"] = std::move(cfg);
  doc["manifest"] = std::move(m);

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
      if (const auto* d = std::get_if<double>(&row[c])) {
        obj[table.columns[c]] = *d;  // NaN/inf serialize as null
      } else if (const auto* i = std::get_if<std::int64_t>(&row[c])) {
        obj[table.columns[c]] = *i;
      } else {
        obj[table.columns[c]] = std::get<std::string>(row[c]);
      }
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << "\n";
}

}  // namespace fockmeter
