// Copyright 2026 The cdlab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cdlab/tabular.h"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace cdlab {
namespace {

using nlohmann::json;

bool NeedsQuoting(std::string_view s) {
  return s.find_first_of(",\"\n\r") != std::string_view::npos;
}

void AppendCell(std::string& out, const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) {
    out += std::to_string(*i);
  } else if (const auto* d = std::get_if<double>(&cell)) {
    out += FormatDouble(*d);
  } else {
    const auto& s = std::get<std::string>(cell);
    if (!NeedsQuoting(s)) {
      out += s;
      return;
    }
    out += '"';
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  }
}

Cell ParseCell(const std::string& text, bool quoted) {
  if (quoted || text.empty()) return text;
  const char* begin = text.data();
  const char* end = begin + text.size();
  std::int64_t i = 0;
  auto [ip, iec] = std::from_chars(begin, end, i);
  if (iec == std::errc() && ip == end) return i;
  double d = 0.0;
  auto [dp, dec] = std::from_chars(begin, end, d);
  if (dec == std::errc() && dp == end) return d;
  return text;
}

json CellToJson(const Cell& cell) {
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return *i;
  if (const auto* d = std::get_if<double>(&cell)) {
    if (!std::isfinite(*d)) return nullptr;
    return *d;
  }
  return std::get<std::string>(cell);
}

}  // namespace

Format ParseFormat(std::string_view name) {
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  throw std::invalid_argument("unknown format: " + std::string(name));
}

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  std::string out(buffer, ptr);
  // Keep doubles distinguishable from integers on re-parse.
  if (out.find_first_of(".eE") == std::string::npos) out += ".0";
  return out;
}

std::string ToCsv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    AppendCell(out, table.columns[c]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      AppendCell(out, row[c]);
    }
    out += '\n';
  }
  return out;
}

Table ParseCsv(std::string_view text) {
  std::vector<std::vector<std::pair<std::string, bool>>> records;
  std::vector<std::pair<std::string, bool>> record;
  std::string field;
  bool quoted = false, in_quotes = false, field_started = false;
  auto end_field = [&] {
    record.emplace_back(std::move(field), quoted);
    field.clear();
    quoted = false;
    field_started = false;
  };
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char c = text[k];
    if (in_quotes) {
      if (c == '"') {
        if (k + 1 < text.size() && text[k + 1] == '"') {
          field += '"';
          ++k;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && !field_started) {
      in_quotes = quoted = field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      end_field();
      records.push_back(std::move(record));
      record.clear();
    } else {
      field += c;
      field_started = true;
    }
  }
  if (field_started || !record.empty()) {
    end_field();
    records.push_back(std::move(record));
  }

  Table table;
  if (records.empty()) return table;
  for (auto& [name, q] : records.front()) table.columns.push_back(name);
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.columns.size()) {
      throw std::invalid_argument("ParseCsv: ragged row " + std::to_string(r));
    }
    std::vector<Cell> row;
    for (auto& [value, q] : records[r]) row.push_back(ParseCell(value, q));
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string ToJson(const Table& table, std::string_view config_json) {
  json doc;
  doc["config"] = json::parse(config_json);
  doc["columns"] = table.columns;
  json rows = json::array();
  for (const auto& row : table.rows) {
    json obj = json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      obj[table.columns[c]] = CellToJson(row[c]);
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

Table ParseJsonTable(std::string_view text) {
  const json doc = json::parse(text);
  Table table;
  table.columns = doc.at("columns").get<std::vector<std::string>>();
  for (const auto& obj : doc.at("rows")) {
    std::vector<Cell> row;
    for (const auto& name : table.columns) {
      const json& v = obj.at(name);
      if (v.is_null()) {
        row.emplace_back(std::numeric_limits<double>::quiet_NaN());
      } else if (v.is_number_integer()) {
        row.emplace_back(v.get<std::int64_t>());
      } else if (v.is_number()) {
        row.emplace_back(v.get<double>());
      } else {
        row.emplace_back(v.get<std::string>());
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace cdlab
