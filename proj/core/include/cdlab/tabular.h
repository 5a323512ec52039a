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

#ifndef CDLAB_TABULAR_H_
#define CDLAB_TABULAR_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cdlab {

using Cell = std::variant<std::int64_t, double, std::string>;

// Column-named rows of typed cells, rendered as CSV or JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  bool operator==(const Table&) const = default;
};

enum class Format { kCsv, kJson };
Format ParseFormat(std::string_view name);

// Shortest round-trip decimal form ("." separator); nonfinite values render
// as "nan", "inf", "-inf".
std::string FormatDouble(double value);

// Header row, comma separated, LF line endings. Strings containing a comma,
// quote or newline are quoted.
std::string ToCsv(const Table& table);

// Parses ToCsv output. Cells that parse fully as integers become int64,
// then doubles, otherwise strings. Throws std::invalid_argument on ragged rows.
Table ParseCsv(std::string_view text);

// {"config": <config_json>, "columns": [...], "rows": [{column: value}, ...]}
// `config_json` must be a serialized JSON object. Nonfinite doubles map to
// null.
std::string ToJson(const Table& table, std::string_view config_json);

// Inverse of ToJson for the table part; null reads back as NaN.
Table ParseJsonTable(std::string_view text);

}  // namespace cdlab

#endif  // CDLAB_TABULAR_H_
