// Copyright 2026 The egoforge Authors. All Rights Reserved.
//
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

#include "egoforge/io/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include <json.hpp>

#include "egoforge/core/error.hpp"

namespace egoforge::io {

namespace {

using nlohmann::ordered_json;

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

// Quotes a csv field when it holds a separator, quote, or newline.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string plain_table(const std::vector<std::vector<std::string>>& cells) {
  std::vector<std::size_t> widths;
  for (const auto& row : cells) {
    widths.resize(std::max(widths.size(), row.size()), 0);
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  }
  std::string out;
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += c + 1 == row.size() ? row[c] : pad(row[c], widths[c] + 2);
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace

std::optional<Format> format_from_name(std::string_view name) {
  if (name == "plain") return Format::plain;
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  return std::nullopt;
}

std::string format_value(double value, metrics::MetricFamily family) {
  if (!std::isfinite(value)) throw ParameterError("cannot render a non-finite metric value");
  double shown = value;
  int decimals = 2;
  switch (family) {
    case metrics::MetricFamily::fraction: shown = value * 100.0; break;
    case metrics::MetricFamily::displacement: break;
    case metrics::MetricFamily::edit_distance: decimals = 3; break;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, shown);
  std::string s = buf;
  // A tiny negative rounds to "-0.00"; print it as zero.
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string render_reports(std::span<const metrics::MetricReport> reports, Format format) {
  switch (format) {
    case Format::plain: {
      std::vector<std::vector<std::string>> cells;
      for (const auto& r : reports) {
        cells.push_back({r.name, format_value(r.value, r.family)});
        for (const auto& [key, v] : r.breakdown) cells.push_back({"  " + key, format_value(v, r.family)});
      }
      return plain_table(cells);
    }
    case Format::csv: {
      std::string out = "metric,value,count\n";
      for (const auto& r : reports) {
        out += csv_field(r.name) + "," + format_value(r.value, r.family) + "," + std::to_string(r.count) + "\n";
        for (const auto& [key, v] : r.breakdown) {
          out += csv_field(r.name + "/" + key) + "," + format_value(v, r.family) + "," + std::to_string(r.count) + "\n";
        }
      }
      return out;
    }
    case Format::json: {
      ordered_json arr = ordered_json::array();
      for (const auto& r : reports) {
        ordered_json b = ordered_json::object();
        for (const auto& [key, v] : r.breakdown) b[key] = format_value(v, r.family);
        arr.push_back({{"name", r.name}, {"value", format_value(r.value, r.family)}, {"count", r.count},
                       {"breakdown", std::move(b)}});
      }
      return ordered_json{{"metrics", std::move(arr)}}.dump(2) + "\n";
    }
  }
  return {};
}

std::string render_fixture(const ResultFixture& f, Format format) {
  switch (format) {
    case Format::plain: {
      std::vector<std::vector<std::string>> cells;
      std::vector<std::string> header{"Method"};
      for (const auto& c : f.columns) header.push_back(c.split + " " + c.metric);
      cells.push_back(std::move(header));
      for (const auto& m : f.methods) {
        std::vector<std::string> row{m};
        for (const auto& c : f.columns) {
          const auto* r = f.find(m, c);
          row.push_back(r ? r->value : "-");
        }
        cells.push_back(std::move(row));
      }
      return f.table + "\n" + plain_table(cells);
    }
    case Format::csv: {
      std::string out = "table,method,split,metric,value\n";
      for (const auto& m : f.methods) {
        for (const auto& c : f.columns) {
          if (const auto* r = f.find(m, c)) {
            out += csv_field(f.table) + "," + csv_field(m) + "," + c.split + "," + csv_field(c.metric) + "," +
                   r->value + "\n";
          }
        }
      }
      return out;
    }
    case Format::json: {
      ordered_json rows = ordered_json::array();
      for (const auto& m : f.methods) {
        for (const auto& c : f.columns) {
          if (const auto* r = f.find(m, c)) {
            rows.push_back({{"method", m}, {"split", c.split}, {"metric", c.metric}, {"value", r->value}});
          }
        }
      }
      return ordered_json{{"table", f.table}, {"rows", std::move(rows)}}.dump(2) + "\n";
    }
  }
  return {};
}

}  // namespace egoforge::io
