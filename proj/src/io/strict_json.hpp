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

#pragma once

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "egoforge/core/error.hpp"

namespace egoforge::io::detail {

using nlohmann::json;

// Walks one JSON object, requiring or tolerating fields by name. Fields never
// asked for are reported as warnings by finish().
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path, std::vector<std::string>& warnings)
      : j_(j), path_(std::move(path)), warnings_(warnings) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }
  ObjectReader(const ObjectReader&) = delete;
  ObjectReader& operator=(const ObjectReader&) = delete;
  ~ObjectReader() = default;

  [[noreturn]] static void fail(const std::string& where, const std::string& what) {
    throw DataError((where.empty() ? std::string("document") : where) + ": " + what);
  }

  std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  const json& required(const std::string& key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end()) fail(child(key), "missing required field");
    return *it;
  }

  const json* optional(const std::string& key) {
    seen_.insert(key);
    const auto it = j_.find(key);
    return it == j_.end() || it->is_null() ? nullptr : &*it;
  }

  double number(const std::string& key) { return as_number(required(key), child(key)); }
  int integer(const std::string& key) { return as_int(required(key), child(key)); }
  std::string string(const std::string& key) { return as_string(required(key), child(key)); }
  bool boolean(const std::string& key) {
    const auto& v = required(key);
    if (!v.is_boolean()) fail(child(key), "expected a boolean");
    return v.get<bool>();
  }
  const json& array(const std::string& key) {
    const auto& v = required(key);
    if (!v.is_array()) fail(child(key), "expected an array");
    return v;
  }

  void finish() {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.contains(it.key())) warnings_.push_back(child(it.key()) + ": unknown field ignored");
    }
  }

  static double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) fail(where, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(where, "number is not finite");
    return x;
  }
  static int as_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(where, "expected an integer");
    const auto x = v.get<std::int64_t>();
    if (x < INT32_MIN || x > INT32_MAX) fail(where, "integer out of range");
    return static_cast<int>(x);
  }
  static std::string as_string(const json& v, const std::string& where) {
    if (!v.is_string()) fail(where, "expected a string");
    return v.get<std::string>();
  }

 private:
  const json& j_;
  std::string path_;
  std::vector<std::string>& warnings_;
  std::set<std::string> seen_;
};

inline std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

// Parses text, mapping syntax errors to DataError.
inline json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace egoforge::io::detail
