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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "egoforge/core/dataset.hpp"

namespace egoforge::io {

enum class Role { ground_truth, prediction };

inline constexpr int kSchemaVersion = 1;

// "<track>/<version>", e.g. "lta/1".
std::string schema_tag(Track track);

struct LoadedAnnotations {
  AnnotationSet set;
  std::vector<std::string> warnings;  // unknown fields, one line each
};

// Strict parse of a ground-truth or prediction document. A missing required
// field, a wrong type, a non-finite number, or an unknown schema tag throws
// DataError naming the JSON path; unknown extra fields become warnings.
LoadedAnnotations parse_annotations(std::string_view text, Role role);
LoadedAnnotations load_annotations(const std::filesystem::path& path, Role role);

// Canonical form: sorted keys, two-space indent, shortest round-trip
// numbers, trailing newline. parse(dump(x)) == x and dump(parse(dump(x)))
// == dump(x).
std::string dump_annotations(const AnnotationSet& set);
void save_annotations(const std::filesystem::path& path, const AnnotationSet& set);

// Whole-file helpers; errors become DataError naming the path.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace egoforge::io
