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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "egoforge/core/types.hpp"

namespace egoforge::io {

// Binary feature file: "EGFT", u32 version, u32 dim, u64 rows, then
// rows x dim float32 values, all little-endian, row-major.
inline constexpr std::uint32_t kFeatureFileVersion = 1;
inline constexpr std::size_t kFeatureHeaderBytes = 4 + 4 + 4 + 8;

std::string encode_features(const FeatureMatrix& m);
// Provenance is not stored; decoded matrices are tagged `stub`.
FeatureMatrix decode_features(std::string_view bytes);

void save_features(const std::filesystem::path& path, const FeatureMatrix& m);
FeatureMatrix load_features(const std::filesystem::path& path);

}  // namespace egoforge::io
