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

#include "egoforge/io/features.hpp"

#include <bit>
#include <cstring>

#include "egoforge/core/error.hpp"
#include "egoforge/io/annotations.hpp"

namespace egoforge::io {

namespace {

constexpr char kMagic[4] = {'E', 'G', 'F', 'T'};

template <class U>
void put_le(std::string& out, U v) {
  for (std::size_t i = 0; i < sizeof(U); ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

template <class U>
U get_le(std::string_view in, std::size_t offset) {
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    v |= static_cast<U>(static_cast<unsigned char>(in[offset + i])) << (8 * i);
  }
  return v;
}

}  // namespace

std::string encode_features(const FeatureMatrix& m) {
  std::string out(kMagic, sizeof kMagic);
  put_le<std::uint32_t>(out, kFeatureFileVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(m.dim()));
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(m.rows()));
  out.reserve(out.size() + 4 * m.values().size());
  for (float f : m.values()) put_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(f));
  return out;
}

FeatureMatrix decode_features(std::string_view bytes) {
  if (bytes.size() < kFeatureHeaderBytes) {
    throw DataError("feature file truncated: expected at least " + std::to_string(kFeatureHeaderBytes) +
                    " header bytes, got " + std::to_string(bytes.size()));
  }
  if (std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) throw DataError("feature file: bad magic");
  const auto version = get_le<std::uint32_t>(bytes, 4);
  if (version != kFeatureFileVersion) {
    throw DataError("feature file: unsupported version " + std::to_string(version));
  }
  const auto dim = get_le<std::uint32_t>(bytes, 8);
  const auto rows = get_le<std::uint64_t>(bytes, 12);
  if (dim == 0) throw DataError("feature file: dim is 0");
  if (rows > (UINT64_MAX - kFeatureHeaderBytes) / 4 / dim) throw DataError("feature file: row count overflows");
  const std::uint64_t expected = kFeatureHeaderBytes + rows * dim * 4;
  if (bytes.size() != expected) {
    throw DataError("feature file size mismatch: expected " + std::to_string(expected) + " bytes, got " +
                    std::to_string(bytes.size()));
  }
  std::vector<float> values(static_cast<std::size_t>(rows * dim));
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = std::bit_cast<float>(get_le<std::uint32_t>(bytes, kFeatureHeaderBytes + 4 * i));
  }
  try {
    return FeatureMatrix(dim, std::move(values), FeatureProvenance::stub);
  } catch (const ParameterError& e) {
    throw DataError(std::string("feature file: ") + e.what());
  }
}

void save_features(const std::filesystem::path& path, const FeatureMatrix& m) {
  write_text_file(path, encode_features(m));
}

FeatureMatrix load_features(const std::filesystem::path& path) {
  try {
    return decode_features(read_text_file(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace egoforge::io
