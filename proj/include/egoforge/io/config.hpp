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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace egoforge::io {

// Evaluation and pipeline settings shared by the CLI subcommands. A config
// file supplies defaults; command-line flags override single fields.
// Unset tIoU and recall-k lists fall back to per-track defaults (MQ: mAP at
// 0.1:0.5 and R@1; NLQ: R@{1,5} at {0.3, 0.5}).
struct RunConfig {
  std::optional<std::vector<double>> tiou_thresholds;
  std::optional<std::vector<int>> recall_k;
  double recall_tiou = 0.5;
  int z = 20;
  int k = 5;
  int top_k = 5;
  double nms_iou = 0.75;
  double sta_iou = 0.5;
  double ttc_tol = 0.25;
  double alpha_s = 16.0;
  double clip_len_s = 2.0;
  double clip_stride_s = 1.0;
  std::uint64_t seed = 0;

  // Throws ParameterError on out-of-range values.
  void validate() const;
};

struct LoadedConfig {
  RunConfig config;
  std::vector<std::string> warnings;
};

// {"schema": "config/1", ...}; every field is optional and falls back to
// the RunConfig default.
LoadedConfig parse_config(std::string_view text);
LoadedConfig load_config(const std::filesystem::path& path);
std::string dump_config(const RunConfig& cfg);

}  // namespace egoforge::io
