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

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "egoforge/core/types.hpp"
#include "egoforge/metrics/report.hpp"
#include "egoforge/parallel.hpp"

namespace egoforge::metrics {

// Key joining predictions to ground truth for recall: one video and one
// label (MQ class or NLQ query).
std::string group_key(std::string_view video_id, std::string_view label);

// Fraction of ground-truth segments for which one of the top-k predictions
// under the same key reaches tIoU >= tiou_thresh. Predictions are ranked by
// descending score with ties in input order. Throws on empty ground truth.
double recall_at_k(const std::map<std::string, std::vector<RankedSegment>>& preds,
                   const std::map<std::string, std::vector<TemporalSegment>>& gts, int k,
                   double tiou_thresh);

struct ClassSegment {
  std::string video_id;
  int class_id = 0;
  TemporalSegment segment;
  double score = 1.0;
};

// tIoU thresholds 0.1, 0.2, 0.3, 0.4, 0.5.
std::vector<double> default_map_thresholds();

// Average mAP over tIoU thresholds. Per class and threshold: greedy matching
// within each video, all-point AP; classes without ground truth are skipped,
// classes with ground truth but no predictions score 0. The breakdown holds
// mAP per threshold ("mAP@0.30").
MetricReport average_map(std::span<const ClassSegment> preds, std::span<const ClassSegment> gts,
                         std::span<const double> tiou_thresholds,
                         Execution ex = Execution::parallel);

}  // namespace egoforge::metrics
