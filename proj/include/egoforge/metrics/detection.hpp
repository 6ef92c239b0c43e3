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

#include <span>
#include <string>
#include <vector>

#include "egoforge/core/types.hpp"
#include "egoforge/metrics/report.hpp"
#include "egoforge/parallel.hpp"

namespace egoforge::metrics {

// ---- Short-term anticipation ----

enum class StaCriteria { noun, noun_verb, noun_ttc, overall };

struct StaApParams {
  double box_iou_thresh = 0.5;
  double ttc_tol_s = 0.25;
  int top_k = 5;
};

struct KeyframeSta {
  std::string keyframe_id;
  StaInstance instance;
};

// Keeps the top_k predictions per keyframe, then matches greedily by score:
// a prediction matches a ground truth of the same keyframe when box IoU
// reaches the threshold, the nouns agree, and (per criteria) the verbs agree
// and/or |ttc difference| <= ttc_tol_s. Mean all-point AP over the noun
// classes present in the ground truth.
double sta_ap(std::span<const KeyframeSta> preds, std::span<const KeyframeSta> gts,
              StaCriteria criteria, const StaApParams& params = {},
              Execution ex = Execution::parallel);

// The four STA columns: Noun, Noun+Verb, Noun+TTC, Overall.
std::vector<MetricReport> sta_report(std::span<const KeyframeSta> preds,
                                     std::span<const KeyframeSta> gts, const StaApParams& params = {},
                                     Execution ex = Execution::parallel);

// ---- Single-frame detection (SCOD) ----

struct ImageDetection {
  std::string image_id;
  Detection detection;
};

// IoU thresholds 0.50:0.05:0.95.
std::vector<double> coco_iou_thresholds();

// Detection AP per class with greedy IoU matching inside each image. `value`
// is AP averaged over `iou_thresholds`; the breakdown carries AP50, AP75 and
// each per-threshold AP ("AP@0.55").
MetricReport box_ap(std::span<const ImageDetection> preds, std::span<const ImageDetection> gts,
                    std::span<const double> iou_thresholds, Execution ex = Execution::parallel);

}  // namespace egoforge::metrics
