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
#include <vector>

#include "egoforge/core/types.hpp"
#include "egoforge/parallel.hpp"

namespace egoforge::fusion {

struct FusionConfig {
  double nms_iou_thresh = 0.75;  // result fusion uses a higher threshold than detector NMS (0.5)
  int top_k = 5;
  double temporal_nms_tiou = 0.5;
};

// Greedy NMS: keep the best remaining box (ties to the lower index) and drop
// every box whose IoU with it exceeds iou_thresh. Kept indices come back in
// descending score order. The parallel path splits each suppression sweep
// across threads; every flag has a single writer, so both paths agree.
std::vector<std::size_t> nms(std::span<const BoundingBox> boxes, std::span<const double> scores,
                             double iou_thresh, Execution ex = Execution::parallel);

// Indices of the k highest-scoring instances, best first, ties in input order.
std::vector<std::size_t> topk_indices(std::span<const StaInstance> preds, int k);
std::vector<StaInstance> topk_by_noun_score(std::span<const StaInstance> preds, int k);

using KeyframePredictions = std::map<std::string, std::vector<StaInstance>>;

// Per keyframe: a's instances followed by b's, then NMS at cfg.nms_iou_thresh
// regardless of noun or verb. Survivors are listed best first.
KeyframePredictions splice_and_nms(const KeyframePredictions& a, const KeyframePredictions& b,
                                   const FusionConfig& cfg, Execution ex = Execution::parallel);

// Merges two ranked segment lists for the same query: concatenate, order by
// descending score (a before b on ties), then 1-D NMS dropping segments whose
// tIoU with a kept one exceeds temporal_nms_tiou.
std::vector<RankedSegment> post_fuse_segments(std::span<const RankedSegment> a,
                                              std::span<const RankedSegment> b,
                                              double temporal_nms_tiou);

}  // namespace egoforge::fusion
