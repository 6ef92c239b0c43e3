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

#include "egoforge/fusion/nms.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "egoforge/core/error.hpp"
#include "egoforge/metrics/iou.hpp"

namespace egoforge::fusion {

namespace {

void check_threshold(double t, const char* what) {
  if (!(t > 0.0 && t <= 1.0)) throw ParameterError(std::string(what) + " must lie in (0, 1]");
}

template <class Scores>
std::vector<std::size_t> descending(std::size_t n, Scores&& score) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return score(a) > score(b); });
  return order;
}

}  // namespace

std::vector<std::size_t> nms(std::span<const BoundingBox> boxes, std::span<const double> scores,
                             double iou_thresh, Execution ex) {
  if (boxes.size() != scores.size()) {
    throw ParameterError("nms: " + std::to_string(boxes.size()) + " boxes but " +
                         std::to_string(scores.size()) + " scores");
  }
  check_threshold(iou_thresh, "NMS IoU threshold");
  const auto order = descending(boxes.size(), [&](std::size_t i) { return scores[i]; });
  const auto n = static_cast<std::int64_t>(order.size());
  std::vector<char> suppressed(order.size(), 0);
  std::vector<std::size_t> kept;
  const int threads = threads_for(ex);
  for (std::int64_t i = 0; i < n; ++i) {
    if (suppressed[static_cast<std::size_t>(i)]) continue;
    const auto& anchor = boxes[order[static_cast<std::size_t>(i)]];
    kept.push_back(order[static_cast<std::size_t>(i)]);
#pragma omp parallel for schedule(static) num_threads(threads) if (threads > 1 && n - i > 256)
    for (std::int64_t j = i + 1; j < n; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      if (!suppressed[uj] && metrics::box_iou(anchor, boxes[order[uj]]) > iou_thresh) suppressed[uj] = 1;
    }
  }
  return kept;
}

std::vector<std::size_t> topk_indices(std::span<const StaInstance> preds, int k) {
  if (k < 1) throw ParameterError("k must be at least 1");
  auto order = descending(preds.size(), [&](std::size_t i) { return preds[i].score; });
  if (order.size() > static_cast<std::size_t>(k)) order.resize(static_cast<std::size_t>(k));
  return order;
}

std::vector<StaInstance> topk_by_noun_score(std::span<const StaInstance> preds, int k) {
  std::vector<StaInstance> out;
  for (std::size_t i : topk_indices(preds, k)) out.push_back(preds[i]);
  return out;
}

KeyframePredictions splice_and_nms(const KeyframePredictions& a, const KeyframePredictions& b,
                                   const FusionConfig& cfg, Execution ex) {
  check_threshold(cfg.nms_iou_thresh, "fusion NMS IoU threshold");
  std::vector<std::string> keys;
  for (const auto& [k, _] : a) keys.push_back(k);
  for (const auto& [k, _] : b) {
    if (!a.contains(k)) keys.push_back(k);
  }
  std::sort(keys.begin(), keys.end());

  std::vector<std::vector<StaInstance>> fused(keys.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads_for(ex)) if (ex == Execution::parallel)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(keys.size()); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    std::vector<StaInstance> spliced;
    if (const auto it = a.find(keys[ui]); it != a.end()) spliced = it->second;
    if (const auto it = b.find(keys[ui]); it != b.end()) {
      spliced.insert(spliced.end(), it->second.begin(), it->second.end());
    }
    std::vector<BoundingBox> boxes;
    std::vector<double> scores;
    for (const auto& s : spliced) {
      boxes.push_back(s.box);
      scores.push_back(s.score);
    }
    for (std::size_t k : nms(boxes, scores, cfg.nms_iou_thresh, Execution::serial)) {
      fused[ui].push_back(spliced[k]);
    }
  }
  KeyframePredictions out;
  for (std::size_t i = 0; i < keys.size(); ++i) out.emplace(keys[i], std::move(fused[i]));
  return out;
}

std::vector<RankedSegment> post_fuse_segments(std::span<const RankedSegment> a,
                                              std::span<const RankedSegment> b,
                                              double temporal_nms_tiou) {
  check_threshold(temporal_nms_tiou, "temporal NMS tIoU");
  std::vector<RankedSegment> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  const auto order = descending(all.size(), [&](std::size_t i) { return all[i].score; });
  std::vector<RankedSegment> kept;
  for (std::size_t i : order) {
    const bool overlaps = std::any_of(kept.begin(), kept.end(), [&](const RankedSegment& k) {
      return metrics::temporal_iou(k.segment, all[i].segment) > temporal_nms_tiou;
    });
    if (!overlaps) kept.push_back(all[i]);
  }
  return kept;
}

}  // namespace egoforge::fusion
