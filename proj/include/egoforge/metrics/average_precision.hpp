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

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <unordered_map>
#include <vector>

namespace egoforge::metrics {

// A prediction reduced to what matching needs: the group it belongs to
// (video or keyframe) and its score.
struct ScoredItem {
  std::size_t group = 0;
  double score = 0.0;
};

// Prediction indices in descending score order; ties keep input order.
std::vector<std::size_t> rank_by_score(std::span<const ScoredItem> preds);

// Greedy score-ordered matching. Each prediction, in rank order, takes the
// unmatched ground truth of its group with the highest overlap at or above
// `thresh` (ties go to the lower ground-truth index). `overlap(p, g)` returns
// a negative value for pairs that may never match. The result holds one
// true-positive flag per rank position.
template <class Overlap>
std::vector<char> greedy_match(std::span<const ScoredItem> preds,
                               std::span<const std::size_t> gt_groups, double thresh,
                               Overlap&& overlap) {
  std::unordered_map<std::size_t, std::vector<std::size_t>> by_group;
  for (std::size_t g = 0; g < gt_groups.size(); ++g) by_group[gt_groups[g]].push_back(g);

  const auto order = rank_by_score(preds);
  std::vector<char> matched(gt_groups.size(), 0);
  std::vector<char> tp(order.size(), 0);
  for (std::size_t r = 0; r < order.size(); ++r) {
    const std::size_t p = order[r];
    const auto it = by_group.find(preds[p].group);
    if (it == by_group.end()) continue;
    std::size_t best = gt_groups.size();
    double best_overlap = -std::numeric_limits<double>::infinity();
    for (std::size_t g : it->second) {
      if (matched[g]) continue;
      const double ov = overlap(p, g);
      if (ov >= thresh && ov > best_overlap) {
        best = g;
        best_overlap = ov;
      }
    }
    if (best != gt_groups.size()) {
      matched[best] = 1;
      tp[r] = 1;
    }
  }
  return tp;
}

// All-point interpolated AP: area under the monotone precision envelope of
// the ranked true-positive flags. Zero when there are no predictions.
double all_point_ap(std::span<const char> tp_in_rank_order, std::size_t num_gt);

}  // namespace egoforge::metrics
