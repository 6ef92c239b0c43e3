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

#include "egoforge/metrics/average_precision.hpp"

#include "egoforge/core/error.hpp"

namespace egoforge::metrics {

std::vector<std::size_t> rank_by_score(std::span<const ScoredItem> preds) {
  std::vector<std::size_t> order(preds.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return preds[a].score > preds[b].score;
  });
  return order;
}

double all_point_ap(std::span<const char> tp, std::size_t num_gt) {
  if (num_gt == 0) throw ParameterError("AP undefined without ground truth");
  const std::size_t n = tp.size();
  if (n == 0) return 0.0;

  std::vector<double> precision(n);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    hits += tp[i] ? 1 : 0;
    precision[i] = static_cast<double>(hits) / static_cast<double>(i + 1);
  }
  for (std::size_t i = n - 1; i > 0; --i) precision[i - 1] = std::max(precision[i - 1], precision[i]);

  // Recall only moves at true positives, by 1/num_gt each.
  double area = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (tp[i]) area += precision[i];
  }
  return area / static_cast<double>(num_gt);
}

}  // namespace egoforge::metrics
