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

#include "egoforge/metrics/iou.hpp"

#include <algorithm>
#include <cstdint>

namespace egoforge::metrics {

double temporal_iou(const TemporalSegment& a, const TemporalSegment& b) {
  const bool a_point = a.length() == 0.0;
  const bool b_point = b.length() == 0.0;
  if (a_point && b_point) return a.start_s() == b.start_s() ? 1.0 : 0.0;
  if (a_point || b_point) return 0.0;
  const double inter =
      std::max(0.0, std::min(a.end_s(), b.end_s()) - std::max(a.start_s(), b.start_s()));
  const double uni = a.length() + b.length() - inter;
  return inter / uni;
}

double box_iou(const BoundingBox& a, const BoundingBox& b) {
  const double area_a = a.area();
  const double area_b = b.area();
  if (area_a <= 0.0 || area_b <= 0.0) return 0.0;
  const double iw = std::min(a.x2(), b.x2()) - std::max(a.x1(), b.x1());
  const double ih = std::min(a.y2(), b.y2()) - std::max(a.y1(), b.y1());
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  return inter / (area_a + area_b - inter);
}

std::vector<double> box_iou_matrix(std::span<const BoundingBox> a, std::span<const BoundingBox> b,
                                   Execution ex) {
  std::vector<double> out(a.size() * b.size());
  const auto rows = static_cast<std::int64_t>(a.size());
  const std::size_t cols = b.size();
#pragma omp parallel for schedule(static) num_threads(threads_for(ex)) if (ex == Execution::parallel)
  for (std::int64_t i = 0; i < rows; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    for (std::size_t j = 0; j < cols; ++j) out[ui * cols + j] = box_iou(a[ui], b[j]);
  }
  return out;
}

}  // namespace egoforge::metrics
