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
#include <vector>

#include "egoforge/core/types.hpp"
#include "egoforge/parallel.hpp"

namespace egoforge::metrics {

// Intersection over union of two intervals. Two zero-length segments score 1
// when they sit on the same point and 0 otherwise; a zero-length segment
// against a proper interval scores 0.
double temporal_iou(const TemporalSegment& a, const TemporalSegment& b);

// Area IoU. Zero-area boxes overlap nothing, including themselves.
double box_iou(const BoundingBox& a, const BoundingBox& b);

// Row-major |a| x |b| IoU matrix.
std::vector<double> box_iou_matrix(std::span<const BoundingBox> a, std::span<const BoundingBox> b,
                                   Execution ex = Execution::parallel);

}  // namespace egoforge::metrics
