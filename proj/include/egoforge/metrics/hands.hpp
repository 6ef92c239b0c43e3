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

#include <cstddef>
#include <optional>
#include <span>

#include "egoforge/core/types.hpp"

namespace egoforge::metrics {

// Displacement for one hand of one instance, over the keyframes where the
// ground-truth hand is visible. `contact` needs keyframe c to be visible.
struct InstanceDisplacement {
  std::optional<double> mean;
  std::optional<double> contact;
};

InstanceDisplacement hand_displacement(const HandKeyframes& pred, const HandKeyframes& gt, Hand hand);

struct HandSummary {
  std::optional<double> mean_disp;     // absent when no instance had a visible keyframe
  std::optional<double> contact_disp;  // absent when c was never visible
  std::size_t mean_count = 0;
  std::size_t contact_count = 0;
};

struct HandDisplacementReport {
  HandSummary left;
  HandSummary right;
};

// Dataset level: per-instance per-hand distances averaged over instances.
HandDisplacementReport hand_displacement(std::span<const HandKeyframes> preds,
                                         std::span<const HandKeyframes> gts);

}  // namespace egoforge::metrics
