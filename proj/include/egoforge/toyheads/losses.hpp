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

namespace egoforge::toyheads {

struct LossValue {
  double loss = 0.0;
  std::vector<double> grad;  // d loss / d input, same length as the input
};

// Mean absolute error. The subgradient is sign(pred - target) / n, taken as 0
// at exact ties.
LossValue l1_loss(std::span<const double> pred, std::span<const double> target);

// Mean over positions of -log softmax(logits)[target]. `logits` holds one
// block of `num_classes` values per target.
LossValue cross_entropy(std::span<const double> logits, int num_classes, std::span<const int> targets);

}  // namespace egoforge::toyheads
