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

#include "egoforge/toyheads/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "egoforge/core/error.hpp"

namespace egoforge::toyheads {

LossValue l1_loss(std::span<const double> pred, std::span<const double> target) {
  if (pred.size() != target.size()) throw ParameterError("l1 inputs differ in length");
  if (pred.empty()) throw ParameterError("l1 of empty vectors");
  const auto n = static_cast<double>(pred.size());
  LossValue out{0.0, std::vector<double>(pred.size(), 0.0)};
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    out.loss += std::abs(d);
    out.grad[i] = d > 0.0 ? 1.0 / n : (d < 0.0 ? -1.0 / n : 0.0);
  }
  out.loss /= n;
  return out;
}

LossValue cross_entropy(std::span<const double> logits, int num_classes, std::span<const int> targets) {
  if (num_classes < 1) throw ParameterError("need at least one class");
  if (targets.empty()) throw ParameterError("cross entropy needs a target");
  const auto c = static_cast<std::size_t>(num_classes);
  if (logits.size() != c * targets.size()) throw ParameterError("logits do not match targets");
  const auto z = static_cast<double>(targets.size());
  LossValue out{0.0, std::vector<double>(logits.size(), 0.0)};
  for (std::size_t pos = 0; pos < targets.size(); ++pos) {
    const int t = targets[pos];
    if (t < 0 || t >= num_classes) {
      throw ParameterError("target " + std::to_string(t) + " out of range for " +
                           std::to_string(num_classes) + " classes");
    }
    const auto block = logits.subspan(pos * c, c);
    const double m = *std::max_element(block.begin(), block.end());
    double sum = 0.0;
    for (double v : block) sum += std::exp(v - m);
    const double log_z = m + std::log(sum);
    out.loss += log_z - block[static_cast<std::size_t>(t)];
    for (std::size_t k = 0; k < c; ++k) {
      out.grad[pos * c + k] = std::exp(block[k] - log_z) / z;
    }
    out.grad[pos * c + static_cast<std::size_t>(t)] -= 1.0 / z;
  }
  out.loss /= z;
  return out;
}

}  // namespace egoforge::toyheads
