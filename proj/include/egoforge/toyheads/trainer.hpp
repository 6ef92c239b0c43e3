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

#include <cstdint>
#include <span>
#include <vector>

#include "egoforge/core/types.hpp"
#include "egoforge/toyheads/linear_head.hpp"
#include "egoforge/toyheads/losses.hpp"

namespace egoforge::toyheads {

// One training pair. Regression heads read `coords` (20 values), classifier
// heads read `actions` (Z labels).
struct TrainExample {
  std::vector<double> x;
  std::vector<double> coords;
  ActionSequence actions;
};

using TrainingSet = std::vector<TrainExample>;

enum class Optimizer { sgd, sgd_momentum };

struct TrainConfig {
  Optimizer optimizer = Optimizer::sgd;
  double lr = 0.1;
  double momentum = 0.9;
  int epochs = 10;
  int batch_size = 0;  // 0 = full batch
  std::uint64_t seed = 0;

  void validate() const;
};

struct TrainResult {
  LinearHead head;
  double initial_loss = 0.0;
  std::vector<double> loss_curve;  // training-set mean loss after each epoch
};

// Loss of one example and its gradient with respect to the head outputs: L1
// for regression, cross entropy over joint actions, or the sum of the verb
// and noun cross entropies for the factorized head.
LossValue head_loss(const LinearHead& head, std::span<const double> outputs, const TrainExample& ex);

double mean_loss(const LinearHead& head, const TrainingSet& data);

// Minibatch SGD over a seeded shuffle. Deterministic given cfg.seed; throws
// DivergenceError carrying the epoch (1-based) at the first non-finite loss.
TrainResult train_head(LinearHead head, const TrainingSet& data, const TrainConfig& cfg);

}  // namespace egoforge::toyheads
