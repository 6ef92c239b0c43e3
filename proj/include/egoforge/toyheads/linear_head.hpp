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

namespace egoforge::toyheads {

// regression_20: future hand coordinates (5 keyframes x 2 hands x (x, y)).
// classifier_joint: Z x (Cv * Cn) logits, one joint action class per position.
// classifier_factorized: Z x (Cv + Cn) logits, verb and noun scored apart.
enum class HeadKind { regression_20, classifier_joint, classifier_factorized };

class LinearHead {
 public:
  // Weights are row-major out_dim x in_dim.
  LinearHead(HeadKind kind, int in_dim, std::vector<double> weights, std::vector<double> bias,
             int z = 0, ActionVocabulary vocab = {});

  // Zero-initialized heads.
  static LinearHead regression(int in_dim);
  static LinearHead classifier(HeadKind kind, int in_dim, int z, ActionVocabulary vocab);

  HeadKind kind() const { return kind_; }
  int in_dim() const { return in_dim_; }
  int out_dim() const { return static_cast<int>(bias_.size()); }
  int z() const { return z_; }
  const ActionVocabulary& vocab() const { return vocab_; }
  // Logits per position for the classifier kinds.
  int classes_per_position() const;

  std::span<const double> weights() const { return weights_; }
  std::span<const double> bias() const { return bias_; }
  std::span<double> weights() { return weights_; }
  std::span<double> bias() { return bias_; }

 private:
  HeadKind kind_;
  int in_dim_;
  int z_;
  ActionVocabulary vocab_;
  std::vector<double> weights_;
  std::vector<double> bias_;
};

// weight . x + bias.
std::vector<double> head_forward(const LinearHead& head, std::span<const double> x);

// Per-position verb and noun distributions from classifier logits. The joint
// kind takes a softmax over Cv * Cn actions and sums it into marginals; the
// factorized kind takes separate verb and noun softmaxes.
ForecastMatrix lta_marginals(const LinearHead& head, std::span<const double> logits);

// Numerically stable softmax (max subtracted).
std::vector<double> softmax(std::span<const double> logits);

}  // namespace egoforge::toyheads
