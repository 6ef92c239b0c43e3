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

#include "egoforge/toyheads/linear_head.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "egoforge/core/error.hpp"

namespace egoforge::toyheads {

namespace {

int expected_out_dim(HeadKind kind, int z, const ActionVocabulary& v) {
  switch (kind) {
    case HeadKind::regression_20: return 20;
    case HeadKind::classifier_joint: return z * v.num_verbs * v.num_nouns;
    case HeadKind::classifier_factorized: return z * (v.num_verbs + v.num_nouns);
  }
  return 0;
}

}  // namespace

LinearHead::LinearHead(HeadKind kind, int in_dim, std::vector<double> weights,
                       std::vector<double> bias, int z, ActionVocabulary vocab)
    : kind_(kind), in_dim_(in_dim), z_(z), vocab_(vocab), weights_(std::move(weights)),
      bias_(std::move(bias)) {
  if (in_dim < 1) throw ParameterError("head input dim must be positive");
  if (kind != HeadKind::regression_20 && (z < 1 || vocab.num_verbs < 1 || vocab.num_nouns < 1)) {
    throw ParameterError("classifier head needs Z and a vocabulary");
  }
  const int out = expected_out_dim(kind, z, vocab);
  if (static_cast<int>(bias_.size()) != out) {
    throw ParameterError("head bias has " + std::to_string(bias_.size()) + " entries, expected " +
                         std::to_string(out));
  }
  if (weights_.size() != static_cast<std::size_t>(out) * static_cast<std::size_t>(in_dim)) {
    throw ParameterError("head weight matrix is not out_dim x in_dim");
  }
}

LinearHead LinearHead::regression(int in_dim) {
  return LinearHead(HeadKind::regression_20, in_dim,
                    std::vector<double>(20 * static_cast<std::size_t>(std::max(in_dim, 0))),
                    std::vector<double>(20));
}

LinearHead LinearHead::classifier(HeadKind kind, int in_dim, int z, ActionVocabulary vocab) {
  if (kind == HeadKind::regression_20) throw ParameterError("not a classifier kind");
  const int out = std::max(0, expected_out_dim(kind, z, vocab));
  return LinearHead(kind, in_dim,
                    std::vector<double>(static_cast<std::size_t>(out) * static_cast<std::size_t>(std::max(in_dim, 0))),
                    std::vector<double>(static_cast<std::size_t>(out)), z, vocab);
}

int LinearHead::classes_per_position() const {
  switch (kind_) {
    case HeadKind::classifier_joint: return vocab_.num_verbs * vocab_.num_nouns;
    case HeadKind::classifier_factorized: return vocab_.num_verbs + vocab_.num_nouns;
    case HeadKind::regression_20: break;
  }
  return 0;
}

std::vector<double> head_forward(const LinearHead& head, std::span<const double> x) {
  if (static_cast<int>(x.size()) != head.in_dim()) {
    throw ParameterError("input has " + std::to_string(x.size()) + " features, head expects " +
                         std::to_string(head.in_dim()));
  }
  const auto in = static_cast<std::size_t>(head.in_dim());
  const auto w = head.weights();
  std::vector<double> out(head.bias().begin(), head.bias().end());
  for (std::size_t o = 0; o < out.size(); ++o) {
    double acc = 0.0;
    for (std::size_t i = 0; i < in; ++i) acc += w[o * in + i] * x[i];
    out[o] += acc;
  }
  return out;
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> p(logits.begin(), logits.end());
  if (p.empty()) return p;
  const double m = *std::max_element(p.begin(), p.end());
  double sum = 0.0;
  for (double& v : p) {
    v = std::exp(v - m);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

ForecastMatrix lta_marginals(const LinearHead& head, std::span<const double> logits) {
  if (head.kind() == HeadKind::regression_20) throw ParameterError("regression head has no marginals");
  if (static_cast<int>(logits.size()) != head.out_dim()) throw ParameterError("logit count mismatch");
  const int z = head.z();
  const int nv = head.vocab().num_verbs;
  const int nn = head.vocab().num_nouns;
  const auto per = static_cast<std::size_t>(head.classes_per_position());
  std::vector<double> verb(static_cast<std::size_t>(z * nv), 0.0);
  std::vector<double> noun(static_cast<std::size_t>(z * nn), 0.0);
  for (int pos = 0; pos < z; ++pos) {
    const auto block = logits.subspan(static_cast<std::size_t>(pos) * per, per);
    double* vrow = verb.data() + pos * nv;
    double* nrow = noun.data() + pos * nn;
    if (head.kind() == HeadKind::classifier_joint) {
      const auto p = softmax(block);
      for (int a = 0; a < nv * nn; ++a) {
        vrow[a / nn] += p[static_cast<std::size_t>(a)];
        nrow[a % nn] += p[static_cast<std::size_t>(a)];
      }
    } else {
      const auto pv = softmax(block.first(static_cast<std::size_t>(nv)));
      const auto pn = softmax(block.subspan(static_cast<std::size_t>(nv)));
      std::copy(pv.begin(), pv.end(), vrow);
      std::copy(pn.begin(), pn.end(), nrow);
    }
  }
  return ForecastMatrix(z, head.vocab(), std::move(verb), std::move(noun));
}

}  // namespace egoforge::toyheads
