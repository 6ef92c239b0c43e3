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

#include "egoforge/toyheads/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "egoforge/core/error.hpp"

namespace egoforge::toyheads {

void TrainConfig::validate() const {
  if (!(std::isfinite(lr) && lr >= 0.0)) throw ParameterError("learning rate must be nonnegative");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw ParameterError("momentum must lie in [0, 1)");
  if (epochs < 0) throw ParameterError("epochs must be nonnegative");
  if (batch_size < 0) throw ParameterError("batch size must be nonnegative");
}

LossValue head_loss(const LinearHead& head, std::span<const double> outputs, const TrainExample& ex) {
  if (head.kind() == HeadKind::regression_20) {
    if (ex.coords.size() != 20) throw ParameterError("regression target needs 20 coordinates");
    return l1_loss(outputs, ex.coords);
  }
  if (static_cast<int>(ex.actions.size()) != head.z()) {
    throw ParameterError("target sequence length " + std::to_string(ex.actions.size()) +
                         " != Z=" + std::to_string(head.z()));
  }
  const int nv = head.vocab().num_verbs;
  const int nn = head.vocab().num_nouns;
  if (head.kind() == HeadKind::classifier_joint) {
    std::vector<int> targets;
    for (const auto& a : ex.actions) targets.push_back(a.verb_id() * nn + a.noun_id());
    return cross_entropy(outputs, nv * nn, targets);
  }

  // Factorized: split each position block into its verb and noun parts.
  const auto per = static_cast<std::size_t>(nv + nn);
  std::vector<double> vl, nl;
  std::vector<int> vt, nt;
  for (std::size_t pos = 0; pos < ex.actions.size(); ++pos) {
    const auto block = outputs.subspan(pos * per, per);
    vl.insert(vl.end(), block.begin(), block.begin() + nv);
    nl.insert(nl.end(), block.begin() + nv, block.end());
    vt.push_back(ex.actions[pos].verb_id());
    nt.push_back(ex.actions[pos].noun_id());
  }
  const auto lv = cross_entropy(vl, nv, vt);
  const auto ln = cross_entropy(nl, nn, nt);
  LossValue out{lv.loss + ln.loss, std::vector<double>(outputs.size())};
  for (std::size_t pos = 0; pos < ex.actions.size(); ++pos) {
    for (int v = 0; v < nv; ++v) out.grad[pos * per + static_cast<std::size_t>(v)] = lv.grad[pos * static_cast<std::size_t>(nv) + static_cast<std::size_t>(v)];
    for (int n = 0; n < nn; ++n) out.grad[pos * per + static_cast<std::size_t>(nv + n)] = ln.grad[pos * static_cast<std::size_t>(nn) + static_cast<std::size_t>(n)];
  }
  return out;
}

double mean_loss(const LinearHead& head, const TrainingSet& data) {
  if (data.empty()) throw ParameterError("empty training set");
  double total = 0.0;
  for (const auto& ex : data) total += head_loss(head, head_forward(head, ex.x), ex).loss;
  return total / static_cast<double>(data.size());
}

TrainResult train_head(LinearHead head, const TrainingSet& data, const TrainConfig& cfg) {
  cfg.validate();
  if (data.empty()) throw ParameterError("empty training set");
  for (const auto& ex : data) {
    if (static_cast<int>(ex.x.size()) != head.in_dim()) throw ParameterError("example dim does not match head");
  }

  const auto in = static_cast<std::size_t>(head.in_dim());
  const auto out = static_cast<std::size_t>(head.out_dim());
  const std::size_t batch = cfg.batch_size == 0 ? data.size() : static_cast<std::size_t>(cfg.batch_size);
  const double mu = cfg.optimizer == Optimizer::sgd_momentum ? cfg.momentum : 0.0;

  std::vector<double> gw(out * in), gb(out);
  std::vector<double> vw(out * in, 0.0), vb(out, 0.0);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(cfg.seed);

  TrainResult result{head, mean_loss(head, data), {}};
  if (!std::isfinite(result.initial_loss)) throw DivergenceError(0, "initial loss is not finite");

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t b0 = 0; b0 < order.size(); b0 += batch) {
      const std::size_t b1 = std::min(order.size(), b0 + batch);
      std::fill(gw.begin(), gw.end(), 0.0);
      std::fill(gb.begin(), gb.end(), 0.0);
      for (std::size_t i = b0; i < b1; ++i) {
        const auto& ex = data[order[i]];
        const auto g = head_loss(head, head_forward(head, ex.x), ex).grad;
        for (std::size_t o = 0; o < out; ++o) {
          if (g[o] == 0.0) continue;
          gb[o] += g[o];
          for (std::size_t k = 0; k < in; ++k) gw[o * in + k] += g[o] * ex.x[k];
        }
      }
      const double scale = 1.0 / static_cast<double>(b1 - b0);
      auto w = head.weights();
      auto bias = head.bias();
      for (std::size_t j = 0; j < w.size(); ++j) {
        vw[j] = mu * vw[j] + gw[j] * scale;
        w[j] -= cfg.lr * vw[j];
      }
      for (std::size_t o = 0; o < out; ++o) {
        vb[o] = mu * vb[o] + gb[o] * scale;
        bias[o] -= cfg.lr * vb[o];
      }
    }
    const double loss = mean_loss(head, data);
    if (!std::isfinite(loss)) {
      throw DivergenceError(epoch, "training diverged at epoch " + std::to_string(epoch));
    }
    result.loss_curve.push_back(loss);
  }
  result.head = std::move(head);
  return result;
}

}  // namespace egoforge::toyheads
