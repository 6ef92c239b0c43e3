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

#include "egoforge/metrics/hands.hpp"

#include <cmath>

#include "egoforge/core/error.hpp"

namespace egoforge::metrics {

namespace {

double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

HandSummary summarize(std::span<const HandKeyframes> preds, std::span<const HandKeyframes> gts,
                      Hand hand) {
  HandSummary s;
  double mean_sum = 0.0;
  double contact_sum = 0.0;
  for (std::size_t i = 0; i < gts.size(); ++i) {
    const auto d = hand_displacement(preds[i], gts[i], hand);
    if (d.mean) {
      mean_sum += *d.mean;
      ++s.mean_count;
    }
    if (d.contact) {
      contact_sum += *d.contact;
      ++s.contact_count;
    }
  }
  if (s.mean_count > 0) s.mean_disp = mean_sum / static_cast<double>(s.mean_count);
  if (s.contact_count > 0) s.contact_disp = contact_sum / static_cast<double>(s.contact_count);
  return s;
}

}  // namespace

InstanceDisplacement hand_displacement(const HandKeyframes& pred, const HandKeyframes& gt, Hand hand) {
  InstanceDisplacement out;
  double sum = 0.0;
  int visible = 0;
  for (Keyframe k : kAllKeyframes) {
    const auto& g = gt.at(k);
    if (!g.visible(hand)) continue;
    const double d = distance(pred.at(k).at(hand), g.at(hand));
    sum += d;
    ++visible;
    if (k == Keyframe::c) out.contact = d;
  }
  if (visible > 0) out.mean = sum / visible;
  return out;
}

HandDisplacementReport hand_displacement(std::span<const HandKeyframes> preds,
                                         std::span<const HandKeyframes> gts) {
  if (preds.size() != gts.size()) {
    throw DataError("hand prediction count " + std::to_string(preds.size()) +
                    " does not match ground truth count " + std::to_string(gts.size()));
  }
  return {summarize(preds, gts, Hand::left), summarize(preds, gts, Hand::right)};
}

}  // namespace egoforge::metrics
