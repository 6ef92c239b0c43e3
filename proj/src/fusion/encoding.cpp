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

#include "egoforge/fusion/encoding.hpp"

#include <cmath>

#include "egoforge/core/error.hpp"

namespace egoforge::fusion {

std::vector<double> box_positional_encoding(const BoundingBox& box, int dim, double canonical_w,
                                            double canonical_h) {
  if (dim <= 0 || dim % 8 != 0) throw ParameterError("encoding dim must be a positive multiple of 8");
  if (!(canonical_w > 0.0 && canonical_h > 0.0)) throw ParameterError("canonical size must be positive");
  const double coords[4] = {box.x1() / canonical_w, box.y1() / canonical_h, box.x2() / canonical_w,
                            box.y2() / canonical_h};
  const int block = dim / 4;
  std::vector<double> out(static_cast<std::size_t>(dim));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < block / 2; ++j) {
      const double freq = std::pow(10000.0, 2.0 * j / block);
      const double phase = coords[i] / freq;
      out[static_cast<std::size_t>(i * block + 2 * j)] = std::sin(phase);
      out[static_cast<std::size_t>(i * block + 2 * j + 1)] = std::cos(phase);
    }
  }
  return out;
}

void add_box_encoding(std::span<double> feature, const BoundingBox& box, double canonical_w,
                      double canonical_h) {
  const auto enc = box_positional_encoding(box, static_cast<int>(feature.size()), canonical_w, canonical_h);
  for (std::size_t i = 0; i < feature.size(); ++i) feature[i] += enc[i];
}

HandKeyframes multi_view_average(std::span<const HandKeyframes> views) {
  if (views.empty()) throw ParameterError("multi-view average needs at least one view");
  std::array<HandPose, kNumKeyframes> poses{};
  const double n = static_cast<double>(views.size());
  for (Keyframe k : kAllKeyframes) {
    auto& out = poses[static_cast<std::size_t>(k)];
    out.left_visible = false;
    out.right_visible = false;
    for (const auto& v : views) {
      const auto& p = v.at(k);
      out.left.x += p.left.x;
      out.left.y += p.left.y;
      out.right.x += p.right.x;
      out.right.y += p.right.y;
      out.left_visible = out.left_visible || p.left_visible;
      out.right_visible = out.right_visible || p.right_visible;
    }
    out.left.x /= n;
    out.left.y /= n;
    out.right.x /= n;
    out.right.y /= n;
  }
  return HandKeyframes(poses);
}

}  // namespace egoforge::fusion
