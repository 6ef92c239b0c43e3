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

namespace egoforge::fusion {

// Sinusoidal encoding of a box. Coordinates are normalized by the canonical
// (w, h, w, h); each normalized coordinate c fills a dim/4 block of
// interleaved pairs sin(c / 10000^(2j / (dim/4))), cos(...), j < dim/8, and
// the blocks follow x1, y1, x2, y2 order. dim must be a positive multiple of 8.
std::vector<double> box_positional_encoding(const BoundingBox& box, int dim, double canonical_w,
                                            double canonical_h);

// feature += box_positional_encoding(box, feature.size(), ...)
void add_box_encoding(std::span<double> feature, const BoundingBox& box, double canonical_w,
                      double canonical_h);

// Coordinate-wise mean of several views' hand predictions. A hand is visible
// in the result when any view marks it visible.
HandKeyframes multi_view_average(std::span<const HandKeyframes> views);

}  // namespace egoforge::fusion
