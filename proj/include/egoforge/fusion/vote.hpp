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

enum class CombineRule { mean_prob, majority };

// Ties always resolve to the lowest class index and every clip carries the
// same weight; only the combine rule is configurable.
struct VoteConfig {
  CombineRule combine_rule = CombineRule::mean_prob;
};

struct VoteResult {
  ActionSequence labels;
  ForecastMatrix fused;  // clip-averaged rows, for candidate expansion
};

// Combines per-clip forecasts from the sliding clips of one observable
// window. mean_prob averages the verb and noun rows over clips and takes the
// argmax per position. majority takes each clip's argmax and a plurality
// vote, breaking ties by the higher mean probability, then the lower index.
// Averaging sorts the per-entry values first, so the result does not depend
// on clip order even in the last bit.
VoteResult multi_clips_vote(std::span<const ForecastMatrix> per_clip, const VoteConfig& cfg = {});

// The k most probable action sequences when positions are independent and
// each action's probability is verb prob * noun prob. Sequences come out in
// descending probability; equal probabilities order by per-position rank.
std::vector<ActionSequence> expand_candidates(const ForecastMatrix& fused, int k);

}  // namespace egoforge::fusion
