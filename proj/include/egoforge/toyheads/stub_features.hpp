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
#include <string_view>
#include <vector>

#include "egoforge/core/types.hpp"
#include "egoforge/parallel.hpp"
#include "egoforge/snippet/schedule.hpp"
#include "egoforge/toyheads/synth.hpp"

namespace egoforge::toyheads {

enum class FeatureVariant { verb, noun };

// Generative state a stub extractor may peek at so that heads have
// something to learn. `snippet_fps` converts snippet frames to seconds.
struct LatentContext {
  const SyntheticWorld* world = nullptr;
  const LatentVideo* video = nullptr;
  double snippet_fps = 15.0;
};

// Deterministic stand-in for a backbone feature. The base is a standard
// normal vector seeded by a hash of (video_id, snippet, variant), scaled by
// the world's feature_noise when a latent is given. With a latent, two
// label-dependent directions are added: the video scenario (weight
// scenario_signal) and the mean over the snippet's frames of the verb or noun
// in progress (weight label_signal).
std::vector<float> stub_features(std::string_view video_id, const snippet::Snippet& snip, int dim,
                                 FeatureVariant variant, const LatentContext* latent = nullptr);

// One stub row per scheduled snippet; rows are independent, so the parallel
// path fills them concurrently.
FeatureMatrix stub_feature_matrix(std::string_view video_id, const snippet::SnippetSchedule& schedule,
                                  int dim, FeatureVariant variant, const LatentContext* latent = nullptr,
                                  Execution ex = Execution::parallel);

// Fixed pseudo-random direction (standard normal entries) for a label.
std::vector<double> label_direction(std::uint64_t seed, std::string_view kind, int id, int dim);

// 64-bit FNV-1a over a byte string, finished with a splitmix64 round.
std::uint64_t stable_hash(std::string_view bytes, std::uint64_t salt = 0);

}  // namespace egoforge::toyheads
