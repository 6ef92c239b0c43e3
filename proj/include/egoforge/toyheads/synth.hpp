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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "egoforge/core/dataset.hpp"
#include "egoforge/core/types.hpp"

namespace egoforge::toyheads {

struct SynthConfig {
  std::uint64_t seed = 0;
  int num_videos = 8;
  double min_video_len_s = 80.0;
  double max_video_len_s = 120.0;
  double fps = 30.0;

  int num_verbs = 4;
  int num_nouns = 5;
  int z = 20;
  int num_scenarios = 4;
  int mq_classes = 6;
  int nlq_queries_per_video = 3;
  int fhp_instances_per_video = 4;
  int sta_keyframes_per_video = 3;
  int scod_classes = 1;

  double hand_noise_px = 2.0;
  double feature_noise = 1.0;    // std of the hash-seeded feature component
  double label_signal = 0.6;     // weight of the current-action direction
  double scenario_signal = 0.6;  // weight of the per-video scenario direction
  double width = 640.0;          // canonical resolution
  double height = 480.0;

  // Throws ParameterError when a count is nonpositive or a noise negative.
  void validate() const;
};

// One annotated action of the latent timeline.
struct ActionSegment {
  double start_s = 0.0;
  double end_s = 0.0;
  int verb = 0;
  int noun = 0;
};

// Future-hand latent: linear motion per hand plus the keyframe times
// relative to the pre-condition frame (c > 0 > p1 > p2 > p3).
struct HandTrajectory {
  std::string instance_id;
  Point2 left_origin, left_velocity;
  Point2 right_origin, right_velocity;
  std::array<double, kNumKeyframes> times{};
  std::array<std::array<bool, 2>, kNumKeyframes> visible{};

  Point2 at(Keyframe k, Hand h) const;
};

struct LatentVideo {
  std::string video_id;
  std::int64_t num_frames = 0;
  int scenario = 0;
  std::vector<ActionSegment> actions;
  std::vector<HandTrajectory> hands;
};

// Dataset generator state. The scenario of a video fixes a peaked action
// distribution and a successor map; the timeline is a Markov chain that
// follows the successor with probability kFollowProb and otherwise draws
// from the scenario distribution.
struct SyntheticWorld {
  SynthConfig cfg;
  std::vector<std::vector<double>> scenario_dist;  // [scenario][action]
  std::vector<std::vector<int>> successor;         // [scenario][action]
  std::vector<LatentVideo> videos;

  static constexpr double kFollowProb = 0.3;

  ActionVocabulary vocab() const { return {cfg.num_verbs, cfg.num_nouns}; }
  // Action in progress at time t (the last one when t is past the end).
  const ActionSegment& action_at(const LatentVideo& v, double t) const;
};

SyntheticWorld generate_world(const SynthConfig& cfg);

// Forecast points of a video: clip indices i with i >= 1, i + Z actions
// available, and at least `min_history_s` seconds before the window end.
std::vector<int> forecast_points(const SyntheticWorld& world, const LatentVideo& v,
                                 double min_history_s);

struct SyntheticDataset {
  AnnotationSet mq, nlq, fhp, lta, sta, scod;
};

// Ground truth for all six tracks. Deterministic given cfg.seed; MQ draws at
// most one instance per (video, class) and NLQ query ids are unique.
SyntheticDataset generate_synthetic(const SynthConfig& cfg);
SyntheticDataset annotate(const SyntheticWorld& world);

// The ground truth restated as predictions with score 1.
AnnotationSet perfect_predictions(const AnnotationSet& gt);

}  // namespace egoforge::toyheads
