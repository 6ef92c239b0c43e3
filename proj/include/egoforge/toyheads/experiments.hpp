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

#include <optional>
#include <vector>

#include "egoforge/fusion/vote.hpp"
#include "egoforge/parallel.hpp"
#include "egoforge/toyheads/synth.hpp"
#include "egoforge/toyheads/trainer.hpp"

namespace egoforge::toyheads {

// Clip feature for the LTA toy task: verb and noun stubs of the clip at
// `fps`, concatenated ([verb | noun], 2 * dim values).
std::vector<double> lta_clip_feature(const SyntheticWorld& world, const LatentVideo& video,
                                     const TemporalSegment& clip, int dim, double fps);

struct LtaExperimentConfig {
  LtaExperimentConfig();

  SynthConfig world;
  int train_videos = 16;  // the remaining videos are held out for episodes
  int feature_dim = 16;
  double feature_fps = 15.0;
  double clip_len_s = 2.0;
  double clip_stride_s = 1.0;
  double train_alpha_s = 16.0;
  int train_clips_per_point = 4;
  HeadKind head_kind = HeadKind::classifier_joint;
  TrainConfig train;
  std::vector<double> alphas{2.0, 4.0, 8.0, 16.0};
  int k = 5;
  fusion::CombineRule rule = fusion::CombineRule::mean_prob;
};

struct AlphaResult {
  double alpha_s = 0.0;
  double verb_ed = 0.0;
  double noun_ed = 0.0;
  double action_ed = 0.0;
};

struct LtaExperimentResult {
  int episodes = 0;
  std::vector<AlphaResult> voting;   // one entry per configured alpha
  AlphaResult center_clip;           // single clip centered in the smallest window
  std::vector<double> loss_curve;
  std::optional<LinearHead> head;  // the trained head
};

// Trains a linear LTA head on clips drawn from the training videos, then on
// every held-out forecast point with at least max(alphas) seconds of history
// forecasts Z actions by voting over the sliding clips of each window.
LtaExperimentResult run_lta_experiment(const LtaExperimentConfig& cfg,
                                       Execution ex = Execution::parallel);

// FHP toy task: features are the latent hand origins and velocities
// (normalized by the canonical resolution) plus hash noise; targets are the
// annotated keyframe coordinates.
TrainingSet fhp_training_set(const SyntheticWorld& world, const AnnotationSet& fhp_gt,
                             double feature_noise = 0.01);

}  // namespace egoforge::toyheads
