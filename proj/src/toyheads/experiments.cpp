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

#include "egoforge/toyheads/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "egoforge/core/error.hpp"
#include "egoforge/metrics/edit_distance.hpp"
#include "egoforge/snippet/schedule.hpp"
#include "egoforge/toyheads/stub_features.hpp"

namespace egoforge::toyheads {

namespace {

struct Episode {
  const LatentVideo* video;
  int index;
  ActionSequence future;
};

ActionSequence future_actions(const LatentVideo& v, int i, int z) {
  ActionSequence out;
  for (int j = 0; j < z; ++j) {
    const auto& a = v.actions[static_cast<std::size_t>(i + j)];
    out.emplace_back(a.verb, a.noun);
  }
  return out;
}

std::vector<double> end_times(const LatentVideo& v) {
  std::vector<double> ends;
  for (const auto& a : v.actions) ends.push_back(a.end_s);
  return ends;
}

ForecastMatrix clip_forecast(const LtaExperimentConfig& cfg, const SyntheticWorld& world,
                             const LinearHead& head, const LatentVideo& v, const TemporalSegment& clip) {
  const auto x = lta_clip_feature(world, v, clip, cfg.feature_dim, cfg.feature_fps);
  return lta_marginals(head, head_forward(head, x));
}

AlphaResult score(double alpha, const std::vector<LtaForecast>& forecasts,
                  const std::map<metrics::ClipKey, ActionSequence>& gt, int k, Execution ex) {
  return {alpha, metrics::edit_distance_at_z(forecasts, gt, metrics::EdMode::verb, k, ex),
          metrics::edit_distance_at_z(forecasts, gt, metrics::EdMode::noun, k, ex),
          metrics::edit_distance_at_z(forecasts, gt, metrics::EdMode::action, k, ex)};
}

}  // namespace

LtaExperimentConfig::LtaExperimentConfig() {
  world.num_videos = 24;
  world.feature_noise = 1.0;
  world.scenario_signal = 0.3;
  world.label_signal = 0.3;
  train.optimizer = Optimizer::sgd_momentum;
  train.lr = 0.05;
  train.momentum = 0.9;
  train.epochs = 20;
  train.batch_size = 32;
}

std::vector<double> lta_clip_feature(const SyntheticWorld& world, const LatentVideo& video,
                                     const TemporalSegment& clip, int dim, double fps) {
  const auto first = static_cast<std::int64_t>(std::llround(clip.start_s() * fps));
  const auto last = std::max(first + 1, static_cast<std::int64_t>(std::llround(clip.end_s() * fps)));
  const snippet::Snippet snip{first, last, false};
  const LatentContext latent{&world, &video, fps};
  const auto verb = stub_features(video.video_id, snip, dim, FeatureVariant::verb, &latent);
  const auto noun = stub_features(video.video_id, snip, dim, FeatureVariant::noun, &latent);
  std::vector<double> x(verb.begin(), verb.end());
  x.insert(x.end(), noun.begin(), noun.end());
  return x;
}

LtaExperimentResult run_lta_experiment(const LtaExperimentConfig& cfg, Execution ex) {
  if (cfg.alphas.empty()) throw ParameterError("need at least one alpha");
  if (cfg.train_videos < 1 || cfg.train_videos >= cfg.world.num_videos) {
    throw ParameterError("train_videos must leave at least one held-out video");
  }
  if (cfg.train_clips_per_point < 1) throw ParameterError("need at least one training clip per point");
  const auto world = generate_world(cfg.world);
  const int z = cfg.world.z;
  const double max_alpha = *std::max_element(cfg.alphas.begin(), cfg.alphas.end());
  const double min_alpha = *std::min_element(cfg.alphas.begin(), cfg.alphas.end());
  if (cfg.clip_len_s > min_alpha || cfg.clip_len_s > cfg.train_alpha_s) {
    throw ParameterError("clip length exceeds the smallest window");
  }

  // Training clips: random clip positions inside the training window.
  std::mt19937_64 rng(cfg.train.seed ^ 0x5bd1e995ULL);
  TrainingSet train;
  for (int vi = 0; vi < cfg.train_videos; ++vi) {
    const auto& v = world.videos[static_cast<std::size_t>(vi)];
    const auto ends = end_times(v);
    for (int i : forecast_points(world, v, cfg.train_alpha_s)) {
      const auto window = snippet::observable_window(ends, static_cast<std::size_t>(i), cfg.train_alpha_s);
      for (int c = 0; c < cfg.train_clips_per_point; ++c) {
        const double start = std::uniform_real_distribution<double>(
            window.start_s(), window.end_s() - cfg.clip_len_s)(rng);
        const TemporalSegment clip(start, start + cfg.clip_len_s);
        train.push_back({lta_clip_feature(world, v, clip, cfg.feature_dim, cfg.feature_fps), {},
                         future_actions(v, i, z)});
      }
    }
  }
  auto head = LinearHead::classifier(cfg.head_kind, 2 * cfg.feature_dim, z, world.vocab());
  auto trained = train_head(std::move(head), train, cfg.train);

  std::vector<Episode> episodes;
  std::map<metrics::ClipKey, ActionSequence> gt;
  for (int vi = cfg.train_videos; vi < cfg.world.num_videos; ++vi) {
    const auto& v = world.videos[static_cast<std::size_t>(vi)];
    for (int i : forecast_points(world, v, max_alpha)) {
      episodes.push_back({&v, i, future_actions(v, i, z)});
      gt.emplace(metrics::ClipKey{v.video_id, i}, episodes.back().future);
    }
  }
  if (episodes.empty()) throw ParameterError("no held-out forecast points");

  LtaExperimentResult result;
  result.episodes = static_cast<int>(episodes.size());
  result.loss_curve = trained.loss_curve;
  const auto& h = trained.head;
  const auto n = static_cast<std::int64_t>(episodes.size());
  const fusion::VoteConfig vote_cfg{cfg.rule};

  auto run = [&](double alpha, bool center_only) {
    std::vector<std::optional<LtaForecast>> slots(episodes.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads_for(ex)) if (ex == Execution::parallel)
    for (std::int64_t e = 0; e < n; ++e) {
      const auto& ep = episodes[static_cast<std::size_t>(e)];
      const auto window = snippet::observable_window(end_times(*ep.video), static_cast<std::size_t>(ep.index), alpha);
      std::vector<TemporalSegment> clips;
      if (center_only) {
        const double mid = 0.5 * (window.start_s() + window.end_s());
        const double start = std::clamp(mid - 0.5 * cfg.clip_len_s, window.start_s(), window.end_s() - cfg.clip_len_s);
        clips.emplace_back(start, start + cfg.clip_len_s);
      } else {
        clips = snippet::sliding_clips(window, cfg.clip_len_s, cfg.clip_stride_s);
      }
      std::vector<ForecastMatrix> per_clip;
      for (const auto& c : clips) per_clip.push_back(clip_forecast(cfg, world, h, *ep.video, c));
      const auto vote = fusion::multi_clips_vote(per_clip, vote_cfg);
      slots[static_cast<std::size_t>(e)].emplace(ep.video->video_id, ep.index, z,
                                                 fusion::expand_candidates(vote.fused, cfg.k));
    }
    std::vector<LtaForecast> forecasts;
    for (auto& s : slots) forecasts.push_back(std::move(*s));
    return score(alpha, forecasts, gt, cfg.k, ex);
  };

  for (double alpha : cfg.alphas) result.voting.push_back(run(alpha, false));
  result.center_clip = run(min_alpha, true);
  result.head = std::move(trained.head);
  return result;
}

TrainingSet fhp_training_set(const SyntheticWorld& world, const AnnotationSet& fhp_gt,
                             double feature_noise) {
  std::map<std::string, const HandTrajectory*> latent;
  for (const auto& v : world.videos) {
    for (const auto& h : v.hands) latent.emplace(h.instance_id, &h);
  }
  const double w = world.cfg.width;
  const double hgt = world.cfg.height;
  TrainingSet out;
  for (const auto& r : fhp_gt.hands) {
    const auto it = latent.find(r.instance_id);
    if (it == latent.end()) throw DataError("no latent trajectory for " + r.instance_id);
    const auto& t = *it->second;
    std::vector<double> x{t.left_origin.x / w, t.left_origin.y / hgt, t.right_origin.x / w,
                          t.right_origin.y / hgt, t.left_velocity.x / w, t.left_velocity.y / hgt,
                          t.right_velocity.x / w, t.right_velocity.y / hgt, t.times[0]};
    std::mt19937_64 rng(stable_hash(r.instance_id, world.cfg.seed));
    std::normal_distribution<double> noise(0.0, feature_noise);
    for (double& v : x) v += noise(rng);
    const HandKeyframes kf(r.keyframes);
    const auto flat = kf.flatten();
    out.push_back({std::move(x), std::vector<double>(flat.begin(), flat.end()), {}});
  }
  return out;
}

}  // namespace egoforge::toyheads
