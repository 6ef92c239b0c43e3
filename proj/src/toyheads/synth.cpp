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

#include "egoforge/toyheads/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "egoforge/core/error.hpp"

namespace egoforge::toyheads {

namespace {

// Keyframe offsets relative to the pre-condition frame, in tag order
// (c, p, p1, p2, p3); c is drawn per instance.
constexpr double kPreOffsets[kNumKeyframes] = {0.0, 0.0, -0.5, -1.0, -1.5};

std::string video_name(int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "vid_%03d", i);
  return buf;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int pick(std::mt19937_64& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

int draw(std::mt19937_64& rng, const std::vector<double>& dist) {
  return std::discrete_distribution<int>(dist.begin(), dist.end())(rng);
}

// Rounds to 1 ms so annotation files stay short and exact.
double ms(double t) { return std::round(t * 1000.0) / 1000.0; }

void build_scenarios(SyntheticWorld& w, std::mt19937_64& rng) {
  const int num_actions = w.cfg.num_verbs * w.cfg.num_nouns;
  for (int s = 0; s < w.cfg.num_scenarios; ++s) {
    // Favored actions use distinct verbs and distinct nouns, so the most
    // likely verb and noun marginals agree with the most likely action.
    std::vector<int> verbs(static_cast<std::size_t>(w.cfg.num_verbs));
    std::vector<int> nouns(static_cast<std::size_t>(w.cfg.num_nouns));
    std::iota(verbs.begin(), verbs.end(), 0);
    std::iota(nouns.begin(), nouns.end(), 0);
    std::shuffle(verbs.begin(), verbs.end(), rng);
    std::shuffle(nouns.begin(), nouns.end(), rng);
    std::vector<double> dist(static_cast<std::size_t>(num_actions), 0.1 / num_actions);
    const double favored[3] = {0.7, 0.1, 0.1};
    const int num_favored = std::min({3, w.cfg.num_verbs, w.cfg.num_nouns});
    for (int i = 0; i < num_favored; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      dist[static_cast<std::size_t>(verbs[ui] * w.cfg.num_nouns + nouns[ui])] += favored[i];
    }
    double total = 0.0;
    for (double d : dist) total += d;
    for (double& d : dist) d /= total;
    w.scenario_dist.push_back(std::move(dist));

    std::vector<int> succ(static_cast<std::size_t>(num_actions));
    for (int a = 0; a < num_actions; ++a) succ[static_cast<std::size_t>(a)] = pick(rng, num_actions);
    w.successor.push_back(std::move(succ));
  }
}

HandTrajectory make_hands(const SynthConfig& cfg, std::mt19937_64& rng, std::string id) {
  HandTrajectory h;
  h.instance_id = std::move(id);
  h.left_origin = {uniform(rng, 0.15, 0.45) * cfg.width, uniform(rng, 0.4, 0.9) * cfg.height};
  h.right_origin = {uniform(rng, 0.55, 0.85) * cfg.width, uniform(rng, 0.4, 0.9) * cfg.height};
  h.left_velocity = {uniform(rng, -40.0, 40.0), uniform(rng, -40.0, 40.0)};
  h.right_velocity = {uniform(rng, -40.0, 40.0), uniform(rng, -40.0, 40.0)};
  for (int k = 0; k < kNumKeyframes; ++k) h.times[static_cast<std::size_t>(k)] = kPreOffsets[k];
  h.times[0] = ms(uniform(rng, 0.3, 1.0));
  for (auto& vis : h.visible) {
    vis[0] = uniform(rng, 0.0, 1.0) < 0.9;
    vis[1] = uniform(rng, 0.0, 1.0) < 0.9;
  }
  return h;
}

}  // namespace

void SynthConfig::validate() const {
  if (num_videos < 1 || num_verbs < 1 || num_nouns < 1 || z < 1 || num_scenarios < 1 ||
      mq_classes < 1 || nlq_queries_per_video < 0 || fhp_instances_per_video < 0 ||
      sta_keyframes_per_video < 0 || scod_classes < 1) {
    throw ParameterError("synthetic counts must be positive");
  }
  if (!(min_video_len_s > 0.0 && max_video_len_s >= min_video_len_s)) {
    throw ParameterError("video length range is invalid");
  }
  if (!(fps > 0.0)) throw ParameterError("fps must be positive");
  if (hand_noise_px < 0.0 || feature_noise < 0.0 || label_signal < 0.0 || scenario_signal < 0.0) {
    throw ParameterError("noise and signal levels must be nonnegative");
  }
  if (!(width > 0.0 && height > 0.0)) throw ParameterError("canonical resolution must be positive");
}

Point2 HandTrajectory::at(Keyframe k, Hand h) const {
  const double t = times[static_cast<std::size_t>(k)];
  const Point2& o = h == Hand::left ? left_origin : right_origin;
  const Point2& v = h == Hand::left ? left_velocity : right_velocity;
  return {o.x + v.x * t, o.y + v.y * t};
}

const ActionSegment& SyntheticWorld::action_at(const LatentVideo& v, double t) const {
  const auto it = std::upper_bound(v.actions.begin(), v.actions.end(), t,
                                   [](double x, const ActionSegment& a) { return x < a.end_s; });
  return it == v.actions.end() ? v.actions.back() : *it;
}

SyntheticWorld generate_world(const SynthConfig& cfg) {
  cfg.validate();
  SyntheticWorld w;
  w.cfg = cfg;
  std::mt19937_64 rng(cfg.seed);
  build_scenarios(w, rng);

  for (int i = 0; i < cfg.num_videos; ++i) {
    LatentVideo v;
    v.video_id = video_name(i);
    const double len = ms(uniform(rng, cfg.min_video_len_s, cfg.max_video_len_s));
    v.num_frames = static_cast<std::int64_t>(std::floor(len * cfg.fps));
    const double duration = static_cast<double>(v.num_frames) / cfg.fps;
    v.scenario = pick(rng, cfg.num_scenarios);
    const auto& dist = w.scenario_dist[static_cast<std::size_t>(v.scenario)];
    const auto& succ = w.successor[static_cast<std::size_t>(v.scenario)];

    int action = draw(rng, dist);
    double t = 0.0;
    while (t < duration) {
      const double end = std::min(duration, ms(t + uniform(rng, 1.0, 3.0)));
      v.actions.push_back({t, end, action / cfg.num_nouns, action % cfg.num_nouns});
      t = end;
      action = uniform(rng, 0.0, 1.0) < SyntheticWorld::kFollowProb
                   ? succ[static_cast<std::size_t>(action)]
                   : draw(rng, dist);
    }
    for (int h = 0; h < cfg.fhp_instances_per_video; ++h) {
      v.hands.push_back(make_hands(cfg, rng, v.video_id + "_h" + std::to_string(h)));
    }
    w.videos.push_back(std::move(v));
  }
  return w;
}

std::vector<int> forecast_points(const SyntheticWorld& world, const LatentVideo& v,
                                 double min_history_s) {
  std::vector<int> out;
  const int n = static_cast<int>(v.actions.size());
  for (int i = 1; i + world.cfg.z <= n; ++i) {
    if (v.actions[static_cast<std::size_t>(i - 1)].end_s >= min_history_s) out.push_back(i);
  }
  return out;
}

SyntheticDataset annotate(const SyntheticWorld& world) {
  const auto& cfg = world.cfg;
  // Annotation draws use their own stream so the latent world stays fixed
  // when annotation settings change.
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  SyntheticDataset d;
  d.mq.track = Track::mq;
  d.mq.num_classes = cfg.mq_classes;
  d.nlq.track = Track::nlq;
  d.fhp.track = Track::fhp;
  d.fhp.resolution = {cfg.width, cfg.height};
  d.lta.track = Track::lta;
  d.lta.vocab = world.vocab();
  d.lta.z = cfg.z;
  d.lta.k = 5;
  d.sta.track = Track::sta;
  d.sta.vocab = world.vocab();
  d.scod.track = Track::scod;
  d.scod.num_classes = cfg.scod_classes;

  for (const auto& v : world.videos) {
    const VideoMeta meta(v.video_id, v.num_frames, cfg.fps);
    const double duration = meta.duration_s();
    d.mq.videos.push_back(meta);
    d.nlq.videos.push_back(meta);

    for (int c = 0; c < cfg.mq_classes; ++c) {
      if (uniform(rng, 0.0, 1.0) < 0.4 || duration <= 2.0) continue;
      const double len = uniform(rng, 2.0, std::min(20.0, duration));
      const double start = ms(uniform(rng, 0.0, duration - len));
      d.mq.segments.push_back({v.video_id, start, ms(start + len), c, {}, 1.0});
    }
    for (int q = 0; q < cfg.nlq_queries_per_video && duration > 1.0; ++q) {
      const double len = uniform(rng, 1.0, std::min(10.0, duration));
      const double start = ms(uniform(rng, 0.0, duration - len));
      d.nlq.segments.push_back({v.video_id, start, ms(start + len), -1,
                                v.video_id + "_q" + std::to_string(q), 1.0});
    }

    for (const auto& h : v.hands) {
      HandRecord r{v.video_id, h.instance_id, {}};
      std::normal_distribution<double> noise(0.0, 1.0);
      for (Keyframe k : kAllKeyframes) {
        auto& pose = r.keyframes[static_cast<std::size_t>(k)];
        const auto l = h.at(k, Hand::left);
        const auto rt = h.at(k, Hand::right);
        const double s = cfg.hand_noise_px;
        pose.left = {l.x + s * noise(rng), l.y + s * noise(rng)};
        pose.right = {rt.x + s * noise(rng), rt.y + s * noise(rng)};
        pose.left_visible = h.visible[static_cast<std::size_t>(k)][0];
        pose.right_visible = h.visible[static_cast<std::size_t>(k)][1];
      }
      d.fhp.hands.push_back(r);
    }

    const auto points = forecast_points(world, v, 0.0);
    for (std::size_t p = 0; p < points.size(); p += 4) {
      const int i = points[p];
      LtaRecord r;
      r.video_id = v.video_id;
      r.clip_index = i;
      std::vector<std::array<int, 2>> seq;
      for (int j = 0; j < cfg.z; ++j) {
        const auto& a = v.actions[static_cast<std::size_t>(i + j)];
        seq.push_back({a.verb, a.noun});
      }
      r.candidates.push_back(std::move(seq));
      d.lta.lta.push_back(std::move(r));
    }

    for (int k = 0; k < cfg.sta_keyframes_per_video; ++k) {
      const std::string kf = v.video_id + "_kf" + std::to_string(k);
      d.sta.images.push_back({kf, cfg.width, cfg.height});
      d.scod.images.push_back({kf, cfg.width, cfg.height});
      const int boxes = 1 + pick(rng, 3);
      for (int b = 0; b < boxes; ++b) {
        const double w = uniform(rng, 0.05, 0.3) * cfg.width;
        const double h = uniform(rng, 0.05, 0.3) * cfg.height;
        const double x = ms(uniform(rng, 0.0, cfg.width - w));
        const double y = ms(uniform(rng, 0.0, cfg.height - h));
        const std::array<double, 4> box{x, y, ms(x + w), ms(y + h)};
        BoxRecord sta{kf, box, pick(rng, cfg.num_nouns), pick(rng, cfg.num_verbs),
                      ms(uniform(rng, 0.1, 2.0)), 1.0};
        d.sta.boxes.push_back(sta);
        d.scod.boxes.push_back({kf, box, pick(rng, cfg.scod_classes), std::nullopt, std::nullopt, 1.0});
      }
    }
  }
  return d;
}

SyntheticDataset generate_synthetic(const SynthConfig& cfg) { return annotate(generate_world(cfg)); }

AnnotationSet perfect_predictions(const AnnotationSet& gt) {
  AnnotationSet p = gt;
  p.is_prediction = true;
  for (auto& s : p.segments) s.score = 1.0;
  for (auto& b : p.boxes) b.score = 1.0;
  return p;
}

}  // namespace egoforge::toyheads
