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

#include "egoforge/toyheads/stub_features.hpp"

#include <cmath>
#include <random>
#include <string>

#include "egoforge/core/error.hpp"

namespace egoforge::toyheads {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<double> normal_vector(std::uint64_t seed, int dim) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(dim));
  for (double& x : v) x = n(rng);
  return v;
}

std::string_view variant_name(FeatureVariant v) { return v == FeatureVariant::verb ? "verb" : "noun"; }

}  // namespace

std::uint64_t stable_hash(std::string_view bytes, std::uint64_t salt) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ salt;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(h);
}

std::vector<double> label_direction(std::uint64_t seed, std::string_view kind, int id, int dim) {
  std::string key(kind);
  key += '/';
  key += std::to_string(id);
  return normal_vector(stable_hash(key, seed), dim);
}

std::vector<float> stub_features(std::string_view video_id, const snippet::Snippet& snip, int dim,
                                 FeatureVariant variant, const LatentContext* latent) {
  if (dim < 8) throw ParameterError("stub feature dim must be at least 8");
  std::string key(video_id);
  key += '|' + std::to_string(snip.start_frame) + '|' + std::to_string(snip.end_frame) + '|';
  key += variant_name(variant);
  auto v = normal_vector(stable_hash(key), dim);

  if (latent != nullptr && latent->world != nullptr && latent->video != nullptr) {
    const auto& world = *latent->world;
    const auto& cfg = world.cfg;
    for (double& x : v) x *= cfg.feature_noise;

    const auto scenario = label_direction(cfg.seed, "scenario", latent->video->scenario, dim);
    for (int i = 0; i < dim; ++i) v[static_cast<std::size_t>(i)] += cfg.scenario_signal * scenario[static_cast<std::size_t>(i)];

    const std::int64_t frames = std::max<std::int64_t>(1, snip.end_frame - snip.start_frame);
    std::vector<double> label_mean(static_cast<std::size_t>(dim), 0.0);
    for (std::int64_t f = snip.start_frame; f < snip.start_frame + frames; ++f) {
      const double t = (static_cast<double>(f) + 0.5) / latent->snippet_fps;
      const auto& a = world.action_at(*latent->video, t);
      const int id = variant == FeatureVariant::verb ? a.verb : a.noun;
      const auto dir = label_direction(cfg.seed, variant_name(variant), id, dim);
      for (int i = 0; i < dim; ++i) label_mean[static_cast<std::size_t>(i)] += dir[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < dim; ++i) {
      v[static_cast<std::size_t>(i)] += cfg.label_signal * label_mean[static_cast<std::size_t>(i)] / static_cast<double>(frames);
    }
  }
  return std::vector<float>(v.begin(), v.end());
}

FeatureMatrix stub_feature_matrix(std::string_view video_id, const snippet::SnippetSchedule& schedule,
                                  int dim, FeatureVariant variant, const LatentContext* latent,
                                  Execution ex) {
  if (dim < 8) throw ParameterError("stub feature dim must be at least 8");
  const std::size_t rows = schedule.snippets.size();
  const auto udim = static_cast<std::size_t>(dim);
  std::vector<float> values(rows * udim);
#pragma omp parallel for schedule(static) num_threads(threads_for(ex)) if (ex == Execution::parallel)
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(rows); ++r) {
    const auto ur = static_cast<std::size_t>(r);
    const auto row = stub_features(video_id, schedule.snippets[ur], dim, variant, latent);
    std::copy(row.begin(), row.end(), values.begin() + static_cast<std::ptrdiff_t>(ur * udim));
  }
  return FeatureMatrix(udim, std::move(values),
                       variant == FeatureVariant::verb ? FeatureProvenance::verb : FeatureProvenance::noun);
}

}  // namespace egoforge::toyheads
