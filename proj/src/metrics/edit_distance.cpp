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

#include "egoforge/metrics/edit_distance.hpp"

#include <cstdint>
#include <limits>

#include "egoforge/core/error.hpp"

namespace egoforge::metrics {

double normalized_edit_distance(const ActionSequence& candidate, const ActionSequence& gt,
                                EdMode mode) {
  if (candidate.size() != gt.size()) {
    throw DataError("candidate length " + std::to_string(candidate.size()) +
                    " does not match ground truth length " + std::to_string(gt.size()));
  }
  if (gt.empty()) throw DataError("empty ground-truth sequence");
  const std::span<const ActionLabel> a(candidate);
  const std::span<const ActionLabel> b(gt);
  std::size_t d = 0;
  switch (mode) {
    case EdMode::verb:
      d = levenshtein(a, b, [](const ActionLabel& x, const ActionLabel& y) {
        return x.verb_id() == y.verb_id();
      });
      break;
    case EdMode::noun:
      d = levenshtein(a, b, [](const ActionLabel& x, const ActionLabel& y) {
        return x.noun_id() == y.noun_id();
      });
      break;
    case EdMode::action:
      d = levenshtein(a, b);
      break;
  }
  return static_cast<double>(d) / static_cast<double>(gt.size());
}

double min_candidate_distance(const LtaForecast& forecast, const ActionSequence& gt, EdMode mode,
                              int k) {
  if (k < 1) throw ParameterError("K must be at least 1");
  const auto& cands = forecast.candidates();
  if (cands.empty()) throw DataError("forecast has no candidate sequences");
  const std::size_t n = std::min(cands.size(), static_cast<std::size_t>(k));
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) best = std::min(best, normalized_edit_distance(cands[i], gt, mode));
  return best;
}

double edit_distance_at_z(std::span<const LtaForecast> forecasts,
                          const std::map<ClipKey, ActionSequence>& gt, EdMode mode, int k,
                          Execution ex) {
  if (gt.empty()) throw DataError("ED@Z undefined: no ground truth");
  std::map<ClipKey, std::size_t> by_key;
  for (std::size_t i = 0; i < forecasts.size(); ++i) {
    ClipKey key{forecasts[i].video_id(), forecasts[i].clip_index()};
    if (!gt.contains(key)) {
      throw DataError("forecast for unknown clip " + key.video_id + "#" + std::to_string(key.clip_index));
    }
    if (!by_key.emplace(std::move(key), i).second) {
      throw DataError("duplicate forecast for clip " + forecasts[i].video_id() + "#" +
                      std::to_string(forecasts[i].clip_index()));
    }
  }
  std::vector<const ActionSequence*> seqs;
  std::vector<const LtaForecast*> matched;
  for (const auto& [key, seq] : gt) {
    const auto it = by_key.find(key);
    if (it == by_key.end()) {
      throw DataError("missing forecast for clip " + key.video_id + "#" + std::to_string(key.clip_index));
    }
    seqs.push_back(&seq);
    matched.push_back(&forecasts[it->second]);
  }

  std::vector<double> dist(seqs.size());
  // Exceptions may not cross the parallel region; length checks happen first.
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    if (matched[i]->z() != static_cast<int>(seqs[i]->size())) {
      throw DataError("forecast Z=" + std::to_string(matched[i]->z()) + " does not match ground truth Z=" +
                      std::to_string(seqs[i]->size()));
    }
    if (matched[i]->candidates().empty()) throw DataError("forecast has no candidate sequences");
  }
  if (k < 1) throw ParameterError("K must be at least 1");
#pragma omp parallel for schedule(static) num_threads(threads_for(ex)) if (ex == Execution::parallel)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(seqs.size()); ++i) {
    const auto u = static_cast<std::size_t>(i);
    dist[u] = min_candidate_distance(*matched[u], *seqs[u], mode, k);
  }
  double sum = 0.0;
  for (double d : dist) sum += d;
  return sum / static_cast<double>(dist.size());
}

}  // namespace egoforge::metrics
