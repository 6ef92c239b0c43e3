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

#include "egoforge/fusion/vote.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include "egoforge/core/error.hpp"

namespace egoforge::fusion {

namespace {

std::vector<double> mean_rows(std::span<const ForecastMatrix> clips, bool verb) {
  const auto& first = verb ? clips[0].verb_probs() : clips[0].noun_probs();
  std::vector<double> out(first.size());
  std::vector<double> column(clips.size());
  for (std::size_t e = 0; e < out.size(); ++e) {
    for (std::size_t c = 0; c < clips.size(); ++c) {
      column[c] = verb ? clips[c].verb_probs()[e] : clips[c].noun_probs()[e];
    }
    std::sort(column.begin(), column.end());
    double sum = 0.0;
    for (double v : column) sum += v;
    out[e] = sum / static_cast<double>(clips.size());
  }
  return out;
}

int argmax(std::span<const double> row) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(row.size()); ++i) {
    if (row[static_cast<std::size_t>(i)] > row[static_cast<std::size_t>(best)]) best = i;
  }
  return best;
}

int plurality(std::span<const int> votes, std::span<const double> mean_row) {
  std::vector<int> counts(mean_row.size(), 0);
  for (int v : votes) ++counts[static_cast<std::size_t>(v)];
  int best = 0;
  for (int i = 1; i < static_cast<int>(counts.size()); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const auto ub = static_cast<std::size_t>(best);
    if (counts[ui] > counts[ub] || (counts[ui] == counts[ub] && mean_row[ui] > mean_row[ub])) best = i;
  }
  return best;
}

}  // namespace

VoteResult multi_clips_vote(std::span<const ForecastMatrix> per_clip, const VoteConfig& cfg) {
  if (per_clip.empty()) throw ParameterError("voting needs at least one clip");
  const int z = per_clip[0].z();
  const ActionVocabulary vocab = per_clip[0].vocab();
  for (const auto& m : per_clip) {
    if (m.z() != z || m.vocab().num_verbs != vocab.num_verbs || m.vocab().num_nouns != vocab.num_nouns) {
      throw ParameterError("clip forecast shapes differ");
    }
  }
  ForecastMatrix fused(z, vocab, mean_rows(per_clip, true), mean_rows(per_clip, false));

  ActionSequence labels;
  labels.reserve(static_cast<std::size_t>(z));
  for (int pos = 0; pos < z; ++pos) {
    if (cfg.combine_rule == CombineRule::mean_prob) {
      labels.emplace_back(argmax(fused.verb_row(pos)), argmax(fused.noun_row(pos)), vocab);
      continue;
    }
    std::vector<int> verb_votes;
    std::vector<int> noun_votes;
    for (const auto& m : per_clip) {
      verb_votes.push_back(argmax(m.verb_row(pos)));
      noun_votes.push_back(argmax(m.noun_row(pos)));
    }
    labels.emplace_back(plurality(verb_votes, fused.verb_row(pos)),
                        plurality(noun_votes, fused.noun_row(pos)), vocab);
  }
  return {std::move(labels), std::move(fused)};
}

std::vector<ActionSequence> expand_candidates(const ForecastMatrix& fused, int k) {
  if (k < 1) throw ParameterError("K must be at least 1");
  const int z = fused.z();
  const int nv = fused.vocab().num_verbs;
  const int nn = fused.vocab().num_nouns;
  const int num_actions = nv * nn;
  const int per_pos = std::min(k, num_actions);

  // Per position: the per_pos best actions as (log prob, action index).
  std::vector<std::vector<std::pair<double, int>>> ranked(static_cast<std::size_t>(z));
  for (int pos = 0; pos < z; ++pos) {
    auto& r = ranked[static_cast<std::size_t>(pos)];
    const auto vr = fused.verb_row(pos);
    const auto nr = fused.noun_row(pos);
    for (int a = 0; a < num_actions; ++a) {
      const double p = vr[static_cast<std::size_t>(a / nn)] * nr[static_cast<std::size_t>(a % nn)];
      r.emplace_back(p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity(), a);
    }
    std::stable_sort(r.begin(), r.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    r.resize(static_cast<std::size_t>(per_pos));
  }

  // Best-first over rank vectors. A state may only advance positions at or
  // after the last advanced one, so each rank vector has exactly one parent.
  struct State {
    double score;
    std::vector<int> ranks;
    int last;
  };
  auto worse = [](const State& a, const State& b) {
    if (a.score != b.score) return a.score < b.score;
    return a.ranks > b.ranks;
  };
  std::priority_queue<State, std::vector<State>, decltype(worse)> frontier(worse);
  auto score_of = [&](const std::vector<int>& ranks) {
    double s = 0.0;
    for (std::size_t pos = 0; pos < ranks.size(); ++pos) {
      s += ranked[pos][static_cast<std::size_t>(ranks[pos])].first;
    }
    return s;
  };
  State root{0.0, std::vector<int>(static_cast<std::size_t>(z), 0), 0};
  root.score = score_of(root.ranks);
  frontier.push(std::move(root));

  std::vector<ActionSequence> out;
  while (!frontier.empty() && static_cast<int>(out.size()) < k) {
    State s = frontier.top();
    frontier.pop();
    ActionSequence seq;
    seq.reserve(static_cast<std::size_t>(z));
    for (int pos = 0; pos < z; ++pos) {
      const int a = ranked[static_cast<std::size_t>(pos)][static_cast<std::size_t>(s.ranks[static_cast<std::size_t>(pos)])].second;
      seq.emplace_back(a / nn, a % nn);
    }
    out.push_back(std::move(seq));
    for (int pos = s.last; pos < z; ++pos) {
      const auto up = static_cast<std::size_t>(pos);
      const int next = s.ranks[up] + 1;
      if (next >= per_pos) continue;
      State child{0.0, s.ranks, pos};
      child.ranks[up] = next;
      child.score = score_of(child.ranks);
      frontier.push(std::move(child));
    }
  }
  return out;
}

}  // namespace egoforge::fusion
