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

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "egoforge/core/types.hpp"
#include "egoforge/parallel.hpp"

namespace egoforge::metrics {

// Unit-cost Levenshtein distance with a single rolling row.
template <class T, class Eq = std::equal_to<>>
std::size_t levenshtein(std::span<const T> a, std::span<const T> b, Eq eq = {}) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t sub = diag + (eq(a[i - 1], b[j - 1]) ? 0 : 1);
      row[j] = std::min({sub, up + 1, row[j - 1] + 1});
      diag = up;
    }
  }
  return row[b.size()];
}

enum class EdMode { verb, noun, action };

// Levenshtein distance under `mode`, divided by the ground-truth length.
double normalized_edit_distance(const ActionSequence& candidate, const ActionSequence& gt, EdMode mode);

struct ClipKey {
  std::string video_id;
  int clip_index = 0;

  friend auto operator<=>(const ClipKey&, const ClipKey&) = default;
};

// Best (smallest) normalized distance over the first `k` candidates.
double min_candidate_distance(const LtaForecast& forecast, const ActionSequence& gt, EdMode mode,
                              int k);

// ED@Z: mean over ground-truth clips of the best-of-K normalized distance.
// Every ground-truth clip needs exactly one forecast and every forecast a
// ground truth; candidate lengths must equal the ground-truth Z.
double edit_distance_at_z(std::span<const LtaForecast> forecasts,
                          const std::map<ClipKey, ActionSequence>& gt, EdMode mode, int k = 5,
                          Execution ex = Execution::parallel);

}  // namespace egoforge::metrics
