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

#include "egoforge/snippet/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "egoforge/core/error.hpp"

namespace egoforge::snippet {

namespace {

// Absorbs representation error when converting seconds to frame counts.
constexpr double kTimeEps = 1e-9;

}  // namespace

SnippetSchedule build_snippet_schedule(const VideoMeta& meta, double fps, int s, int delta) {
  if (!(std::isfinite(fps) && fps > 0.0)) throw ParameterError("fps must be positive");
  if (s <= 0) throw ParameterError("snippet length must be positive");
  if (delta <= 0) throw ParameterError("snippet stride must be positive");

  SnippetSchedule out;
  out.fps = fps;
  out.snippet_len_frames = s;
  out.stride_frames = delta;

  const std::int64_t n = meta.num_frames();
  std::int64_t start = 0;
  for (; start + s <= n; start += delta) out.snippets.push_back({start, start + s, false});
  const std::int64_t covered = out.snippets.empty() ? 0 : out.snippets.back().end_frame;
  if (covered < n) {
    out.snippets.push_back({start, n, true});
    out.padded_tail = true;
  }
  return out;
}

std::int64_t resampled_frame_count(const VideoMeta& meta, double target_fps) {
  if (!(std::isfinite(target_fps) && target_fps > 0.0)) throw ParameterError("fps must be positive");
  return static_cast<std::int64_t>(
      std::floor(static_cast<double>(meta.num_frames()) * target_fps / meta.fps() + kTimeEps));
}

std::vector<std::int64_t> snippet_frames(const Snippet& snip, int s) {
  std::vector<std::int64_t> frames;
  frames.reserve(static_cast<std::size_t>(s));
  const std::int64_t last = std::max(snip.start_frame, snip.end_frame - 1);
  for (int i = 0; i < s; ++i) frames.push_back(std::min(snip.start_frame + i, last));
  return frames;
}

ObservableWindow::ObservableWindow(double start_s, double end_s, double alpha_s)
    : start_s_(start_s), end_s_(end_s), alpha_s_(alpha_s) {
  if (!(std::isfinite(alpha_s) && alpha_s > 0.0)) throw ParameterError("alpha must be positive");
  if (!(std::isfinite(start_s) && std::isfinite(end_s))) throw ParameterError("window not finite");
  if (start_s < 0.0) throw ParameterError("window starts before 0");
  if (end_s < start_s) throw ParameterError("window reversed");
  if (end_s - start_s > alpha_s + kTimeEps) throw ParameterError("window longer than alpha");
}

ObservableWindow observable_window(const std::vector<double>& clip_end_times_s, std::size_t i,
                                   double alpha) {
  if (i == 0) throw ParameterError("no preceding clip");
  if (i > clip_end_times_s.size()) {
    throw ParameterError("clip index " + std::to_string(i) + " beyond " +
                         std::to_string(clip_end_times_s.size()) + " clips");
  }
  if (!std::is_sorted(clip_end_times_s.begin(), clip_end_times_s.end())) {
    throw ParameterError("clip end times must be nondecreasing");
  }
  const double end = clip_end_times_s[i - 1];
  return ObservableWindow(std::max(0.0, end - alpha), end, alpha);
}

ViewConfig::ViewConfig(int size, int frames, int views)
    : frame_size(size), num_frames(frames), num_views(views) {
  if (size <= 0 || frames <= 0 || views <= 0) throw ParameterError("view config must be positive");
}

std::vector<std::int64_t> sample_frames(const ObservableWindow& window, int n, double fps,
                                        std::uint64_t seed, SampleMode mode) {
  if (n < 1) throw ParameterError("need at least one frame");
  if (!(std::isfinite(fps) && fps > 0.0)) throw ParameterError("fps must be positive");
  const auto first = static_cast<std::int64_t>(std::ceil(window.start_s() * fps - kTimeEps));
  const auto last = static_cast<std::int64_t>(std::ceil(window.end_s() * fps - kTimeEps));
  const std::int64_t count = last - first;
  if (count <= 0) throw ParameterError("window holds no frames");

  const auto un = static_cast<std::int64_t>(n);
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(n));
  switch (mode) {
    case SampleMode::center:
      if (count >= un) {
        const std::int64_t offset = (count - un) / 2;
        for (std::int64_t i = 0; i < un; ++i) out.push_back(first + offset + i);
        break;
      }
      [[fallthrough]];
    case SampleMode::uniform:
      for (std::int64_t i = 0; i < un; ++i) out.push_back(first + (i * count) / un);
      break;
    case SampleMode::random: {
      std::mt19937_64 rng(seed);
      if (count >= un) {
        // Partial Fisher-Yates over the window's frame offsets.
        std::vector<std::int64_t> pool(static_cast<std::size_t>(count));
        std::iota(pool.begin(), pool.end(), first);
        for (std::int64_t i = 0; i < un; ++i) {
          std::uniform_int_distribution<std::int64_t> pick(i, count - 1);
          std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(rng))]);
        }
        out.assign(pool.begin(), pool.begin() + un);
      } else {
        std::uniform_int_distribution<std::int64_t> pick(first, last - 1);
        for (std::int64_t i = 0; i < un; ++i) out.push_back(pick(rng));
      }
      std::sort(out.begin(), out.end());
      break;
    }
  }
  return out;
}

std::vector<TemporalSegment> sliding_clips(const ObservableWindow& window, double clip_len_s,
                                           double clip_stride_s) {
  if (!(std::isfinite(clip_len_s) && clip_len_s > 0.0)) throw ParameterError("clip length must be positive");
  if (!(std::isfinite(clip_stride_s) && clip_stride_s > 0.0)) {
    throw ParameterError("clip stride must be positive");
  }
  if (clip_len_s > window.length() + kTimeEps) {
    throw ParameterError("clip length exceeds the observable window");
  }
  std::vector<TemporalSegment> clips;
  const double end = window.end_s();
  for (int i = 0;; ++i) {
    const double start = window.start_s() + i * clip_stride_s;
    if (start + clip_len_s > end + kTimeEps) break;
    clips.emplace_back(start, start + clip_len_s);
  }
  if (clips.back().end_s() < end - kTimeEps) {
    clips.emplace_back(std::max(0.0, end - clip_len_s), end);
  }
  return clips;
}

FeatureMatrix prefuse_features(const FeatureMatrix& a, const FeatureMatrix& b) {
  if (a.rows() != b.rows()) {
    throw ParameterError("row count mismatch: " + std::to_string(a.rows()) + " vs " +
                         std::to_string(b.rows()));
  }
  const std::size_t dim = a.dim() + b.dim();
  std::vector<float> values;
  values.reserve(dim * a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto ra = a.row(r);
    const auto rb = b.row(r);
    values.insert(values.end(), ra.begin(), ra.end());
    values.insert(values.end(), rb.begin(), rb.end());
  }
  return FeatureMatrix(dim, std::move(values), FeatureProvenance::fused);
}

}  // namespace egoforge::snippet
