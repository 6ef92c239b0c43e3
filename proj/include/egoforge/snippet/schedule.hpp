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
#include <vector>

#include "egoforge/core/types.hpp"

namespace egoforge::snippet {

struct Snippet {
  std::int64_t start_frame = 0;
  std::int64_t end_frame = 0;  // exclusive; < start + s only for a padded tail
  bool padded = false;

  friend bool operator==(const Snippet&, const Snippet&) = default;
};

struct SnippetSchedule {
  double fps = 0.0;
  int snippet_len_frames = 0;
  int stride_frames = 0;
  std::vector<Snippet> snippets;
  bool padded_tail = false;
};

// Sliding snippets of `s` frames every `delta` frames over a video whose
// frame count is already in the `fps` timebase. Frames left over after the
// last full snippet go into one extra snippet padded by repeating the final
// frame, so any nonempty video yields at least one snippet.
SnippetSchedule build_snippet_schedule(const VideoMeta& meta, double fps, int s, int delta);

// Frame count of `meta` after resampling to `target_fps`.
std::int64_t resampled_frame_count(const VideoMeta& meta, double target_fps);

// The `s` frame indices a snippet reads, repeating the last real frame for a
// padded tail.
std::vector<std::int64_t> snippet_frames(const Snippet& snip, int s);

class ObservableWindow {
 public:
  ObservableWindow(double start_s, double end_s, double alpha_s);

  double start_s() const { return start_s_; }
  double end_s() const { return end_s_; }
  double alpha_s() const { return alpha_s_; }
  double length() const { return end_s_ - start_s_; }

 private:
  double start_s_;
  double end_s_;
  double alpha_s_;
};

// History available before forecasting clip i: [max(0, e_{i-1} - alpha), e_{i-1}].
ObservableWindow observable_window(const std::vector<double>& clip_end_times_s, std::size_t i,
                                   double alpha);

struct ViewConfig {
  ViewConfig(int frame_size, int num_frames, int num_views);

  int frame_size;
  int num_frames;
  int num_views;
};

enum class SampleMode { random, center, uniform };

// n sorted frame indices inside the window (frames f with start <= f/fps < end).
std::vector<std::int64_t> sample_frames(const ObservableWindow& window, int n, double fps,
                                        std::uint64_t seed, SampleMode mode);

// Clips of `clip_len_s` stepping by `clip_stride_s` from the window start; a
// final clip flush with the window end is appended when the stepping would
// otherwise leave the tail uncovered.
std::vector<TemporalSegment> sliding_clips(const ObservableWindow& window, double clip_len_s,
                                           double clip_stride_s);

// Row-wise concatenation [a | b].
FeatureMatrix prefuse_features(const FeatureMatrix& a, const FeatureMatrix& b);

}  // namespace egoforge::snippet
