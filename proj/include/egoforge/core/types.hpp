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
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace egoforge {

// Shared domain types. Every type validates its fields on construction and
// is immutable afterwards, so instances can be shared freely across threads.

class VideoMeta {
 public:
  VideoMeta(std::string video_id, std::int64_t num_frames, double fps);

  const std::string& video_id() const { return video_id_; }
  std::int64_t num_frames() const { return num_frames_; }
  double fps() const { return fps_; }
  double duration_s() const { return static_cast<double>(num_frames_) / fps_; }

 private:
  std::string video_id_;
  std::int64_t num_frames_;
  double fps_;
};

class TemporalSegment {
 public:
  TemporalSegment(double start_s, double end_s);

  double start_s() const { return start_s_; }
  double end_s() const { return end_s_; }
  double length() const { return end_s_ - start_s_; }

  friend bool operator==(const TemporalSegment&, const TemporalSegment&) = default;

 private:
  double start_s_;
  double end_s_;
};

struct MomentInstance {
  MomentInstance(TemporalSegment segment, int class_id);

  TemporalSegment segment;
  int class_id;
};

struct NlqInstance {
  NlqInstance(TemporalSegment segment, std::string query_id);

  TemporalSegment segment;
  std::string query_id;
};

// A scored temporal prediction. `label` is the class id rendered as a string
// for MQ and the query id for NLQ.
struct RankedSegment {
  RankedSegment(TemporalSegment segment, double score, std::string label);

  TemporalSegment segment;
  double score;
  std::string label;
};

struct ActionVocabulary {
  int num_verbs = 0;
  int num_nouns = 0;

  int num_actions() const { return num_verbs * num_nouns; }
};

class ActionLabel {
 public:
  ActionLabel(int verb_id, int noun_id);
  ActionLabel(int verb_id, int noun_id, const ActionVocabulary& vocab);

  int verb_id() const { return verb_id_; }
  int noun_id() const { return noun_id_; }

  friend bool operator==(const ActionLabel&, const ActionLabel&) = default;

 private:
  int verb_id_;
  int noun_id_;
};

using ActionSequence = std::vector<ActionLabel>;

// Per-position verb and noun probability rows for Z future positions.
// Rows are stored position-major: verb(z, v) = verb_probs[z * num_verbs + v].
class ForecastMatrix {
 public:
  ForecastMatrix(int z, ActionVocabulary vocab, std::vector<double> verb_probs,
                 std::vector<double> noun_probs);

  int z() const { return z_; }
  const ActionVocabulary& vocab() const { return vocab_; }
  std::span<const double> verb_row(int position) const;
  std::span<const double> noun_row(int position) const;
  const std::vector<double>& verb_probs() const { return verb_probs_; }
  const std::vector<double>& noun_probs() const { return noun_probs_; }

 private:
  int z_;
  ActionVocabulary vocab_;
  std::vector<double> verb_probs_;
  std::vector<double> noun_probs_;
};

class LtaForecast {
 public:
  LtaForecast(std::string video_id, int clip_index, int z,
              std::vector<ActionSequence> candidates,
              std::optional<ForecastMatrix> score_matrix = std::nullopt);

  const std::string& video_id() const { return video_id_; }
  int clip_index() const { return clip_index_; }
  int z() const { return z_; }
  const std::vector<ActionSequence>& candidates() const { return candidates_; }
  const std::optional<ForecastMatrix>& score_matrix() const { return score_matrix_; }

 private:
  std::string video_id_;
  int clip_index_;
  int z_;
  std::vector<ActionSequence> candidates_;
  std::optional<ForecastMatrix> score_matrix_;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

// Contact, pre-condition, and the frames 0.5 s, 1 s, 1.5 s before it.
enum class Keyframe : int { c = 0, p = 1, p1 = 2, p2 = 3, p3 = 4 };
inline constexpr int kNumKeyframes = 5;
inline constexpr std::array<Keyframe, kNumKeyframes> kAllKeyframes = {
    Keyframe::c, Keyframe::p, Keyframe::p1, Keyframe::p2, Keyframe::p3};
std::string_view keyframe_tag(Keyframe k);
std::optional<Keyframe> keyframe_from_tag(std::string_view tag);

enum class Hand : int { left = 0, right = 1 };

struct HandPose {
  Point2 left;
  Point2 right;
  bool left_visible = true;
  bool right_visible = true;

  const Point2& at(Hand h) const { return h == Hand::left ? left : right; }
  bool visible(Hand h) const { return h == Hand::left ? left_visible : right_visible; }
};

class HandKeyframes {
 public:
  explicit HandKeyframes(std::array<HandPose, kNumKeyframes> poses);

  const HandPose& at(Keyframe k) const { return poses_[static_cast<int>(k)]; }
  const std::array<HandPose, kNumKeyframes>& poses() const { return poses_; }

  // Flattened (left x, left y, right x, right y) per keyframe in tag order,
  // matching the 20-output regression head layout.
  std::array<double, 20> flatten() const;
  static HandKeyframes unflatten(std::span<const double> coords);

 private:
  std::array<HandPose, kNumKeyframes> poses_;
};

class BoundingBox {
 public:
  BoundingBox(double x1, double y1, double x2, double y2);

  double x1() const { return x1_; }
  double y1() const { return y1_; }
  double x2() const { return x2_; }
  double y2() const { return y2_; }
  double width() const { return x2_ - x1_; }
  double height() const { return y2_ - y1_; }
  double area() const { return width() * height(); }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;

 private:
  double x1_, y1_, x2_, y2_;
};

struct StaInstance {
  StaInstance(BoundingBox box, int noun_id, int verb_id, double ttc_s, double score);

  BoundingBox box;
  int noun_id;
  int verb_id;
  double ttc_s;
  double score;
};

// Single-frame detection (SCOD).
struct Detection {
  Detection(BoundingBox box, int class_id, double score);

  BoundingBox box;
  int class_id;
  double score;
};

enum class FeatureProvenance { verb, noun, fused, stub };
std::string_view provenance_name(FeatureProvenance p);

// Row-major float32 feature rows, one per snippet.
class FeatureMatrix {
 public:
  FeatureMatrix(std::size_t dim, std::vector<float> values, FeatureProvenance provenance);

  std::size_t dim() const { return dim_; }
  std::size_t rows() const { return dim_ == 0 ? 0 : values_.size() / dim_; }
  std::span<const float> row(std::size_t r) const;
  const std::vector<float>& values() const { return values_; }
  FeatureProvenance provenance() const { return provenance_; }

 private:
  std::size_t dim_;
  std::vector<float> values_;
  FeatureProvenance provenance_;
};

}  // namespace egoforge
