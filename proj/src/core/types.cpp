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

#include "egoforge/core/types.hpp"

#include <cmath>
#include <string>

#include "egoforge/core/error.hpp"

namespace egoforge {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ParameterError(what);
}

bool all_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

void check_prob_rows(const std::vector<double>& probs, int z, int width, const char* name) {
  require(static_cast<int>(probs.size()) == z * width,
          std::string(name) + " matrix has " + std::to_string(probs.size()) +
              " entries, expected " + std::to_string(z * width));
  for (int pos = 0; pos < z; ++pos) {
    double sum = 0.0;
    for (int j = 0; j < width; ++j) {
      const double p = probs[static_cast<std::size_t>(pos * width + j)];
      require(std::isfinite(p) && p >= 0.0,
              std::string(name) + " probability must be finite and nonnegative");
      sum += p;
    }
    require(std::abs(sum - 1.0) <= 1e-6, std::string(name) + " row " + std::to_string(pos) +
                                             " sums to " + std::to_string(sum));
  }
}

}  // namespace

VideoMeta::VideoMeta(std::string video_id, std::int64_t num_frames, double fps)
    : video_id_(std::move(video_id)), num_frames_(num_frames), fps_(fps) {
  require(!video_id_.empty(), "video_id must be nonempty");
  require(num_frames_ >= 0, "num_frames must be nonnegative");
  require(std::isfinite(fps_) && fps_ > 0.0, "fps must be positive");
}

TemporalSegment::TemporalSegment(double start_s, double end_s) : start_s_(start_s), end_s_(end_s) {
  require(std::isfinite(start_s) && std::isfinite(end_s), "segment bounds must be finite");
  require(start_s >= 0.0, "segment start must be nonnegative");
  require(start_s <= end_s, "segment reversed");
}

MomentInstance::MomentInstance(TemporalSegment seg, int cls) : segment(seg), class_id(cls) {
  require(cls >= 0, "class_id must be nonnegative");
}

NlqInstance::NlqInstance(TemporalSegment seg, std::string query)
    : segment(seg), query_id(std::move(query)) {
  require(!query_id.empty(), "query_id must be nonempty");
}

RankedSegment::RankedSegment(TemporalSegment seg, double s, std::string lbl)
    : segment(seg), score(s), label(std::move(lbl)) {
  require(std::isfinite(score), "score must be finite");
}

ActionLabel::ActionLabel(int verb_id, int noun_id) : verb_id_(verb_id), noun_id_(noun_id) {
  require(verb_id >= 0 && noun_id >= 0, "action ids must be nonnegative");
}

ActionLabel::ActionLabel(int verb_id, int noun_id, const ActionVocabulary& vocab)
    : ActionLabel(verb_id, noun_id) {
  require(verb_id < vocab.num_verbs, "verb id " + std::to_string(verb_id) + " out of range");
  require(noun_id < vocab.num_nouns, "noun id " + std::to_string(noun_id) + " out of range");
}

ForecastMatrix::ForecastMatrix(int z, ActionVocabulary vocab, std::vector<double> verb_probs,
                               std::vector<double> noun_probs)
    : z_(z), vocab_(vocab), verb_probs_(std::move(verb_probs)), noun_probs_(std::move(noun_probs)) {
  require(z_ >= 1, "forecast matrix needs at least one position");
  require(vocab_.num_verbs >= 1 && vocab_.num_nouns >= 1, "vocabulary sizes must be positive");
  check_prob_rows(verb_probs_, z_, vocab_.num_verbs, "verb");
  check_prob_rows(noun_probs_, z_, vocab_.num_nouns, "noun");
}

std::span<const double> ForecastMatrix::verb_row(int position) const {
  require(position >= 0 && position < z_, "forecast position out of range");
  return std::span<const double>(verb_probs_).subspan(
      static_cast<std::size_t>(position * vocab_.num_verbs),
      static_cast<std::size_t>(vocab_.num_verbs));
}

std::span<const double> ForecastMatrix::noun_row(int position) const {
  require(position >= 0 && position < z_, "forecast position out of range");
  return std::span<const double>(noun_probs_).subspan(
      static_cast<std::size_t>(position * vocab_.num_nouns),
      static_cast<std::size_t>(vocab_.num_nouns));
}

LtaForecast::LtaForecast(std::string video_id, int clip_index, int z,
                         std::vector<ActionSequence> candidates,
                         std::optional<ForecastMatrix> score_matrix)
    : video_id_(std::move(video_id)),
      clip_index_(clip_index),
      z_(z),
      candidates_(std::move(candidates)),
      score_matrix_(std::move(score_matrix)) {
  require(clip_index_ >= 0, "clip_index must be nonnegative");
  require(z_ >= 1, "Z must be positive");
  require(!candidates_.empty() || score_matrix_.has_value(), "forecast needs candidates or a score matrix");
  for (const auto& c : candidates_) {
    require(static_cast<int>(c.size()) == z_, "candidate length " + std::to_string(c.size()) +
                                                  " does not match Z=" + std::to_string(z_));
  }
  if (score_matrix_) require(score_matrix_->z() == z_, "score matrix Z mismatch");
}

std::string_view keyframe_tag(Keyframe k) {
  switch (k) {
    case Keyframe::c: return "c";
    case Keyframe::p: return "p";
    case Keyframe::p1: return "p1";
    case Keyframe::p2: return "p2";
    case Keyframe::p3: return "p3";
  }
  return "?";
}

std::optional<Keyframe> keyframe_from_tag(std::string_view tag) {
  for (Keyframe k : kAllKeyframes) {
    if (keyframe_tag(k) == tag) return k;
  }
  return std::nullopt;
}

HandKeyframes::HandKeyframes(std::array<HandPose, kNumKeyframes> poses) : poses_(poses) {
  for (const auto& p : poses_) {
    const double v[] = {p.left.x, p.left.y, p.right.x, p.right.y};
    require(all_finite(v), "hand coordinates must be finite");
  }
}

std::array<double, 20> HandKeyframes::flatten() const {
  std::array<double, 20> out{};
  for (int k = 0; k < kNumKeyframes; ++k) {
    const auto& p = poses_[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(4 * k + 0)] = p.left.x;
    out[static_cast<std::size_t>(4 * k + 1)] = p.left.y;
    out[static_cast<std::size_t>(4 * k + 2)] = p.right.x;
    out[static_cast<std::size_t>(4 * k + 3)] = p.right.y;
  }
  return out;
}

HandKeyframes HandKeyframes::unflatten(std::span<const double> coords) {
  require(coords.size() == 20, "hand regression vector must have 20 entries");
  std::array<HandPose, kNumKeyframes> poses{};
  for (std::size_t k = 0; k < kNumKeyframes; ++k) {
    poses[k].left = {coords[4 * k + 0], coords[4 * k + 1]};
    poses[k].right = {coords[4 * k + 2], coords[4 * k + 3]};
  }
  return HandKeyframes(poses);
}

BoundingBox::BoundingBox(double x1, double y1, double x2, double y2)
    : x1_(x1), y1_(y1), x2_(x2), y2_(y2) {
  const double v[] = {x1, y1, x2, y2};
  require(all_finite(v), "box coordinates must be finite");
  require(x1 <= x2 && y1 <= y2, "box corners reversed");
}

StaInstance::StaInstance(BoundingBox b, int noun, int verb, double ttc, double s)
    : box(b), noun_id(noun), verb_id(verb), ttc_s(ttc), score(s) {
  require(noun_id >= 0 && verb_id >= 0, "STA ids must be nonnegative");
  require(std::isfinite(ttc_s) && ttc_s > 0.0, "ttc_s must be positive");
  require(std::isfinite(score), "score must be finite");
}

Detection::Detection(BoundingBox b, int cls, double s) : box(b), class_id(cls), score(s) {
  require(class_id >= 0, "class_id must be nonnegative");
  require(std::isfinite(score), "score must be finite");
}

std::string_view provenance_name(FeatureProvenance p) {
  switch (p) {
    case FeatureProvenance::verb: return "verb";
    case FeatureProvenance::noun: return "noun";
    case FeatureProvenance::fused: return "fused";
    case FeatureProvenance::stub: return "stub";
  }
  return "?";
}

FeatureMatrix::FeatureMatrix(std::size_t dim, std::vector<float> values, FeatureProvenance provenance)
    : dim_(dim), values_(std::move(values)), provenance_(provenance) {
  require(dim_ > 0, "feature dim must be positive");
  require(values_.size() % dim_ == 0, "feature values are not a whole number of rows");
  for (float x : values_) require(std::isfinite(x), "feature values must be finite");
}

std::span<const float> FeatureMatrix::row(std::size_t r) const {
  if (r >= rows()) throw ParameterError("feature row out of range");
  return std::span<const float>(values_).subspan(r * dim_, dim_);
}

}  // namespace egoforge
