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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "egoforge/core/dataset.hpp"
#include "egoforge/core/error.hpp"
#include "egoforge/core/types.hpp"

namespace egoforge {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

TEST(Types, RejectInvalidFields) {
  EXPECT_THROW(VideoMeta("", 10, 30.0), ParameterError);
  EXPECT_THROW(VideoMeta("v", -1, 30.0), ParameterError);
  EXPECT_THROW(VideoMeta("v", 10, 0.0), ParameterError);
  EXPECT_THROW(TemporalSegment(5.0, 2.0), ParameterError);
  EXPECT_THROW(TemporalSegment(-1.0, 2.0), ParameterError);
  EXPECT_THROW(TemporalSegment(kNaN, 2.0), ParameterError);
  EXPECT_THROW(MomentInstance(TemporalSegment(0, 1), -1), ParameterError);
  EXPECT_THROW(NlqInstance(TemporalSegment(0, 1), ""), ParameterError);
  EXPECT_THROW(ActionLabel(-1, 0), ParameterError);
  EXPECT_THROW(ActionLabel(4, 0, ActionVocabulary{4, 5}), ParameterError);
  EXPECT_THROW(BoundingBox(5, 0, 1, 1), ParameterError);
  EXPECT_THROW(StaInstance(BoundingBox(0, 0, 1, 1), 0, 0, 0.0, 1.0), ParameterError);
  EXPECT_THROW(FeatureMatrix(0, {}, FeatureProvenance::stub), ParameterError);
  EXPECT_THROW(FeatureMatrix(2, {1.0f, 2.0f, 3.0f}, FeatureProvenance::stub), ParameterError);
  EXPECT_THROW(FeatureMatrix(1, {std::numeric_limits<float>::infinity()}, FeatureProvenance::stub),
               ParameterError);
}

TEST(Types, ForecastMatrixShapeAndRows) {
  const ActionVocabulary vocab{2, 3};
  EXPECT_THROW(ForecastMatrix(1, vocab, {0.5, 0.5}, {1.0, 0.0}), ParameterError);
  EXPECT_THROW(ForecastMatrix(1, vocab, {0.7, 0.7}, {1.0, 0.0, 0.0}), ParameterError);
  const ForecastMatrix m(2, vocab, {0.5, 0.5, 0.1, 0.9}, {1, 0, 0, 0, 0.5, 0.5});
  EXPECT_EQ(m.verb_row(1)[1], 0.9);
  EXPECT_EQ(m.noun_row(1).size(), 3u);
  EXPECT_THROW(static_cast<void>(m.verb_row(2)), ParameterError);
}

TEST(Types, LtaForecastCandidatesMatchZ) {
  const ActionSequence three{{0, 0}, {1, 1}, {0, 1}};
  EXPECT_NO_THROW(LtaForecast("v", 1, 3, {three}));
  EXPECT_THROW(LtaForecast("v", 1, 4, {three}), ParameterError);
  EXPECT_THROW(LtaForecast("v", 1, 3, {}), ParameterError);
}

TEST(Types, HandKeyframesFlattenRoundTrip) {
  std::array<HandPose, kNumKeyframes> poses{};
  for (int k = 0; k < kNumKeyframes; ++k) {
    poses[k].left = {1.0 * k, 2.0 * k};
    poses[k].right = {3.0 * k, 4.0 * k};
  }
  const HandKeyframes kf(poses);
  const auto flat = kf.flatten();
  EXPECT_EQ(flat[4], 1.0);   // keyframe p, left x
  EXPECT_EQ(flat[7], 4.0);   // keyframe p, right y
  const auto back = HandKeyframes::unflatten(flat);
  for (int k = 0; k < kNumKeyframes; ++k) {
    EXPECT_EQ(back.poses()[k].left, poses[k].left);
    EXPECT_EQ(back.poses()[k].right, poses[k].right);
  }
  EXPECT_THROW(HandKeyframes::unflatten(std::span<const double>(flat.data(), 19)), ParameterError);
}

TEST(Types, KeyframeTags) {
  for (auto k : kAllKeyframes) EXPECT_EQ(keyframe_from_tag(keyframe_tag(k)), k);
  EXPECT_FALSE(keyframe_from_tag("p4").has_value());
}

AnnotationSet three_mq_instances() {
  AnnotationSet s;
  s.track = Track::mq;
  s.num_classes = 2;
  s.videos.emplace_back("v", 300, 30.0);
  s.segments = {{"v", 0.0, 1.0, 0, "", 1.0}, {"v", 2.0, 3.0, 1, "", 1.0}, {"v", 4.0, 6.0, 0, "", 1.0}};
  return s;
}

TEST(ValidateDataset, ValidMqSetHasNoViolations) {
  EXPECT_TRUE(validate_dataset(three_mq_instances()).empty());
}

TEST(ValidateDataset, ReversedSegment) {
  auto s = three_mq_instances();
  s.segments = {{"v", 5.0, 2.0, 0, "", 1.0}};
  const auto v = validate_dataset(s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].message, "segment reversed");
  EXPECT_EQ(v[0].where, "instances[0]");
}

TEST(ValidateDataset, ShortLtaCandidate) {
  AnnotationSet s;
  s.track = Track::lta;
  s.is_prediction = true;
  s.z = 20;
  s.k = 5;
  s.vocab = {4, 5};
  s.lta.push_back({"v", 1, {std::vector<std::array<int, 2>>(19, {0, 0})}, {}, {}});
  const auto v = validate_dataset(s);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].message.find("candidate length"), std::string::npos);
}

TEST(ValidateDataset, ReportsEveryViolation) {
  auto s = three_mq_instances();
  s.segments = {{"v", 5.0, 2.0, 0, "", 1.0}, {"w", 0.0, 1.0, 7, "", kNaN}};
  EXPECT_EQ(validate_dataset(s).size(), 4u);
}

TEST(ValidateDataset, StaNeedsVerbAndTtc) {
  AnnotationSet s;
  s.track = Track::sta;
  s.vocab = {2, 2};
  s.images = {{"k", 10, 10}};
  s.boxes = {{"k", {0, 0, 1, 1}, 0, std::nullopt, std::nullopt, 1.0}};
  EXPECT_EQ(validate_dataset(s).size(), 2u);
}

TEST(CheckReferences, UnknownVideoIdIsListed) {
  const auto gt = three_mq_instances();
  auto pred = gt;
  pred.is_prediction = true;
  pred.videos.clear();
  pred.segments[1].video_id = "ghost";
  const auto v = check_references(gt, pred);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_NE(v[0].message.find("ghost"), std::string::npos);
}

TEST(Tracks, NamesRoundTrip) {
  for (auto t : {Track::mq, Track::nlq, Track::fhp, Track::lta, Track::sta, Track::scod}) {
    EXPECT_EQ(track_from_name(track_name(t)), t);
  }
  EXPECT_FALSE(track_from_name("vq2d").has_value());
}

}  // namespace
}  // namespace egoforge
