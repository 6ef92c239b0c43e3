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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "egoforge/core/types.hpp"

namespace egoforge {

enum class Track { mq, nlq, fhp, lta, sta, scod };

std::string_view track_name(Track t);
std::optional<Track> track_from_name(std::string_view name);

// Raw, schema-checked records as they appear in annotation and prediction
// files. They deliberately hold possibly-invalid values so that
// validate_dataset can report every violation instead of stopping at the
// first one; the typed domain objects are built from them afterwards.

struct ImageRecord {
  std::string keyframe_id;
  double width = 0.0;
  double height = 0.0;
};

struct SegmentRecord {
  std::string video_id;
  double start_s = 0.0;
  double end_s = 0.0;
  int class_id = -1;     // MQ
  std::string query_id;  // NLQ
  double score = 1.0;
};

struct HandRecord {
  std::string video_id;
  std::string instance_id;
  std::array<HandPose, kNumKeyframes> keyframes{};
};

struct LtaRecord {
  std::string video_id;
  int clip_index = 0;
  // Ground truth carries exactly one sequence; predictions carry K >= 1.
  std::vector<std::vector<std::array<int, 2>>> candidates;
  std::vector<std::vector<double>> verb_rows;  // optional score matrix
  std::vector<std::vector<double>> noun_rows;
};

struct BoxRecord {
  std::string keyframe_id;
  std::array<double, 4> box{};
  int noun = 0;
  std::optional<int> verb;
  std::optional<double> ttc_s;
  double score = 1.0;
};

struct AnnotationSet {
  Track track = Track::mq;
  bool is_prediction = false;

  // Header: class vocabularies and canonical resolution are declared, never
  // inferred from the instances.
  int num_classes = 0;             // MQ classes, SCOD classes
  ActionVocabulary vocab{};        // LTA / STA
  int z = 0;                       // LTA
  int k = 1;                       // LTA candidates per forecast
  std::array<double, 2> resolution{0.0, 0.0};  // FHP canonical (w, h)

  std::vector<VideoMeta> videos;
  std::vector<SegmentRecord> segments;
  std::vector<HandRecord> hands;
  std::vector<LtaRecord> lta;
  std::vector<ImageRecord> images;
  std::vector<BoxRecord> boxes;
};

struct Violation {
  std::string where;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

// Every invariant breach in `set`; empty means valid. Never throws.
std::vector<Violation> validate_dataset(const AnnotationSet& set);

// Prediction-side checks against its ground truth: ids the prediction
// references must exist in the ground truth.
std::vector<Violation> check_references(const AnnotationSet& gt, const AnnotationSet& pred);

}  // namespace egoforge
