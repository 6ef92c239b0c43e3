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

#include <map>
#include <vector>

#include "egoforge/core/dataset.hpp"
#include "egoforge/fusion/nms.hpp"
#include "egoforge/io/config.hpp"
#include "egoforge/metrics/detection.hpp"
#include "egoforge/metrics/edit_distance.hpp"
#include "egoforge/metrics/report.hpp"
#include "egoforge/metrics/temporal.hpp"
#include "egoforge/parallel.hpp"

namespace egoforge::cli {

// Copies the ground-truth header (class counts, vocabulary, Z, K, tables the
// prediction may omit) into a prediction set, then validates both sets and
// their cross references. Throws DataError listing every violation.
AnnotationSet prepare_prediction(const AnnotationSet& gt, const AnnotationSet& pred);
void require_valid(const AnnotationSet& set, const char* what);

// Metric reports for one track. `pred` must already be prepared.
std::vector<metrics::MetricReport> evaluate(const AnnotationSet& gt, const AnnotationSet& pred,
                                            const io::RunConfig& cfg, Execution ex = Execution::parallel);

// Record-to-domain conversions; invalid values surface as DataError.
std::vector<metrics::ClassSegment> class_segments(const AnnotationSet& set);
std::map<std::string, std::vector<RankedSegment>> ranked_groups(const AnnotationSet& set);
std::vector<metrics::KeyframeSta> keyframe_sta(const AnnotationSet& set);
fusion::KeyframePredictions keyframe_predictions(const AnnotationSet& set);
std::vector<metrics::ImageDetection> image_detections(const AnnotationSet& set);
std::map<metrics::ClipKey, ActionSequence> lta_ground_truth(const AnnotationSet& gt);
std::vector<LtaForecast> lta_forecasts(const AnnotationSet& pred, int k);
std::optional<ForecastMatrix> record_matrix(const AnnotationSet& set, const LtaRecord& r);

// Per-track defaults for the optional threshold lists.
std::vector<double> map_thresholds(const io::RunConfig& cfg);
std::vector<double> nlq_thresholds(const io::RunConfig& cfg);
std::vector<int> recall_ks(const io::RunConfig& cfg, Track track);

}  // namespace egoforge::cli
