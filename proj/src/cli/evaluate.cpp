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

#include "egoforge/cli/evaluate.hpp"

#include <cstdio>
#include <set>
#include <string>

#include "egoforge/core/error.hpp"
#include "egoforge/fusion/vote.hpp"
#include "egoforge/metrics/hands.hpp"

namespace egoforge::cli {

namespace {

constexpr std::size_t kMaxListedViolations = 20;

[[noreturn]] void report_violations(const std::vector<Violation>& v, const std::string& what) {
  std::string msg = what + ": " + std::to_string(v.size()) + " violation(s)";
  for (std::size_t i = 0; i < v.size() && i < kMaxListedViolations; ++i) {
    msg += "\n  " + v[i].where + ": " + v[i].message;
  }
  if (v.size() > kMaxListedViolations) msg += "\n  ...";
  throw DataError(msg);
}

// Runs a domain constructor, turning its ParameterError into a DataError
// that names the offending record.
template <class F>
auto checked(const std::string& where, F&& make) {
  try {
    return make();
  } catch (const ParameterError& e) {
    throw DataError(where + ": " + e.what());
  }
}

std::string at(std::size_t i) { return "instances[" + std::to_string(i) + "]"; }

std::string fixed(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", t);
  return buf;
}

BoundingBox make_box(const std::array<double, 4>& b) { return BoundingBox(b[0], b[1], b[2], b[3]); }

ActionSequence to_sequence(const std::vector<std::array<int, 2>>& seq, const ActionVocabulary& vocab) {
  ActionSequence out;
  out.reserve(seq.size());
  for (const auto& a : seq) out.emplace_back(a[0], a[1], vocab);
  return out;
}

std::vector<double> flatten_rows(const std::vector<std::vector<double>>& rows) {
  std::vector<double> out;
  for (const auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  return out;
}

}  // namespace

void require_valid(const AnnotationSet& set, const char* what) {
  const auto v = validate_dataset(set);
  if (!v.empty()) report_violations(v, what);
}

AnnotationSet prepare_prediction(const AnnotationSet& gt, const AnnotationSet& pred) {
  require_valid(gt, "ground truth");
  AnnotationSet p = pred;
  if (p.track != gt.track) {
    throw DataError("prediction track " + std::string(track_name(p.track)) + " does not match ground truth " +
                    std::string(track_name(gt.track)));
  }
  if (p.track == Track::mq || p.track == Track::scod) {
    if (p.num_classes == 0) p.num_classes = gt.num_classes;
    if (p.num_classes != gt.num_classes) throw DataError("prediction class count differs from ground truth");
  }
  if (p.track == Track::lta || p.track == Track::sta) {
    if (p.vocab.num_verbs == 0 && p.vocab.num_nouns == 0) p.vocab = gt.vocab;
    if (p.vocab.num_verbs != gt.vocab.num_verbs || p.vocab.num_nouns != gt.vocab.num_nouns) {
      throw DataError("prediction vocabulary differs from ground truth");
    }
  }
  if (p.track == Track::lta) {
    if (p.z == 0) {
      p.z = gt.z;
      p.k = gt.k;
    }
    if (p.z != gt.z) {
      throw DataError("prediction Z=" + std::to_string(p.z) + " differs from ground truth Z=" + std::to_string(gt.z));
    }
  }
  if (p.track == Track::fhp && p.resolution[0] == 0.0) p.resolution = gt.resolution;
  require_valid(p, "predictions");
  const auto refs = check_references(gt, p);
  if (!refs.empty()) report_violations(refs, "predictions");
  return p;
}

std::vector<metrics::ClassSegment> class_segments(const AnnotationSet& set) {
  std::vector<metrics::ClassSegment> out;
  for (std::size_t i = 0; i < set.segments.size(); ++i) {
    const auto& r = set.segments[i];
    out.push_back(checked(at(i), [&] {
      return metrics::ClassSegment{r.video_id, r.class_id, TemporalSegment(r.start_s, r.end_s), r.score};
    }));
  }
  return out;
}

std::map<std::string, std::vector<RankedSegment>> ranked_groups(const AnnotationSet& set) {
  std::map<std::string, std::vector<RankedSegment>> out;
  for (std::size_t i = 0; i < set.segments.size(); ++i) {
    const auto& r = set.segments[i];
    const std::string label = set.track == Track::mq ? std::to_string(r.class_id) : r.query_id;
    out[metrics::group_key(r.video_id, label)].push_back(checked(at(i), [&] {
      return RankedSegment(TemporalSegment(r.start_s, r.end_s), r.score, label);
    }));
  }
  return out;
}

std::vector<metrics::KeyframeSta> keyframe_sta(const AnnotationSet& set) {
  std::vector<metrics::KeyframeSta> out;
  for (std::size_t i = 0; i < set.boxes.size(); ++i) {
    const auto& r = set.boxes[i];
    if (!r.verb || !r.ttc_s) throw DataError(at(i) + ": STA instance needs verb and ttc_s");
    out.push_back(checked(at(i), [&] {
      return metrics::KeyframeSta{r.keyframe_id, StaInstance(make_box(r.box), r.noun, *r.verb, *r.ttc_s, r.score)};
    }));
  }
  return out;
}

fusion::KeyframePredictions keyframe_predictions(const AnnotationSet& set) {
  fusion::KeyframePredictions out;
  for (auto& k : keyframe_sta(set)) out[k.keyframe_id].push_back(std::move(k.instance));
  return out;
}

std::vector<metrics::ImageDetection> image_detections(const AnnotationSet& set) {
  std::vector<metrics::ImageDetection> out;
  for (std::size_t i = 0; i < set.boxes.size(); ++i) {
    const auto& r = set.boxes[i];
    out.push_back(checked(at(i), [&] {
      return metrics::ImageDetection{r.keyframe_id, Detection(make_box(r.box), r.noun, r.score)};
    }));
  }
  return out;
}

std::map<metrics::ClipKey, ActionSequence> lta_ground_truth(const AnnotationSet& gt) {
  std::map<metrics::ClipKey, ActionSequence> out;
  for (std::size_t i = 0; i < gt.lta.size(); ++i) {
    const auto& r = gt.lta[i];
    if (r.candidates.size() != 1) throw DataError(at(i) + ": ground truth needs one sequence");
    auto seq = checked(at(i), [&] { return to_sequence(r.candidates.front(), gt.vocab); });
    if (!out.emplace(metrics::ClipKey{r.video_id, r.clip_index}, std::move(seq)).second) {
      throw DataError(at(i) + ": duplicate clip " + r.video_id + "#" + std::to_string(r.clip_index));
    }
  }
  return out;
}

std::optional<ForecastMatrix> record_matrix(const AnnotationSet& set, const LtaRecord& r) {
  if (r.verb_rows.empty() && r.noun_rows.empty()) return std::nullopt;
  return ForecastMatrix(set.z, set.vocab, flatten_rows(r.verb_rows), flatten_rows(r.noun_rows));
}

std::vector<LtaForecast> lta_forecasts(const AnnotationSet& pred, int k) {
  std::vector<LtaForecast> out;
  for (std::size_t i = 0; i < pred.lta.size(); ++i) {
    const auto& r = pred.lta[i];
    out.push_back(checked(at(i), [&] {
      auto matrix = record_matrix(pred, r);
      std::vector<ActionSequence> candidates;
      for (const auto& seq : r.candidates) candidates.push_back(to_sequence(seq, pred.vocab));
      if (candidates.empty()) candidates = fusion::expand_candidates(*matrix, k);
      return LtaForecast(r.video_id, r.clip_index, pred.z, std::move(candidates), std::move(matrix));
    }));
  }
  return out;
}

std::vector<double> map_thresholds(const io::RunConfig& cfg) {
  return cfg.tiou_thresholds.value_or(metrics::default_map_thresholds());
}

std::vector<double> nlq_thresholds(const io::RunConfig& cfg) {
  return cfg.tiou_thresholds.value_or(std::vector<double>{0.3, 0.5});
}

std::vector<int> recall_ks(const io::RunConfig& cfg, Track track) {
  if (cfg.recall_k) return *cfg.recall_k;
  return track == Track::nlq ? std::vector<int>{1, 5} : std::vector<int>{1};
}

std::vector<metrics::MetricReport> evaluate(const AnnotationSet& gt, const AnnotationSet& pred,
                                            const io::RunConfig& cfg, Execution ex) {
  using metrics::MetricFamily;
  using metrics::MetricReport;
  std::vector<MetricReport> out;
  switch (gt.track) {
    case Track::mq:
    case Track::nlq: {
      const auto preds = ranked_groups(pred);
      std::map<std::string, std::vector<TemporalSegment>> gts;
      for (const auto& [key, segs] : ranked_groups(gt)) {
        for (const auto& s : segs) gts[key].push_back(s.segment);
      }
      const auto thresholds = gt.track == Track::mq ? std::vector<double>{cfg.recall_tiou} : nlq_thresholds(cfg);
      for (int k : recall_ks(cfg, gt.track)) {
        for (double t : thresholds) {
          out.push_back({"R@" + std::to_string(k) + " tIoU=" + fixed(t), metrics::recall_at_k(preds, gts, k, t), {},
                         gt.segments.size(), MetricFamily::fraction});
        }
      }
      if (gt.track == Track::mq) {
        const auto p = class_segments(pred);
        const auto g = class_segments(gt);
        const auto thr = map_thresholds(cfg);
        out.push_back(metrics::average_map(p, g, thr, ex));
      }
      break;
    }
    case Track::fhp: {
      std::map<std::string, const HandRecord*> by_id;
      for (const auto& r : pred.hands) by_id.emplace(r.instance_id, &r);
      std::vector<HandKeyframes> ps, gs;
      for (const auto& r : gt.hands) {
        const auto it = by_id.find(r.instance_id);
        if (it == by_id.end()) throw DataError("no prediction for hand instance " + r.instance_id);
        ps.emplace_back(it->second->keyframes);
        gs.emplace_back(r.keyframes);
      }
      const auto rep = metrics::hand_displacement(ps, gs);
      auto add = [&](const char* name, const std::optional<double>& v, std::size_t n) {
        if (v) out.push_back({name, *v, {}, n, MetricFamily::displacement});
      };
      add("Left M.Disp", rep.left.mean_disp, rep.left.mean_count);
      add("Left C.Disp", rep.left.contact_disp, rep.left.contact_count);
      add("Right M.Disp", rep.right.mean_disp, rep.right.mean_count);
      add("Right C.Disp", rep.right.contact_disp, rep.right.contact_count);
      if (out.empty()) throw DataError("no visible hand keyframes in the ground truth");
      break;
    }
    case Track::lta: {
      const auto gts = lta_ground_truth(gt);
      const auto forecasts = lta_forecasts(pred, cfg.k);
      const std::pair<const char*, metrics::EdMode> modes[] = {
          {"Verb ED", metrics::EdMode::verb}, {"Noun ED", metrics::EdMode::noun}, {"Action ED", metrics::EdMode::action}};
      for (const auto& [name, mode] : modes) {
        out.push_back({name, metrics::edit_distance_at_z(forecasts, gts, mode, cfg.k, ex), {}, gts.size(),
                       MetricFamily::edit_distance});
      }
      break;
    }
    case Track::sta: {
      const metrics::StaApParams params{cfg.sta_iou, cfg.ttc_tol, cfg.top_k};
      const auto p = keyframe_sta(pred);
      const auto g = keyframe_sta(gt);
      out = metrics::sta_report(p, g, params, ex);
      break;
    }
    case Track::scod: {
      const auto p = image_detections(pred);
      const auto g = image_detections(gt);
      const auto thr = metrics::coco_iou_thresholds();
      out.push_back(metrics::box_ap(p, g, thr, ex));
      break;
    }
  }
  return out;
}

}  // namespace egoforge::cli
