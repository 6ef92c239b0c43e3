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

#include "egoforge/metrics/detection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>

#include "egoforge/core/error.hpp"
#include "egoforge/metrics/average_precision.hpp"
#include "egoforge/metrics/iou.hpp"

namespace egoforge::metrics {

namespace {

std::string threshold_label(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "AP@%.2f", t);
  return buf;
}

// Interns string ids into dense indices.
class IdTable {
 public:
  std::size_t operator()(const std::string& id) { return ids_.emplace(id, ids_.size()).first->second; }

 private:
  std::map<std::string, std::size_t> ids_;
};

bool needs_verb(StaCriteria c) { return c == StaCriteria::noun_verb || c == StaCriteria::overall; }
bool needs_ttc(StaCriteria c) { return c == StaCriteria::noun_ttc || c == StaCriteria::overall; }

std::vector<std::size_t> top_k_per_keyframe(std::span<const KeyframeSta> preds, int k) {
  std::map<std::string, std::vector<std::size_t>> by_frame;
  for (std::size_t i = 0; i < preds.size(); ++i) by_frame[preds[i].keyframe_id].push_back(i);
  std::vector<std::size_t> kept;
  for (auto& [_, idx] : by_frame) {
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return preds[a].instance.score > preds[b].instance.score;
    });
    const std::size_t n = std::min(idx.size(), static_cast<std::size_t>(k));
    kept.insert(kept.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n));
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

const char* criteria_name(StaCriteria c) {
  switch (c) {
    case StaCriteria::noun: return "Noun";
    case StaCriteria::noun_verb: return "Noun+Verb";
    case StaCriteria::noun_ttc: return "Noun+TTC";
    case StaCriteria::overall: return "Overall";
  }
  return "?";
}

}  // namespace

double sta_ap(std::span<const KeyframeSta> preds, std::span<const KeyframeSta> gts,
              StaCriteria criteria, const StaApParams& params, Execution ex) {
  if (gts.empty()) throw DataError("STA AP undefined: no ground truth");
  if (params.top_k < 1) throw ParameterError("top_k must be at least 1");
  if (!(params.box_iou_thresh > 0.0 && params.box_iou_thresh <= 1.0)) {
    throw ParameterError("box IoU threshold must lie in (0, 1]");
  }
  if (!(params.ttc_tol_s >= 0.0)) throw ParameterError("ttc tolerance must be nonnegative");

  IdTable frames;
  std::map<int, std::vector<std::size_t>> gt_by_noun;
  std::vector<std::size_t> gt_frame(gts.size());
  for (std::size_t g = 0; g < gts.size(); ++g) {
    gt_frame[g] = frames(gts[g].keyframe_id);
    gt_by_noun[gts[g].instance.noun_id].push_back(g);
  }
  std::map<int, std::vector<std::size_t>> pred_by_noun;
  std::vector<std::size_t> pred_frame(preds.size());
  for (std::size_t p : top_k_per_keyframe(preds, params.top_k)) {
    pred_frame[p] = frames(preds[p].keyframe_id);
    pred_by_noun[preds[p].instance.noun_id].push_back(p);
  }

  std::vector<int> nouns;
  for (const auto& [n, _] : gt_by_noun) nouns.push_back(n);
  std::vector<double> ap(nouns.size(), 0.0);

#pragma omp parallel for schedule(dynamic) num_threads(threads_for(ex)) if (ex == Execution::parallel)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(nouns.size()); ++c) {
    const auto uc = static_cast<std::size_t>(c);
    const auto& gidx = gt_by_noun.at(nouns[uc]);
    const auto pit = pred_by_noun.find(nouns[uc]);
    if (pit == pred_by_noun.end()) continue;
    const auto& pidx = pit->second;
    std::vector<ScoredItem> items(pidx.size());
    for (std::size_t i = 0; i < pidx.size(); ++i) {
      items[i] = {pred_frame[pidx[i]], preds[pidx[i]].instance.score};
    }
    std::vector<std::size_t> groups(gidx.size());
    for (std::size_t i = 0; i < gidx.size(); ++i) groups[i] = gt_frame[gidx[i]];
    const auto tp = greedy_match(items, groups, params.box_iou_thresh, [&](std::size_t p, std::size_t g) {
      const auto& pi = preds[pidx[p]].instance;
      const auto& gi = gts[gidx[g]].instance;
      if (needs_verb(criteria) && pi.verb_id != gi.verb_id) return -1.0;
      if (needs_ttc(criteria) && std::abs(pi.ttc_s - gi.ttc_s) > params.ttc_tol_s) return -1.0;
      return box_iou(pi.box, gi.box);
    });
    ap[uc] = all_point_ap(tp, gidx.size());
  }
  double sum = 0.0;
  for (double a : ap) sum += a;
  return sum / static_cast<double>(nouns.size());
}

std::vector<MetricReport> sta_report(std::span<const KeyframeSta> preds,
                                     std::span<const KeyframeSta> gts, const StaApParams& params,
                                     Execution ex) {
  std::vector<MetricReport> out;
  for (StaCriteria c : {StaCriteria::noun, StaCriteria::noun_verb, StaCriteria::noun_ttc,
                        StaCriteria::overall}) {
    MetricReport r;
    r.name = criteria_name(c);
    r.value = sta_ap(preds, gts, c, params, ex);
    r.count = gts.size();
    r.family = MetricFamily::fraction;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<double> coco_iou_thresholds() {
  std::vector<double> t;
  for (int i = 0; i < 10; ++i) t.push_back(static_cast<double>(50 + 5 * i) / 100.0);
  return t;
}

MetricReport box_ap(std::span<const ImageDetection> preds, std::span<const ImageDetection> gts,
                    std::span<const double> iou_thresholds, Execution ex) {
  if (gts.empty()) throw DataError("box AP undefined: no ground truth");
  if (iou_thresholds.empty()) throw ParameterError("need at least one IoU threshold");
  for (double t : iou_thresholds) {
    if (!(t > 0.0 && t <= 1.0)) throw ParameterError("IoU threshold must lie in (0, 1]");
  }

  // Evaluated thresholds: the requested ones followed by 0.50 and 0.75.
  std::vector<double> thresholds(iou_thresholds.begin(), iou_thresholds.end());
  thresholds.push_back(0.5);
  thresholds.push_back(0.75);

  IdTable images;
  std::map<int, std::vector<std::size_t>> gt_by_class;
  std::vector<std::size_t> gt_image(gts.size());
  for (std::size_t g = 0; g < gts.size(); ++g) {
    gt_image[g] = images(gts[g].image_id);
    gt_by_class[gts[g].detection.class_id].push_back(g);
  }
  std::map<int, std::vector<std::size_t>> pred_by_class;
  std::vector<std::size_t> pred_image(preds.size());
  for (std::size_t p = 0; p < preds.size(); ++p) {
    pred_image[p] = images(preds[p].image_id);
    pred_by_class[preds[p].detection.class_id].push_back(p);
  }
  std::vector<int> classes;
  for (const auto& [c, _] : gt_by_class) classes.push_back(c);

  const std::size_t num_tasks = classes.size() * thresholds.size();
  std::vector<double> ap(num_tasks, 0.0);
#pragma omp parallel for schedule(dynamic) num_threads(threads_for(ex)) if (ex == Execution::parallel)
  for (std::int64_t task = 0; task < static_cast<std::int64_t>(num_tasks); ++task) {
    const std::size_t t = static_cast<std::size_t>(task) / classes.size();
    const int cls = classes[static_cast<std::size_t>(task) % classes.size()];
    const auto& gidx = gt_by_class.at(cls);
    const auto pit = pred_by_class.find(cls);
    if (pit == pred_by_class.end()) continue;
    const auto& pidx = pit->second;
    std::vector<ScoredItem> items(pidx.size());
    for (std::size_t i = 0; i < pidx.size(); ++i) items[i] = {pred_image[pidx[i]], preds[pidx[i]].detection.score};
    std::vector<std::size_t> groups(gidx.size());
    for (std::size_t i = 0; i < gidx.size(); ++i) groups[i] = gt_image[gidx[i]];
    const auto tp = greedy_match(items, groups, thresholds[t], [&](std::size_t p, std::size_t g) {
      return box_iou(preds[pidx[p]].detection.box, gts[gidx[g]].detection.box);
    });
    ap[static_cast<std::size_t>(task)] = all_point_ap(tp, gidx.size());
  }

  auto mean_over_classes = [&](std::size_t t) {
    double sum = 0.0;
    for (std::size_t c = 0; c < classes.size(); ++c) sum += ap[t * classes.size() + c];
    return sum / static_cast<double>(classes.size());
  };

  MetricReport report;
  report.name = "AP";
  report.family = MetricFamily::fraction;
  report.count = gts.size();
  double total = 0.0;
  for (std::size_t t = 0; t < iou_thresholds.size(); ++t) {
    const double v = mean_over_classes(t);
    report.breakdown[threshold_label(thresholds[t])] = v;
    total += v;
  }
  report.value = total / static_cast<double>(iou_thresholds.size());
  report.breakdown["AP50"] = mean_over_classes(thresholds.size() - 2);
  report.breakdown["AP75"] = mean_over_classes(thresholds.size() - 1);
  return report;
}

}  // namespace egoforge::metrics
