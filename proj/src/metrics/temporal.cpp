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

#include "egoforge/metrics/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <set>

#include "egoforge/core/error.hpp"
#include "egoforge/metrics/average_precision.hpp"
#include "egoforge/metrics/iou.hpp"

namespace egoforge::metrics {

namespace {

void check_threshold(double t) {
  if (!(t > 0.0 && t <= 1.0)) throw ParameterError("IoU threshold must lie in (0, 1]");
}

std::string threshold_label(const char* prefix, double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s@%.2f", prefix, t);
  return buf;
}

}  // namespace

std::string group_key(std::string_view video_id, std::string_view label) {
  std::string key(video_id);
  key += '\x1f';
  key += label;
  return key;
}

double recall_at_k(const std::map<std::string, std::vector<RankedSegment>>& preds,
                   const std::map<std::string, std::vector<TemporalSegment>>& gts, int k,
                   double tiou_thresh) {
  if (k < 1) throw ParameterError("k must be at least 1");
  check_threshold(tiou_thresh);
  std::size_t total = 0;
  std::size_t hits = 0;
  for (const auto& [key, segments] : gts) {
    total += segments.size();
    const auto it = preds.find(key);
    if (it == preds.end()) continue;
    std::vector<std::size_t> order(it->second.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return it->second[a].score > it->second[b].score;
    });
    const std::size_t top = std::min(order.size(), static_cast<std::size_t>(k));
    for (const auto& gt : segments) {
      for (std::size_t r = 0; r < top; ++r) {
        if (temporal_iou(it->second[order[r]].segment, gt) >= tiou_thresh) {
          ++hits;
          break;
        }
      }
    }
  }
  if (total == 0) throw DataError("undefined recall: no ground truth");
  return static_cast<double>(hits) / static_cast<double>(total);
}

std::vector<double> default_map_thresholds() { return {0.1, 0.2, 0.3, 0.4, 0.5}; }

MetricReport average_map(std::span<const ClassSegment> preds, std::span<const ClassSegment> gts,
                         std::span<const double> tiou_thresholds, Execution ex) {
  if (gts.empty()) throw DataError("average mAP undefined: no ground truth");
  if (tiou_thresholds.empty()) throw ParameterError("need at least one tIoU threshold");
  for (double t : tiou_thresholds) check_threshold(t);

  std::map<std::string, std::size_t> video_ids;
  auto video_index = [&](const std::string& v) {
    return video_ids.emplace(v, video_ids.size()).first->second;
  };
  std::map<int, std::vector<std::size_t>> gt_by_class;
  std::vector<std::size_t> gt_video(gts.size());
  for (std::size_t g = 0; g < gts.size(); ++g) {
    gt_video[g] = video_index(gts[g].video_id);
    gt_by_class[gts[g].class_id].push_back(g);
  }
  std::map<int, std::vector<std::size_t>> pred_by_class;
  std::vector<std::size_t> pred_video(preds.size());
  for (std::size_t p = 0; p < preds.size(); ++p) {
    pred_video[p] = video_index(preds[p].video_id);
    pred_by_class[preds[p].class_id].push_back(p);
  }

  const std::vector<int> classes = [&] {
    std::vector<int> c;
    for (const auto& [cls, _] : gt_by_class) c.push_back(cls);
    return c;
  }();
  const std::size_t num_tasks = classes.size() * tiou_thresholds.size();
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
    for (std::size_t i = 0; i < pidx.size(); ++i) items[i] = {pred_video[pidx[i]], preds[pidx[i]].score};
    std::vector<std::size_t> groups(gidx.size());
    for (std::size_t i = 0; i < gidx.size(); ++i) groups[i] = gt_video[gidx[i]];
    const auto tp = greedy_match(items, groups, tiou_thresholds[t], [&](std::size_t p, std::size_t g) {
      return temporal_iou(preds[pidx[p]].segment, gts[gidx[g]].segment);
    });
    ap[static_cast<std::size_t>(task)] = all_point_ap(tp, gidx.size());
  }

  MetricReport report;
  report.name = "avg-mAP";
  report.family = MetricFamily::fraction;
  report.count = gts.size();
  double total = 0.0;
  for (std::size_t t = 0; t < tiou_thresholds.size(); ++t) {
    double sum = 0.0;
    for (std::size_t c = 0; c < classes.size(); ++c) sum += ap[t * classes.size() + c];
    const double map = sum / static_cast<double>(classes.size());
    report.breakdown[threshold_label("mAP", tiou_thresholds[t])] = map;
    total += map;
  }
  report.value = total / static_cast<double>(tiou_thresholds.size());
  return report;
}

}  // namespace egoforge::metrics
