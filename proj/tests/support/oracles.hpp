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

// Brute-force reference implementations. They share no code with the
// library: overlaps are recomputed from raw coordinates, matching is redone
// from scratch for every score cutoff, and edit distance is a breadth-first
// search over edit operations rather than a dynamic program.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace oracle {

inline double interval_iou(double a0, double a1, double b0, double b1) {
  const double la = a1 - a0;
  const double lb = b1 - b0;
  if (la == 0.0 && lb == 0.0) return a0 == b0 ? 1.0 : 0.0;
  if (la == 0.0 || lb == 0.0) return 0.0;
  const double inter = std::max(0.0, std::min(a1, b1) - std::max(a0, b0));
  return inter / (la + lb - inter);
}

using Box = std::array<double, 4>;

inline double box_iou(const Box& a, const Box& b) {
  const double aa = (a[2] - a[0]) * (a[3] - a[1]);
  const double ab = (b[2] - b[0]) * (b[3] - b[1]);
  if (aa <= 0.0 || ab <= 0.0) return 0.0;
  const double iw = std::max(0.0, std::min(a[2], b[2]) - std::max(a[0], b[0]));
  const double ih = std::max(0.0, std::min(a[3], b[3]) - std::max(a[1], b[1]));
  const double inter = iw * ih;
  return inter / (aa + ab - inter);
}

// Stable descending-score order of `scores`.
inline std::vector<std::size_t> score_order(const std::vector<double>& scores) {
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return idx;
}

// A detection problem reduced to groups (video or image), an overlap
// predicate, and scores. `ok(p, g)` is the overlap or -1 when the pair may
// never match.
struct MatchProblem {
  std::vector<std::size_t> pred_group;
  std::vector<double> pred_score;
  std::vector<std::size_t> gt_group;
};

// True-positive count among the first `n` ranked predictions, matching the
// prefix from scratch: each prediction in rank order claims the unmatched
// same-group ground truth of highest overlap >= thresh, ties to lower index.
template <class Overlap>
std::size_t prefix_true_positives(const MatchProblem& m, const std::vector<std::size_t>& order,
                                  std::size_t n, double thresh, Overlap overlap) {
  std::vector<bool> used(m.gt_group.size(), false);
  std::size_t tp = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t p = order[r];
    long best = -1;
    double best_ov = -1.0;
    for (std::size_t g = 0; g < m.gt_group.size(); ++g) {
      if (used[g] || m.gt_group[g] != m.pred_group[p]) continue;
      const double ov = overlap(p, g);
      if (ov >= thresh && (best < 0 || ov > best_ov)) {
        best = static_cast<long>(g);
        best_ov = ov;
      }
    }
    if (best >= 0) {
      used[static_cast<std::size_t>(best)] = true;
      ++tp;
    }
  }
  return tp;
}

// AP by enumerating every score cutoff: precision and recall at each rank
// prefix, then the area under the monotone precision envelope.
template <class Overlap>
double cutoff_ap(const MatchProblem& m, double thresh, Overlap overlap) {
  const std::size_t num_gt = m.gt_group.size();
  const std::size_t n = m.pred_score.size();
  if (num_gt == 0 || n == 0) return 0.0;
  const auto order = score_order(m.pred_score);
  std::vector<double> precision(n + 1, 0.0), recall(n + 1, 0.0);
  for (std::size_t c = 1; c <= n; ++c) {
    const auto tp = static_cast<double>(prefix_true_positives(m, order, c, thresh, overlap));
    precision[c] = tp / static_cast<double>(c);
    recall[c] = tp / static_cast<double>(num_gt);
  }
  double ap = 0.0;
  for (std::size_t c = 1; c <= n; ++c) {
    const double dr = recall[c] - recall[c - 1];
    if (dr <= 0.0) continue;
    double envelope = 0.0;
    for (std::size_t d = c; d <= n; ++d) envelope = std::max(envelope, precision[d]);
    ap += dr * envelope;
  }
  return ap;
}

struct Seg {
  std::string video;
  int cls = 0;
  double start = 0.0;
  double end = 0.0;
  double score = 1.0;
};

// Mean over thresholds of the mean AP over classes that have ground truth.
inline double average_map(const std::vector<Seg>& preds, const std::vector<Seg>& gts,
                          const std::vector<double>& thresholds) {
  std::set<int> classes;
  for (const auto& g : gts) classes.insert(g.cls);
  double total = 0.0;
  for (double t : thresholds) {
    double sum = 0.0;
    for (int c : classes) {
      std::vector<const Seg*> p, g;
      for (const auto& s : preds) {
        if (s.cls == c) p.push_back(&s);
      }
      for (const auto& s : gts) {
        if (s.cls == c) g.push_back(&s);
      }
      std::map<std::string, std::size_t> vid;
      MatchProblem m;
      for (auto* s : p) {
        m.pred_group.push_back(vid.emplace(s->video, vid.size()).first->second);
        m.pred_score.push_back(s->score);
      }
      for (auto* s : g) m.gt_group.push_back(vid.emplace(s->video, vid.size()).first->second);
      sum += cutoff_ap(m, t, [&](std::size_t i, std::size_t j) {
        return interval_iou(p[i]->start, p[i]->end, g[j]->start, g[j]->end);
      });
    }
    total += sum / static_cast<double>(classes.size());
  }
  return total / static_cast<double>(thresholds.size());
}

struct Ranked {
  std::string key;
  double start = 0.0;
  double end = 0.0;
  double score = 0.0;
};

struct Truth {
  std::string key;
  double start = 0.0;
  double end = 0.0;
};

// Checks every (gt, top-k prediction) pair.
inline double recall_at_k(const std::vector<Ranked>& preds, const std::vector<Truth>& gts, int k,
                          double thresh) {
  std::size_t hits = 0;
  for (const auto& g : gts) {
    std::vector<const Ranked*> mine;
    for (const auto& p : preds) {
      if (p.key == g.key) mine.push_back(&p);
    }
    std::stable_sort(mine.begin(), mine.end(), [](const Ranked* a, const Ranked* b) { return a->score > b->score; });
    bool hit = false;
    for (std::size_t r = 0; r < mine.size() && r < static_cast<std::size_t>(k); ++r) {
      hit = hit || interval_iou(mine[r]->start, mine[r]->end, g.start, g.end) >= thresh;
    }
    hits += hit ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(gts.size());
}

struct Det {
  std::string image;
  int cls = 0;
  Box box{};
  double score = 1.0;
};

inline double box_ap(const std::vector<Det>& preds, const std::vector<Det>& gts, double thresh) {
  std::set<int> classes;
  for (const auto& g : gts) classes.insert(g.cls);
  double sum = 0.0;
  for (int c : classes) {
    std::vector<const Det*> p, g;
    for (const auto& d : preds) {
      if (d.cls == c) p.push_back(&d);
    }
    for (const auto& d : gts) {
      if (d.cls == c) g.push_back(&d);
    }
    std::map<std::string, std::size_t> img;
    MatchProblem m;
    for (auto* d : p) {
      m.pred_group.push_back(img.emplace(d->image, img.size()).first->second);
      m.pred_score.push_back(d->score);
    }
    for (auto* d : g) m.gt_group.push_back(img.emplace(d->image, img.size()).first->second);
    sum += cutoff_ap(m, thresh, [&](std::size_t i, std::size_t j) { return box_iou(p[i]->box, g[j]->box); });
  }
  return sum / static_cast<double>(classes.size());
}

struct Sta {
  std::string keyframe;
  Box box{};
  int noun = 0;
  int verb = 0;
  double ttc = 1.0;
  double score = 1.0;
};

// criteria bits: 1 = verb must agree, 2 = ttc within tolerance.
inline double sta_ap(const std::vector<Sta>& preds, const std::vector<Sta>& gts, int criteria,
                     double iou_thresh, double ttc_tol, int top_k) {
  // Top-k per keyframe, then back to input order.
  std::vector<bool> keep(preds.size(), false);
  std::set<std::string> frames;
  for (const auto& p : preds) frames.insert(p.keyframe);
  for (const auto& f : frames) {
    std::vector<std::size_t> mine;
    std::vector<double> scores;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      if (preds[i].keyframe == f) {
        mine.push_back(i);
        scores.push_back(preds[i].score);
      }
    }
    const auto order = score_order(scores);
    for (std::size_t r = 0; r < order.size() && r < static_cast<std::size_t>(top_k); ++r) keep[mine[order[r]]] = true;
  }
  std::vector<Sta> ordered;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (keep[i]) ordered.push_back(preds[i]);
  }
  std::set<int> nouns;
  for (const auto& g : gts) nouns.insert(g.noun);
  double sum = 0.0;
  for (int c : nouns) {
    std::vector<const Sta*> p, g;
    for (const auto& s : ordered) {
      if (s.noun == c) p.push_back(&s);
    }
    for (const auto& s : gts) {
      if (s.noun == c) g.push_back(&s);
    }
    std::map<std::string, std::size_t> kf;
    MatchProblem m;
    for (auto* s : p) {
      m.pred_group.push_back(kf.emplace(s->keyframe, kf.size()).first->second);
      m.pred_score.push_back(s->score);
    }
    for (auto* s : g) m.gt_group.push_back(kf.emplace(s->keyframe, kf.size()).first->second);
    sum += cutoff_ap(m, iou_thresh, [&](std::size_t i, std::size_t j) {
      if ((criteria & 1) && p[i]->verb != g[j]->verb) return -1.0;
      if ((criteria & 2) && !(std::abs(p[i]->ttc - g[j]->ttc) <= ttc_tol)) return -1.0;
      return box_iou(p[i]->box, g[j]->box);
    });
  }
  return sum / static_cast<double>(nouns.size());
}

// Quadratic greedy NMS: walk boxes best first and keep one unless a kept
// box overlaps it beyond the threshold.
inline std::vector<std::size_t> nms(const std::vector<Box>& boxes, const std::vector<double>& scores,
                                    double thresh) {
  std::vector<std::size_t> kept;
  for (std::size_t i : score_order(scores)) {
    bool ok = true;
    for (std::size_t k : kept) ok = ok && box_iou(boxes[i], boxes[k]) <= thresh;
    if (ok) kept.push_back(i);
  }
  return kept;
}

// Interval NMS over a then b, best first, ties a before b.
inline std::vector<Ranked> interval_nms(const std::vector<Ranked>& a, const std::vector<Ranked>& b,
                                        double thresh) {
  std::vector<Ranked> all = a;
  all.insert(all.end(), b.begin(), b.end());
  std::vector<double> scores;
  for (const auto& r : all) scores.push_back(r.score);
  std::vector<Ranked> kept;
  for (std::size_t i : score_order(scores)) {
    bool ok = true;
    for (const auto& k : kept) ok = ok && interval_iou(all[i].start, all[i].end, k.start, k.end) <= thresh;
    if (ok) kept.push_back(all[i]);
  }
  return kept;
}

// Edit distance as the length of a shortest path from `a` to `b` where each
// step inserts, deletes, or substitutes one symbol. Intermediate strings use
// only symbols of `b` and never grow past max(|a|, |b|); neither restriction
// changes the optimum. Symbols must be small nonnegative integers.
inline std::size_t bfs_edit_distance(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> alphabet(b.begin(), b.end());
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  const std::size_t cap = std::max(a.size(), b.size());
  // Each distinct symbol gets a nonzero digit so strings encode uniquely.
  std::map<int, int> code;
  for (std::size_t i = 0; i < alphabet.size(); ++i) code[alphabet[i]] = static_cast<int>(i) + 1;
  for (int s : a) code.emplace(s, static_cast<int>(code.size()) + 1);
  const auto base = static_cast<std::uint64_t>(code.size() + 1);
  auto encode = [&](const std::vector<int>& s) {
    std::uint64_t v = 0;
    for (int x : s) v = v * base + static_cast<std::uint64_t>(code.at(x));
    return v;
  };
  std::vector<int> letters;
  for (int x : alphabet) letters.push_back(x);
  const std::uint64_t target = encode(b);
  std::set<std::uint64_t> seen{encode(a)};
  std::deque<std::pair<std::vector<int>, std::size_t>> queue{{a, 0}};
  while (!queue.empty()) {
    auto [s, d] = queue.front();
    queue.pop_front();
    if (encode(s) == target) return d;
    auto visit = [&](std::vector<int> t) {
      if (seen.insert(encode(t)).second) queue.emplace_back(std::move(t), d + 1);
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto t = s;
      t.erase(t.begin() + static_cast<long>(i));
      visit(std::move(t));
      for (int x : letters) {
        if (x == s[i]) continue;
        auto u = s;
        u[i] = x;
        visit(std::move(u));
      }
    }
    if (s.size() < cap) {
      for (std::size_t i = 0; i <= s.size(); ++i) {
        for (int x : letters) {
          auto t = s;
          t.insert(t.begin() + static_cast<long>(i), x);
          visit(std::move(t));
        }
      }
    }
  }
  return static_cast<std::size_t>(-1);
}

// out[r] = sum_c w[r * cols + c] * x[c] + bias[r], accumulated left to right.
inline std::vector<double> matvec(const std::vector<double>& w, const std::vector<double>& bias,
                                  const std::vector<double>& x) {
  const std::size_t cols = x.size();
  std::vector<double> out(bias.size());
  for (std::size_t r = 0; r < bias.size(); ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += w[r * cols + c] * x[c];
    out[r] = acc + bias[r];
  }
  return out;
}

}  // namespace oracle
