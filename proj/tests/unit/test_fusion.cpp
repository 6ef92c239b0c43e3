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

#include <algorithm>
#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "egoforge/core/error.hpp"
#include "egoforge/fusion/encoding.hpp"
#include "egoforge/fusion/nms.hpp"
#include "egoforge/fusion/vote.hpp"
#include "egoforge/metrics/iou.hpp"

namespace egoforge::fusion {
namespace {

std::vector<BoundingBox> random_boxes(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0, 20);
  std::vector<BoundingBox> out;
  for (int i = 0; i < n; ++i) {
    const double x = u(rng), y = u(rng);
    out.emplace_back(x, y, x + 3 + u(rng) / 2, y + 3 + u(rng) / 2);
  }
  return out;
}

std::vector<oracle::Box> raw(const std::vector<BoundingBox>& b) {
  std::vector<oracle::Box> out;
  for (const auto& x : b) out.push_back({x.x1(), x.y1(), x.x2(), x.y2()});
  return out;
}

TEST(Nms, Examples) {
  const std::vector<BoundingBox> one{{0, 0, 1, 1}};
  EXPECT_EQ(nms(one, std::vector<double>{0.3}, 0.5), (std::vector<std::size_t>{0}));
  const std::vector<BoundingBox> two{{0, 0, 1, 1}, {0, 0, 1, 1}};
  EXPECT_EQ(nms(two, std::vector<double>{0.8, 0.9}, 0.5), (std::vector<std::size_t>{1}));
  EXPECT_THROW(nms(two, std::vector<double>{0.8}, 0.5), ParameterError);
}

TEST(Nms, MatchesQuadraticOracleBothPaths) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> sc(0, 1);
  for (int t = 0; t < 300; ++t) {
    const auto boxes = random_boxes(rng, 1 + t % 40);
    std::vector<double> scores;
    for (std::size_t i = 0; i < boxes.size(); ++i) scores.push_back(std::round(sc(rng) * 6) / 6);
    for (double th : {0.3, 0.5, 0.75}) {
      const auto s = nms(boxes, scores, th, Execution::serial);
      EXPECT_EQ(s, nms(boxes, scores, th, Execution::parallel));
      EXPECT_EQ(s, oracle::nms(raw(boxes), scores, th));
      for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) EXPECT_LE(metrics::box_iou(boxes[s[i]], boxes[s[j]]), th);
      }
    }
  }
}

TEST(Nms, ZeroScoreDuplicateOfSuppressedBoxChangesNothing) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> sc(0.1, 1);
  for (int t = 0; t < 100; ++t) {
    auto boxes = random_boxes(rng, 15);
    std::vector<double> scores;
    for (std::size_t i = 0; i < boxes.size(); ++i) scores.push_back(sc(rng));
    const auto kept = nms(boxes, scores, 0.4);
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      if (std::find(kept.begin(), kept.end(), i) != kept.end()) continue;
      auto b2 = boxes;
      auto s2 = scores;
      b2.push_back(boxes[i]);
      s2.push_back(0.0);
      EXPECT_EQ(nms(b2, s2, 0.4), kept);
      break;
    }
  }
}

StaInstance inst(BoundingBox b, double score, int noun = 0) { return StaInstance(b, noun, 0, 1.0, score); }

TEST(TopK, Examples) {
  const std::vector<StaInstance> three{inst({0, 0, 1, 1}, 0.9), inst({0, 0, 1, 1}, 0.5), inst({0, 0, 1, 1}, 0.7)};
  EXPECT_EQ(topk_by_noun_score(three, 5).size(), 3u);
  EXPECT_EQ(topk_indices(three, 2), (std::vector<std::size_t>{0, 2}));
}

TEST(TopK, MatchesSortPrefix) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> sc(0, 20);
  std::vector<StaInstance> xs;
  std::vector<double> scores;
  for (int i = 0; i < 100; ++i) {
    scores.push_back(sc(rng) / 20.0);
    xs.push_back(inst({0, 0, 1, 1}, scores.back()));
  }
  auto order = oracle::score_order(scores);
  order.resize(10);
  EXPECT_EQ(topk_indices(xs, 10), order);
}

TEST(SpliceAndNms, Examples) {
  FusionConfig cfg;
  KeyframePredictions a{{"k", {inst({0, 0, 1, 1}, 0.9)}}};
  KeyframePredictions b{{"k", {inst({5, 5, 6, 6}, 0.8)}}, {"j", {inst({0, 0, 1, 1}, 0.1)}}};
  auto out = splice_and_nms(a, b, cfg);
  EXPECT_EQ(out.at("k").size(), 2u);
  EXPECT_EQ(out.at("j").size(), 1u);

  KeyframePredictions c{{"k", {inst({0, 0, 1, 1}, 0.7, 3)}}};
  out = splice_and_nms(a, c, cfg);
  ASSERT_EQ(out.at("k").size(), 1u);
  EXPECT_EQ(out.at("k")[0].score, 0.9);
}

TEST(SpliceAndNms, MatchesOracleOnConcatenation) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> sc(0, 1);
  for (int t = 0; t < 200; ++t) {
    const auto ba = random_boxes(rng, 6), bb = random_boxes(rng, 5);
    KeyframePredictions a, b;
    std::vector<BoundingBox> all;
    std::vector<double> scores;
    for (const auto& x : ba) {
      a["k"].push_back(inst(x, sc(rng)));
      all.push_back(x);
      scores.push_back(a["k"].back().score);
    }
    for (const auto& x : bb) {
      b["k"].push_back(inst(x, sc(rng)));
      all.push_back(x);
      scores.push_back(b["k"].back().score);
    }
    const FusionConfig cfg;
    const auto got = splice_and_nms(a, b, cfg).at("k");
    const auto want = oracle::nms(raw(all), scores, cfg.nms_iou_thresh);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].box, all[want[i]]);
      EXPECT_EQ(got[i].score, scores[want[i]]);
    }
    // Alone it equals plain NMS; with distinct scores, order of sources is irrelevant.
    const auto alone = splice_and_nms(a, {}, cfg).at("k");
    EXPECT_EQ(alone.size(), nms(ba, std::vector<double>(scores.begin(), scores.begin() + 6), cfg.nms_iou_thresh).size());
    const auto swapped = splice_and_nms(b, a, cfg).at("k");
    ASSERT_EQ(swapped.size(), got.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(swapped[i].score, got[i].score);
  }
}

std::vector<RankedSegment> segs(std::initializer_list<std::tuple<double, double, double>> xs) {
  std::vector<RankedSegment> out;
  for (auto [a, b, s] : xs) out.push_back({{a, b}, s, "q"});
  return out;
}

TEST(PostFuse, Examples) {
  const auto a = segs({{0, 1, 0.2}, {5, 6, 0.9}});
  const auto only_a = post_fuse_segments(a, {}, 0.5);
  ASSERT_EQ(only_a.size(), 2u);
  EXPECT_EQ(only_a[0].score, 0.9);
  const auto dup = post_fuse_segments(segs({{0, 10, 0.8}}), segs({{0, 10, 0.6}}), 0.5);
  ASSERT_EQ(dup.size(), 1u);
  EXPECT_EQ(dup[0].score, 0.8);
}

TEST(PostFuse, MatchesIntervalOracle) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(0, 20), sc(0, 1);
  for (int t = 0; t < 300; ++t) {
    std::vector<RankedSegment> a, b;
    std::vector<oracle::Ranked> oa, ob;
    for (int i = 0; i < 8; ++i) {
      const double s = u(rng), e = s + 1 + u(rng) / 4, score = std::round(sc(rng) * 4) / 4;
      (i % 2 ? b : a).push_back({{s, e}, score, "q"});
      (i % 2 ? ob : oa).push_back({"q", s, e, score});
    }
    const auto got = post_fuse_segments(a, b, 0.5);
    const auto want = oracle::interval_nms(oa, ob, 0.5);
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].segment.start_s(), want[i].start);
      EXPECT_EQ(got[i].score, want[i].score);
    }
  }
}

ForecastMatrix matrix(int z, ActionVocabulary vocab, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.01, 1);
  auto rows = [&](int width) {
    std::vector<double> out;
    for (int p = 0; p < z; ++p) {
      std::vector<double> r(static_cast<std::size_t>(width));
      double s = 0;
      for (auto& x : r) s += (x = u(rng));
      for (auto& x : r) out.push_back(x / s);
    }
    return out;
  };
  auto v = rows(vocab.num_verbs);
  auto n = rows(vocab.num_nouns);
  return ForecastMatrix(z, vocab, std::move(v), std::move(n));
}

TEST(Vote, HandArithmetic) {
  const ActionVocabulary vocab{2, 1};
  const std::vector<ForecastMatrix> clips{ForecastMatrix(1, vocab, {0.6, 0.4}, {1.0}),
                                          ForecastMatrix(1, vocab, {0.2, 0.8}, {1.0})};
  const auto r = multi_clips_vote(clips);
  EXPECT_EQ(r.labels[0].verb_id(), 1);
  EXPECT_NEAR(r.fused.verb_row(0)[0], 0.4, 1e-15);
  EXPECT_THROW(multi_clips_vote({}), ParameterError);
  const std::vector<ForecastMatrix> mismatched{clips[0], ForecastMatrix(2, vocab, {1, 0, 1, 0}, {1, 1})};
  EXPECT_THROW(multi_clips_vote(mismatched), ParameterError);
}

TEST(Vote, MajorityTieBreaks) {
  const ActionVocabulary vocab{3, 1};
  const std::vector<ForecastMatrix> clips{ForecastMatrix(1, vocab, {0.5, 0.4, 0.1}, {1}),
                                          ForecastMatrix(1, vocab, {0.1, 0.6, 0.3}, {1})};
  // One vote each for verbs 0 and 1; mean probability favors verb 1.
  const auto r = multi_clips_vote(clips, {CombineRule::majority});
  EXPECT_EQ(r.labels[0].verb_id(), 1);
}

TEST(Vote, PermutationInvariantAndIdempotent) {
  std::mt19937_64 rng(16);
  const ActionVocabulary vocab{3, 4};
  for (int t = 0; t < 50; ++t) {
    std::vector<ForecastMatrix> clips;
    for (int c = 0; c < 4; ++c) clips.push_back(matrix(5, vocab, rng));
    for (auto rule : {CombineRule::mean_prob, CombineRule::majority}) {
      const auto ref = multi_clips_vote(clips, {rule});
      std::vector<int> perm{0, 1, 2, 3};
      while (std::next_permutation(perm.begin(), perm.end())) {
        std::vector<ForecastMatrix> p;
        for (int i : perm) p.push_back(clips[static_cast<std::size_t>(i)]);
        const auto r = multi_clips_vote(p, {rule});
        EXPECT_EQ(r.labels, ref.labels);
        EXPECT_EQ(r.fused.verb_probs(), ref.fused.verb_probs());
      }
      const std::vector<ForecastMatrix> same(3, clips[0]);
      const auto single = multi_clips_vote(std::span(clips.data(), 1), {rule});
      EXPECT_EQ(multi_clips_vote(same, {rule}).labels, single.labels);
    }
  }
}

TEST(ExpandCandidates, TopIsArgmaxAndOrderIsByProbability) {
  std::mt19937_64 rng(17);
  const ActionVocabulary vocab{2, 2};
  const auto m = matrix(3, vocab, rng);
  const auto c = expand_candidates(m, 5);
  ASSERT_EQ(c.size(), 5u);
  auto prob = [&](const ActionSequence& s) {
    double p = 1;
    for (int z = 0; z < 3; ++z) p *= m.verb_row(z)[s[z].verb_id()] * m.noun_row(z)[s[z].noun_id()];
    return p;
  };
  // Brute force over all 4^3 sequences.
  std::vector<double> all;
  for (int code = 0; code < 64; ++code) {
    double p = 1;
    for (int z = 0, x = code; z < 3; ++z, x /= 4) p *= m.verb_row(z)[(x % 4) / 2] * m.noun_row(z)[x % 2];
    all.push_back(p);
  }
  std::sort(all.rbegin(), all.rend());
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(prob(c[i]), all[i], 1e-15);
}

TEST(Encoding, Examples) {
  const auto zero = box_positional_encoding({0, 0, 0, 0}, 16, 640, 480);
  ASSERT_EQ(zero.size(), 16u);
  for (std::size_t i = 0; i < zero.size(); ++i) EXPECT_EQ(zero[i], i % 2 == 0 ? 0.0 : 1.0);
  const BoundingBox full(0, 0, 640, 480);
  const auto e = box_positional_encoding(full, 16, 640, 480);
  EXPECT_EQ(e, box_positional_encoding(full, 16, 640, 480));
  const double c[4] = {0, 0, 1, 1};
  for (int k = 0; k < 4; ++k) {
    for (int j = 0; j < 2; ++j) {
      const double f = c[k] / std::pow(10000.0, 2.0 * j / 4.0);
      EXPECT_NEAR(e[static_cast<std::size_t>(k * 4 + 2 * j)], std::sin(f), 1e-15);
      EXPECT_NEAR(e[static_cast<std::size_t>(k * 4 + 2 * j + 1)], std::cos(f), 1e-15);
    }
  }
  EXPECT_THROW(box_positional_encoding(full, 12, 640, 480), ParameterError);
  EXPECT_THROW(box_positional_encoding(full, 16, 0, 480), ParameterError);
}

TEST(Encoding, BoundedAndInjectiveOnGrid) {
  std::mt19937_64 rng(18);
  std::uniform_int_distribution<int> g(0, 1000);
  std::set<std::vector<double>> seen;
  std::set<std::array<int, 4>> boxes;
  for (int t = 0; t < 2000; ++t) {
    std::array<int, 4> q{g(rng), g(rng), g(rng), g(rng)};
    if (q[0] > q[2]) std::swap(q[0], q[2]);
    if (q[1] > q[3]) std::swap(q[1], q[3]);
    if (!boxes.insert(q).second) continue;
    const auto e = box_positional_encoding({q[0] / 1000.0, q[1] / 1000.0, q[2] / 1000.0, q[3] / 1000.0}, 32, 1, 1);
    for (double x : e) {
      EXPECT_GE(x, -1.0);
      EXPECT_LE(x, 1.0);
    }
    EXPECT_TRUE(seen.insert(e).second);
  }
}

TEST(Encoding, AddsInPlace) {
  std::vector<double> f(8, 1.0);
  add_box_encoding(f, {0, 0, 0, 0}, 10, 10);
  EXPECT_EQ(f[0], 1.0);
  EXPECT_EQ(f[1], 2.0);
}

TEST(MultiView, Examples) {
  std::array<HandPose, kNumKeyframes> a{}, b{};
  for (auto& p : b) p = {{10, 10}, {10, 10}, true, true};
  const std::vector<HandKeyframes> one{HandKeyframes(b)};
  EXPECT_EQ(multi_view_average(one).at(Keyframe::p2).left, (Point2{10, 10}));
  const std::vector<HandKeyframes> two{HandKeyframes(a), HandKeyframes(b)};
  const auto m = multi_view_average(two);
  for (auto k : kAllKeyframes) EXPECT_EQ(m.at(k).right, (Point2{5, 5}));
  EXPECT_THROW(multi_view_average({}), ParameterError);
}

TEST(MultiView, MatchesCoordinateMean) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(0, 100);
  std::vector<HandKeyframes> views;
  for (int v = 0; v < 3; ++v) {
    std::array<HandPose, kNumKeyframes> p{};
    for (auto& x : p) x = {{u(rng), u(rng)}, {u(rng), u(rng)}, true, true};
    views.emplace_back(p);
  }
  const auto m = multi_view_average(views).flatten();
  for (std::size_t i = 0; i < 20; ++i) {
    const double want = (views[0].flatten()[i] + views[1].flatten()[i] + views[2].flatten()[i]) / 3.0;
    EXPECT_NEAR(m[i], want, 1e-12);
  }
}

}  // namespace
}  // namespace egoforge::fusion
