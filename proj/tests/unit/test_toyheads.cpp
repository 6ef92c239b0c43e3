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
#include <random>

#include "../support/oracles.hpp"
#include "egoforge/core/error.hpp"
#include "egoforge/io/annotations.hpp"
#include "egoforge/toyheads/experiments.hpp"
#include "egoforge/toyheads/linear_head.hpp"
#include "egoforge/toyheads/losses.hpp"
#include "egoforge/toyheads/stub_features.hpp"
#include "egoforge/toyheads/synth.hpp"
#include "egoforge/toyheads/trainer.hpp"

namespace egoforge::toyheads {
namespace {

TEST(Synth, DeterministicGivenSeed) {
  SynthConfig cfg;
  cfg.seed = 7;
  const auto a = generate_synthetic(cfg);
  const auto b = generate_synthetic(cfg);
  for (auto [x, y] : {std::pair{&a.mq, &b.mq}, {&a.nlq, &b.nlq}, {&a.fhp, &b.fhp}, {&a.lta, &b.lta},
                      {&a.sta, &b.sta}, {&a.scod, &b.scod}}) {
    EXPECT_EQ(io::dump_annotations(*x), io::dump_annotations(*y));
    EXPECT_TRUE(validate_dataset(*x).empty());
  }
  cfg.seed = 8;
  EXPECT_NE(io::dump_annotations(generate_synthetic(cfg).lta), io::dump_annotations(a.lta));
}

TEST(Synth, SequencesHaveConfiguredShape) {
  SynthConfig cfg;
  cfg.num_verbs = 3;
  cfg.num_nouns = 4;
  cfg.z = 5;
  const auto d = generate_synthetic(cfg);
  ASSERT_FALSE(d.lta.lta.empty());
  for (const auto& r : d.lta.lta) {
    ASSERT_EQ(r.candidates.size(), 1u);
    ASSERT_EQ(r.candidates[0].size(), 5u);
    for (const auto& a : r.candidates[0]) {
      EXPECT_LT(a[0], 3);
      EXPECT_LT(a[1], 4);
    }
  }
}

TEST(Synth, NoiselessHandsLieOnTrajectory) {
  SynthConfig cfg;
  cfg.hand_noise_px = 0.0;
  const auto world = generate_world(cfg);
  const auto fhp = annotate(world).fhp;
  std::map<std::string, const HandTrajectory*> latent;
  for (const auto& v : world.videos) {
    for (const auto& h : v.hands) latent[h.instance_id] = &h;
  }
  ASSERT_FALSE(fhp.hands.empty());
  for (const auto& r : fhp.hands) {
    const auto& t = *latent.at(r.instance_id);
    for (auto k : kAllKeyframes) {
      EXPECT_EQ(r.keyframes[static_cast<int>(k)].left, t.at(k, Hand::left));
      EXPECT_EQ(r.keyframes[static_cast<int>(k)].right, t.at(k, Hand::right));
    }
  }
}

TEST(Synth, RejectsBadConfig) {
  SynthConfig cfg;
  cfg.num_videos = 0;
  EXPECT_THROW(generate_synthetic(cfg), ParameterError);
  cfg = {};
  cfg.hand_noise_px = -1;
  EXPECT_THROW(generate_synthetic(cfg), ParameterError);
}

TEST(StubFeatures, DeterministicAndVariantSeparated) {
  const snippet::Snippet s{0, 16, false};
  EXPECT_EQ(stub_features("v", s, 16, FeatureVariant::verb), stub_features("v", s, 16, FeatureVariant::verb));
  EXPECT_NE(stub_features("v", s, 16, FeatureVariant::verb), stub_features("v", s, 16, FeatureVariant::noun));
  EXPECT_NE(stub_features("v", s, 16, FeatureVariant::verb), stub_features("w", s, 16, FeatureVariant::verb));
  EXPECT_THROW(stub_features("v", s, 7, FeatureVariant::verb), ParameterError);
}

TEST(StubFeatures, MatrixSerialEqualsParallel) {
  const auto sched = snippet::build_snippet_schedule(VideoMeta("v", 500, 15), 15, 16, 4);
  const auto a = stub_feature_matrix("v", sched, 32, FeatureVariant::noun, nullptr, Execution::serial);
  const auto b = stub_feature_matrix("v", sched, 32, FeatureVariant::noun, nullptr, Execution::parallel);
  EXPECT_EQ(a.values(), b.values());
  EXPECT_EQ(a.rows(), sched.snippets.size());
  EXPECT_EQ(a.provenance(), FeatureProvenance::noun);
}

// A nearest-class-mean probe trained on half the videos beats chance on the
// other half, so the latent signal is linearly recoverable.
TEST(StubFeatures, LatentSignalIsLearnable) {
  SynthConfig cfg;
  cfg.num_videos = 12;
  const auto world = generate_world(cfg);
  const int dim = 16;
  std::vector<std::vector<double>> sums(static_cast<std::size_t>(cfg.num_verbs), std::vector<double>(dim, 0.0));
  std::vector<int> counts(static_cast<std::size_t>(cfg.num_verbs), 0);
  int correct = 0, total = 0;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t vi = 0; vi < world.videos.size(); ++vi) {
      const bool train = vi % 2 == 0;
      if ((pass == 0) != train) continue;
      const auto& v = world.videos[vi];
      const LatentContext ctx{&world, &v, 15.0};
      for (const auto& a : v.actions) {
        const double mid = 0.5 * (a.start_s + a.end_s);
        const auto f0 = static_cast<std::int64_t>(std::llround(mid * 15)) - 4;
        if (f0 < 0) continue;
        const auto x = stub_features(v.video_id, {f0, f0 + 8, false}, dim, FeatureVariant::verb, &ctx);
        if (pass == 0) {
          for (int d = 0; d < dim; ++d) sums[static_cast<std::size_t>(a.verb)][static_cast<std::size_t>(d)] += x[static_cast<std::size_t>(d)];
          ++counts[static_cast<std::size_t>(a.verb)];
        } else {
          int best = 0;
          double best_d = 1e300;
          for (int c = 0; c < cfg.num_verbs; ++c) {
            if (counts[static_cast<std::size_t>(c)] == 0) continue;
            double dist = 0;
            for (int d = 0; d < dim; ++d) {
              const double m = sums[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)] / counts[static_cast<std::size_t>(c)];
              dist += (x[static_cast<std::size_t>(d)] - m) * (x[static_cast<std::size_t>(d)] - m);
            }
            if (dist < best_d) {
              best_d = dist;
              best = c;
            }
          }
          correct += best == a.verb ? 1 : 0;
          ++total;
        }
      }
    }
  }
  ASSERT_GT(total, 50);
  EXPECT_GT(static_cast<double>(correct) / total, 1.5 / cfg.num_verbs);
}

TEST(Head, ShapesAndErrors) {
  EXPECT_EQ(LinearHead::regression(4).out_dim(), 20);
  EXPECT_EQ(LinearHead::classifier(HeadKind::classifier_joint, 4, 3, {2, 5}).out_dim(), 30);
  EXPECT_EQ(LinearHead::classifier(HeadKind::classifier_factorized, 4, 3, {2, 5}).out_dim(), 21);
  EXPECT_THROW(LinearHead(HeadKind::regression_20, 2, std::vector<double>(38), std::vector<double>(19)),
               ParameterError);
  const auto h = LinearHead::regression(4);
  EXPECT_THROW(head_forward(h, std::vector<double>(3)), ParameterError);
}

TEST(Head, ForwardExamples) {
  std::vector<double> bias(20);
  for (int i = 0; i < 20; ++i) bias[static_cast<std::size_t>(i)] = i * 0.5;
  const LinearHead zero(HeadKind::regression_20, 3, std::vector<double>(60, 0.0), bias);
  EXPECT_EQ(head_forward(zero, std::vector<double>{1, 2, 3}), bias);

  std::vector<double> eye(400, 0.0);
  for (int i = 0; i < 20; ++i) eye[static_cast<std::size_t>(i * 20 + i)] = 1.0;
  const LinearHead id(HeadKind::regression_20, 20, eye, std::vector<double>(20, 0.0));
  std::vector<double> x(20);
  for (int i = 0; i < 20; ++i) x[static_cast<std::size_t>(i)] = i - 7.25;
  EXPECT_EQ(head_forward(id, x), x);
}

TEST(Head, ForwardMatchesNaiveMatvec) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> n(0, 1);
  for (int t = 0; t < 50; ++t) {
    const int in = 1 + t % 9;
    std::vector<double> w(static_cast<std::size_t>(20 * in)), b(20), x(static_cast<std::size_t>(in));
    for (auto* v : {&w, &b, &x}) {
      for (auto& e : *v) e = n(rng);
    }
    const LinearHead h(HeadKind::regression_20, in, w, b);
    const auto got = head_forward(h, x);
    const auto want = oracle::matvec(w, b, x);
    for (std::size_t i = 0; i < 20; ++i) EXPECT_NEAR(got[i], want[i], 1e-12);
  }
}

TEST(Head, MarginalsSumJointSoftmax) {
  const ActionVocabulary vocab{2, 3};
  const auto h = LinearHead::classifier(HeadKind::classifier_joint, 1, 1, vocab);
  const std::vector<double> logits{0, 1, 2, 3, 4, 5};
  const auto m = lta_marginals(h, logits);
  const auto p = softmax(logits);
  EXPECT_NEAR(m.verb_row(0)[0], p[0] + p[1] + p[2], 1e-15);
  EXPECT_NEAR(m.noun_row(0)[2], p[2] + p[5], 1e-15);
  const auto f = LinearHead::classifier(HeadKind::classifier_factorized, 1, 1, vocab);
  const auto mf = lta_marginals(f, std::vector<double>{0, 0, 1, 1, 1});
  EXPECT_NEAR(mf.verb_row(0)[0], 0.5, 1e-15);
  EXPECT_NEAR(mf.noun_row(0)[1], 1.0 / 3.0, 1e-15);
}

TEST(Softmax, StableForLargeLogits) {
  const auto p = softmax(std::vector<double>{1000, 1000});
  EXPECT_EQ(p[0], 0.5);
}

TEST(Losses, L1Examples) {
  std::vector<double> t(20, 2.0), p = t;
  EXPECT_EQ(l1_loss(p, t).loss, 0.0);
  for (auto& x : p) x += 1;
  const auto r = l1_loss(p, t);
  EXPECT_EQ(r.loss, 1.0);
  EXPECT_EQ(r.grad[0], 1.0 / 20);
  EXPECT_EQ(l1_loss(t, t).grad[3], 0.0);
  EXPECT_THROW(l1_loss(std::vector<double>(3), std::vector<double>(2)), ParameterError);
}

TEST(Losses, CrossEntropyExamples) {
  const std::vector<int> targets{1};
  EXPECT_NEAR(cross_entropy(std::vector<double>{0, 50, 0}, 3, targets).loss, 0.0, 1e-20);
  EXPECT_NEAR(cross_entropy(std::vector<double>{2, 2, 2, 2}, 4, targets).loss, std::log(4.0), 1e-15);
  EXPECT_THROW(cross_entropy(std::vector<double>{0, 0}, 2, std::vector<int>{2}), ParameterError);
  const auto r = cross_entropy(std::vector<double>{0, 0}, 2, targets);
  EXPECT_NEAR(r.grad[0], 0.5, 1e-15);
  EXPECT_NEAR(r.grad[1], -0.5, 1e-15);
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-8}); }

TEST(Losses, GradientsMatchFiniteDifferences) {
  std::mt19937_64 rng(22);
  std::normal_distribution<double> n(0, 2);
  const double h = 1e-5;
  for (int t = 0; t < 20; ++t) {
    std::vector<double> p(20), q(20);
    for (std::size_t i = 0; i < 20; ++i) {
      q[i] = n(rng);
      do p[i] = n(rng);
      while (std::abs(p[i] - q[i]) < 1e-3);
    }
    const auto g = l1_loss(p, q).grad;
    for (std::size_t i = 0; i < 20; ++i) {
      auto up = p, dn = p;
      up[i] += h;
      dn[i] -= h;
      EXPECT_LT(rel_err(g[i], (l1_loss(up, q).loss - l1_loss(dn, q).loss) / (2 * h)), 1e-4);
    }
    const int c = 2 + t % 5, z = 1 + t % 3;
    std::vector<double> logits(static_cast<std::size_t>(c * z));
    for (auto& x : logits) x = n(rng);
    std::vector<int> y;
    for (int k = 0; k < z; ++k) y.push_back(static_cast<int>(rng() % static_cast<unsigned>(c)));
    const auto gc = cross_entropy(logits, c, y).grad;
    for (std::size_t i = 0; i < logits.size(); ++i) {
      auto up = logits, dn = logits;
      up[i] += h;
      dn[i] -= h;
      const double fd = (cross_entropy(up, c, y).loss - cross_entropy(dn, c, y).loss) / (2 * h);
      EXPECT_LT(rel_err(gc[i], fd), 1e-4);
    }
  }
}

// Two classes split by the sign of x0.
TrainingSet separable_set() {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.2, 1.0), v(-1, 1);
  TrainingSet out;
  for (int i = 0; i < 40; ++i) {
    const int cls = i % 2;
    const double x0 = cls ? u(rng) : -u(rng);
    out.push_back({{x0, v(rng)}, {}, {ActionLabel(cls, 0)}});
  }
  return out;
}

TEST(Train, ZeroLearningRateIsFlat) {
  const auto data = separable_set();
  const auto head = LinearHead::classifier(HeadKind::classifier_joint, 2, 1, {2, 1});
  TrainConfig cfg;
  cfg.lr = 0.0;
  cfg.epochs = 5;
  const auto r = train_head(head, data, cfg);
  for (double l : r.loss_curve) EXPECT_EQ(l, r.initial_loss);
  EXPECT_EQ(std::vector<double>(r.head.weights().begin(), r.head.weights().end()),
            std::vector<double>(head.weights().begin(), head.weights().end()));
}

TEST(Train, SeparableSetReachesFullAccuracy) {
  const auto data = separable_set();
  TrainConfig cfg;
  cfg.lr = 1.0;
  cfg.epochs = 100;
  cfg.batch_size = 8;
  cfg.seed = 3;
  const auto r = train_head(LinearHead::classifier(HeadKind::classifier_joint, 2, 1, {2, 1}), data, cfg);
  int correct = 0;
  for (const auto& ex : data) {
    const auto y = head_forward(r.head, ex.x);
    correct += (y[1] > y[0]) == (ex.actions[0].verb_id() == 1) ? 1 : 0;
  }
  EXPECT_EQ(correct, static_cast<int>(data.size()));
}

TEST(Train, SmallStepFullBatchIsMonotone) {
  const auto data = separable_set();
  TrainConfig cfg;
  cfg.lr = 0.05;
  cfg.epochs = 30;
  const auto r = train_head(LinearHead::classifier(HeadKind::classifier_factorized, 2, 1, {2, 1}), data, cfg);
  double prev = r.initial_loss;
  for (double l : r.loss_curve) {
    EXPECT_LE(l, prev + 1e-15);
    prev = l;
  }
}

TEST(Train, DeterministicGivenSeed) {
  const auto data = separable_set();
  TrainConfig cfg;
  cfg.optimizer = Optimizer::sgd_momentum;
  cfg.batch_size = 4;
  cfg.epochs = 7;
  cfg.seed = 99;
  const auto head = LinearHead::classifier(HeadKind::classifier_joint, 2, 1, {2, 1});
  const auto a = train_head(head, data, cfg), b = train_head(head, data, cfg);
  EXPECT_TRUE(std::equal(a.head.weights().begin(), a.head.weights().end(), b.head.weights().begin()));
  EXPECT_EQ(a.loss_curve, b.loss_curve);
}

TEST(Train, DivergenceReportsEpoch) {
  TrainingSet data{{{1e200}, std::vector<double>(20, 1.0), {}}};
  TrainConfig cfg;
  cfg.lr = 1e200;
  cfg.epochs = 5;
  try {
    train_head(LinearHead::regression(1), data, cfg);
    FAIL();
  } catch (const DivergenceError& e) {
    EXPECT_GE(e.epoch(), 1);
    EXPECT_LE(e.epoch(), 5);
  }
}

TEST(Train, RejectsBadConfig) {
  TrainConfig cfg;
  cfg.epochs = -1;
  EXPECT_THROW(cfg.validate(), ParameterError);
  cfg.epochs = 0;
  EXPECT_NO_THROW(cfg.validate());
  cfg = {};
  cfg.lr = -1;
  EXPECT_THROW(cfg.validate(), ParameterError);
  EXPECT_THROW(train_head(LinearHead::regression(3), separable_set(), TrainConfig{}), ParameterError);
}

TEST(Experiment, LtaSerialEqualsParallel) {
  LtaExperimentConfig cfg;
  cfg.world.num_videos = 8;
  cfg.train_videos = 5;
  cfg.train.epochs = 3;
  const auto a = run_lta_experiment(cfg, Execution::serial);
  const auto b = run_lta_experiment(cfg, Execution::parallel);
  EXPECT_GT(a.episodes, 0);
  EXPECT_EQ(a.episodes, b.episodes);
  EXPECT_EQ(a.loss_curve, b.loss_curve);
  ASSERT_EQ(a.voting.size(), cfg.alphas.size());
  for (std::size_t i = 0; i < a.voting.size(); ++i) EXPECT_EQ(a.voting[i].action_ed, b.voting[i].action_ed);
  EXPECT_EQ(a.center_clip.action_ed, b.center_clip.action_ed);
}

}  // namespace
}  // namespace egoforge::toyheads
