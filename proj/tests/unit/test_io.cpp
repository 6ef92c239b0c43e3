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
#include <cstring>
#include <filesystem>

#include "egoforge/core/error.hpp"
#include "egoforge/io/annotations.hpp"
#include "egoforge/io/config.hpp"
#include "egoforge/io/features.hpp"
#include "egoforge/io/fixtures.hpp"
#include "egoforge/io/head.hpp"
#include "egoforge/io/render.hpp"
#include "egoforge/toyheads/synth.hpp"

namespace egoforge::io {
namespace {

toyheads::SyntheticDataset dataset() {
  toyheads::SynthConfig cfg;
  cfg.seed = 3;
  cfg.num_videos = 3;
  return toyheads::generate_synthetic(cfg);
}

TEST(Annotations, CanonicalRoundTripForEveryTrack) {
  const auto d = dataset();
  for (const auto* set : {&d.mq, &d.nlq, &d.fhp, &d.lta, &d.sta, &d.scod}) {
    for (const auto& s : {*set, toyheads::perfect_predictions(*set)}) {
      const auto text = dump_annotations(s);
      const auto role = s.is_prediction ? Role::prediction : Role::ground_truth;
      const auto back = parse_annotations(text, role);
      EXPECT_TRUE(back.warnings.empty());
      EXPECT_EQ(dump_annotations(back.set), text);
    }
  }
}

TEST(Annotations, ReorderedInputCanonicalizes) {
  const std::string messy =
      R"({"instances":[{"end_s":2.50,"start_s":1,"video_id":"v","class_id":0}],)"
      R"("videos":[{"fps":30,"num_frames":90,"video_id":"v"}],"num_classes":1,"schema":"mq/1"})";
  const auto once = dump_annotations(parse_annotations(messy, Role::ground_truth).set);
  EXPECT_EQ(dump_annotations(parse_annotations(once, Role::ground_truth).set), once);
  EXPECT_NE(once.find("\"end_s\": 2.5"), std::string::npos);
  EXPECT_EQ(once.back(), '\n');
}

TEST(Annotations, StrictParsing) {
  auto err = [](std::string_view text, Role role = Role::ground_truth) {
    try {
      parse_annotations(text, role);
    } catch (const DataError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(err("{").find("malformed JSON"), std::string::npos);
  EXPECT_NE(err(R"({"schema":"xx/1"})").find("schema"), std::string::npos);
  EXPECT_NE(err(R"({"schema":"mq/2"})").find("schema"), std::string::npos);
  EXPECT_NE(err(R"({"schema":"mq/1","num_classes":1,"videos":[],"instances":[{"video_id":"v","start_s":0,"end_s":1}]})")
                .find("instances[0].class_id"),
            std::string::npos);
  EXPECT_NE(err(R"({"schema":"mq/1","num_classes":"one","videos":[],"instances":[]})").find("num_classes"),
            std::string::npos);

  const auto loaded = parse_annotations(
      R"({"schema":"mq/1","num_classes":1,"videos":[],"instances":[],"comment":"hi"})", Role::ground_truth);
  ASSERT_EQ(loaded.warnings.size(), 1u);
  EXPECT_NE(loaded.warnings[0].find("comment"), std::string::npos);
}

TEST(Annotations, FileErrorsNameThePath) {
  try {
    load_annotations("/nonexistent/gt.json", Role::ground_truth);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/gt.json"), std::string::npos);
  }
}

FeatureMatrix sample_matrix() {
  return FeatureMatrix(3, {0.0f, -1.5f, 3.25f, 1e-30f, 7.0f, -0.0f}, FeatureProvenance::verb);
}

TEST(Features, BitExactRoundTrip) {
  const auto m = sample_matrix();
  const auto bytes = encode_features(m);
  EXPECT_EQ(bytes.size(), kFeatureHeaderBytes + 6 * 4);
  EXPECT_EQ(bytes.substr(0, 4), "EGFT");
  const auto back = decode_features(bytes);
  EXPECT_EQ(back.dim(), 3u);
  EXPECT_EQ(std::memcmp(back.values().data(), m.values().data(), 24), 0);
  EXPECT_EQ(back.provenance(), FeatureProvenance::stub);

  const auto path = std::filesystem::temp_directory_path() / "egoforge_io_test.egft";
  save_features(path, m);
  EXPECT_EQ(load_features(path).values(), m.values());
  std::filesystem::remove(path);
}

TEST(Features, FramingErrors) {
  const auto bytes = encode_features(sample_matrix());
  auto message = [](std::string_view b) {
    try {
      decode_features(b);
    } catch (const DataError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_EQ(message(bytes.substr(0, 10)), "feature file truncated: expected at least 20 header bytes, got 10");
  EXPECT_EQ(message(bytes.substr(0, bytes.size() - 1)), "feature file size mismatch: expected 44 bytes, got 43");
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_NE(message(bad).find("magic"), std::string::npos);
  bad = bytes;
  bad[4] = 9;
  EXPECT_NE(message(bad).find("version"), std::string::npos);
  bad = bytes;
  const float nan = std::nanf("");
  std::memcpy(bad.data() + kFeatureHeaderBytes, &nan, 4);
  EXPECT_NE(message(bad), "no error");
}

TEST(Config, RoundTripAndValidation) {
  RunConfig cfg;
  cfg.tiou_thresholds = std::vector<double>{0.3, 0.5};
  cfg.k = 3;
  cfg.seed = 42;
  const auto text = dump_config(cfg);
  const auto back = parse_config(text);
  EXPECT_EQ(dump_config(back.config), text);
  EXPECT_EQ(back.config.k, 3);
  EXPECT_EQ(parse_config(R"({"schema":"config/1"})").config.ttc_tol, 0.25);
  EXPECT_THROW(parse_config(R"({"schema":"config/1","k":"x"})"), DataError);
  cfg.top_k = 0;
  EXPECT_THROW(cfg.validate(), ParameterError);
}

TEST(Head, RoundTrip) {
  auto head = toyheads::LinearHead::classifier(toyheads::HeadKind::classifier_factorized, 2, 3, {2, 4});
  for (std::size_t i = 0; i < head.weights().size(); ++i) head.weights()[i] = 0.1 * static_cast<double>(i) - 1.0 / 3.0;
  const auto text = dump_head(head);
  const auto back = parse_head(text);
  EXPECT_EQ(dump_head(back), text);
  EXPECT_TRUE(std::equal(back.weights().begin(), back.weights().end(), head.weights().begin()));
  EXPECT_THROW(parse_head(R"({"schema":"head/1"})"), DataError);
}

TEST(Render, ValueFormats) {
  EXPECT_EQ(format_value(0.4036, metrics::MetricFamily::fraction), "40.36");
  EXPECT_EQ(format_value(43.254, metrics::MetricFamily::displacement), "43.25");
  EXPECT_EQ(format_value(0.8401, metrics::MetricFamily::edit_distance), "0.840");
  EXPECT_EQ(format_value(-1e-9, metrics::MetricFamily::displacement), "0.00");
}

TEST(Render, Reports) {
  const std::vector<metrics::MetricReport> r{
      {"avg-mAP", 0.5, {{"mAP@0.10", 0.75}}, 4, metrics::MetricFamily::fraction},
      {"Action ED", 0.25, {}, 4, metrics::MetricFamily::edit_distance}};
  EXPECT_EQ(render_reports(r, Format::plain), "avg-mAP     50.00\n  mAP@0.10  75.00\nAction ED   0.250\n");
  EXPECT_EQ(render_reports(r, Format::csv), "metric,value,count\navg-mAP,50.00,4\navg-mAP/mAP@0.10,75.00,4\nAction ED,0.250,4\n");
  EXPECT_NE(render_reports(r, Format::json).find("\"value\": \"0.250\""), std::string::npos);
  const std::vector<metrics::MetricReport> bad{{"x", std::nan(""), {}, 1, metrics::MetricFamily::fraction}};
  EXPECT_THROW(render_reports(bad, Format::plain), ParameterError);
  EXPECT_FALSE(format_from_name("xml").has_value());
}

std::string cell(const std::string& table, const std::string& method, const std::string& split,
                 const std::string& metric) {
  const auto* row = find_fixture(table).find(method, {split, metric});
  return row ? row->value : "-";
}

TEST(Fixtures, PublishedExamples) {
  EXPECT_EQ(cell("longterm-results", "VideoMAE-L E2E MC OW=16", "validation", "Verb ED"), "0.561");
  EXPECT_EQ(cell("longterm-results", "VideoMAE-L E2E MC OW=16", "validation", "Noun ED"), "0.594");
  EXPECT_EQ(cell("longterm-results", "VideoMAE-L E2E MC OW=16", "validation", "Action ED"), "0.840");
  EXPECT_EQ(cell("hands-results", "UniFormer-B (320,8,30)", "validation", "Left M.Disp"), "43.25");
  EXPECT_EQ(cell("mq-two-stage", "K700->Verb->MQ AF", "validation", "Recall"), "40.36");
  EXPECT_EQ(cell("mq-two-stage", "K700->Verb->MQ AF", "validation", "mAP"), "23.29");
  EXPECT_EQ(cell("longterm-results", "VideoMAE-L E2E MC OW=2", "test", "Action ED"), "-");
  EXPECT_THROW(find_fixture("finetune-performance"), ParameterError);
  EXPECT_EQ(bundled_fixtures().size(), 6u);
}

TEST(Fixtures, RenderedValuesAreVerbatim) {
  const auto csv = render_fixture(find_fixture("longterm-results"), Format::csv);
  EXPECT_NE(csv.find("longterm-results,VideoMAE-L E2E MC OW=16,validation,Action ED,0.840\n"), std::string::npos);
  const auto plain = render_fixture(find_fixture("short-term"), Format::plain);
  EXPECT_NE(plain.find(" 8.5 "), std::string::npos);
  EXPECT_EQ(plain.find("8.50"), std::string::npos);
}

}  // namespace
}  // namespace egoforge::io
