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

#include "egoforge/io/fixtures.hpp"

#include <cmath>
#include <cstdlib>
#include <initializer_list>

#include "egoforge/core/error.hpp"

namespace egoforge::io {

namespace {

// Builds a table from a grid; "-" marks an unreported cell.
ResultFixture table(std::string name, std::vector<FixtureColumn> columns,
                    std::initializer_list<std::pair<const char*, std::vector<const char*>>> grid) {
  ResultFixture f{std::move(name), {}, std::move(columns), {}};
  for (const auto& [method, values] : grid) {
    if (values.size() != f.columns.size()) throw std::logic_error("fixture row width mismatch in " + f.table);
    f.methods.emplace_back(method);
    for (std::size_t c = 0; c < values.size(); ++c) {
      if (std::string_view(values[c]) == "-") continue;
      f.rows.push_back({method, f.columns[c].metric, f.columns[c].split, values[c]});
    }
  }
  for (const auto& r : f.rows) {
    char* end = nullptr;
    const double v = std::strtod(r.value.c_str(), &end);
    if (*end != '\0' || !std::isfinite(v)) throw std::logic_error("fixture value not finite: " + r.value);
  }
  return f;
}

std::vector<FixtureColumn> both_splits(std::initializer_list<const char*> metrics) {
  std::vector<FixtureColumn> out;
  for (const char* split : {"validation", "test"}) {
    for (const char* m : metrics) out.push_back({split, m});
  }
  return out;
}

std::vector<ResultFixture> build() {
  std::vector<ResultFixture> out;
  out.push_back(table(
      "hands-results",
      both_splits({"Left M.Disp", "Left C.Disp", "Right M.Disp", "Right C.Disp"}),
      {
          {"I3D (224,16,30)", {"54.11", "57.29", "54.73", "57.94", "52.98", "56.37", "53.68", "56.17"}},
          {"VideoMAE-L (224,16,1)", {"66.45", "68.23", "67.32", "68.92", "-", "-", "-", "-"}},
          {"UniFormer-B (320,4,1)", {"46.65", "54.58", "48.30", "55.10", "45.76", "54.95", "47.93", "55.11"}},
          {"UniFormer-B (320,4,30)", {"44.90", "54.16", "46.70", "54.66", "44.69", "53.47", "47.00", "53.49"}},
          {"UniFormer-B (320,8,30)", {"43.25", "52.78", "45.29", "52.65", "43.85", "53.33", "46.25", "53.37"}},
      }));
  out.push_back(table(
      "longterm-results", both_splits({"Verb ED", "Noun ED", "Action ED"}),
      {
          {"MViT OW=16", {"0.707", "0.901", "0.972", "0.697", "0.904", "0.969"}},
          {"SlowFast OW=32", {"0.745", "0.779", "0.941", "0.739", "0.780", "0.943"}},
          {"VideoMAE-L E2E OW=2", {"0.708", "0.710", "0.923", "0.737", "0.723", "0.931"}},
          {"VideoMAE-L E2E MC OW=2", {"0.674", "0.695", "0.902", "-", "-", "-"}},
          {"VideoMAE-L E2E MC OW=4", {"0.638", "0.658", "0.888", "-", "-", "-"}},
          {"VideoMAE-L E2E MC OW=8", {"0.595", "0.622", "0.863", "-", "-", "-"}},
          {"VideoMAE-L E2E MC OW=16", {"0.561", "0.594", "0.840", "0.650", "0.639", "0.878"}},
      }));
  out.push_back(table(
      "mq-two-stage", both_splits({"Recall", "mAP"}),
      {
          {"K700->Verb->MQ VSGN", {"37.82", "19.35", "36.38", "18.04"}},
          {"K700->Verb AF", {"37.24", "20.69", "35.58", "19.31"}},
          {"K700->Verb->MQ AF", {"40.36", "23.29", "41.13", "23.59"}},
      }));
  out.push_back(table(
      "nlq-performance", both_splits({"R5@0.3", "R5@0.5", "R1@0.3", "R1@0.5"}),
      {
          {"A EgoVLP", {"18.84", "13.45", "10.84", "6.81", "16.76", "11.29", "10.46", "6.24"}},
          {"B VideoMAE-Verb + EgoVLP-TE", {"21.73", "15.07", "12.32", "7.43", "20.32", "13.29", "13.03", "7.87"}},
          {"C VideoMAE-Noun + EgoVLP-TE", {"21.89", "15.64", "12.78", "8.08", "-", "-", "-", "-"}},
          {"D (B+C) Pre-fusion", {"23.36", "17.37", "13.71", "9.06", "21.25", "14.64", "14.59", "9.07"}},
          {"E (D+A) Pre-fusion", {"24.21", "17.89", "14.40", "9.60", "21.98", "15.28", "15.56", "9.99"}},
          {"F (D+E) Post-fusion", {"24.78", "18.30", "15.64", "10.17", "22.95", "16.10", "16.45", "10.06"}},
      }));
  out.push_back(table(
      "short-term", both_splits({"Noun", "Noun+Verb", "Noun+TTC", "Overall"}),
      {
          {"A Baseline", {"17.55", "5.16", "5.19", "1.98", "20.45", "6.63", "5.93", "2.20"}},
          {"B VideoMAE-L", {"17.55", "5.37", "5.21", "2.06", "20.45", "7.84", "5.74", "2.38"}},
          {"C VideoMAE-L + Box-embed", {"17.55", "6.30", "5.83", "2.43", "20.45", "7.64", "6.85", "2.88"}},
          {"D C+new top3box", {"18.73", "8.5", "7.55", "3.87", "20.46", "7.39", "7.18", "3.00"}},
          {"E C+new box+fusion", {"20.02", "7.34", "6.37", "2.74", "24.53", "9.09", "7.59", "3.36"}},
          {"F C+new top10box+fusion", {"19.45", "8.00", "6.97", "3.25", "24.60", "9.18", "7.64", "3.40"}},
      }));
  out.push_back(table(
      "scod-performance", both_splits({"AP", "AP50", "AP75"}),
      {
          {"ResNet-101 Faster R-CNN ImageNet-1K", {"13.40", "25.60", "12.50", "13.35", "25.52", "12.38"}},
          {"ResNet-50 DETR ImageNet-1K", {"15.50", "32.80", "13.00", "15.38", "32.51", "12.87"}},
          {"DLA-34 CenterNet ImageNet-1K", {"6.40", "11.70", "6.10", "6.32", "11.62", "6.08"}},
          {"UniFormer-L DINO ImageNet-1K", {"24.80", "44.20", "24.00", "-", "-", "-"}},
          {"Swin-L DINO ImageNet-22K", {"28.00", "48.70", "27.20", "-", "-", "-"}},
          {"Swin-L DINO ImageNet-22K+COCO", {"32.20", "51.30", "33.10", "-", "-", "-"}},
          {"Swin-L DINO ImageNet-22K+Objects365", {"36.40", "56.50", "37.60", "37.19", "55.97", "38.44"}},
      }));
  return out;
}

}  // namespace

const FixtureRow* ResultFixture::find(std::string_view method, const FixtureColumn& column) const {
  for (const auto& r : rows) {
    if (r.method == method && r.split == column.split && r.metric == column.metric) return &r;
  }
  return nullptr;
}

const std::vector<ResultFixture>& bundled_fixtures() {
  static const std::vector<ResultFixture> fixtures = build();
  return fixtures;
}

const ResultFixture& find_fixture(std::string_view name) {
  std::string known;
  for (const auto& f : bundled_fixtures()) {
    if (f.table == name) return f;
    known += (known.empty() ? "" : ", ") + f.table;
  }
  throw ParameterError("unknown fixture " + std::string(name) + " (known: " + known + ")");
}

}  // namespace egoforge::io
