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

#include "egoforge/io/config.hpp"

#include <cmath>

#include "egoforge/io/annotations.hpp"
#include "strict_json.hpp"

namespace egoforge::io {

namespace {

constexpr const char* kConfigSchema = "config/1";

bool unit_open_closed(double x) { return std::isfinite(x) && x > 0.0 && x <= 1.0; }

}  // namespace

void RunConfig::validate() const {
  if (tiou_thresholds) {
    if (tiou_thresholds->empty()) throw ParameterError("need at least one tIoU threshold");
    for (double t : *tiou_thresholds) {
      if (!unit_open_closed(t)) throw ParameterError("tIoU thresholds must lie in (0, 1]");
    }
  }
  if (recall_k) {
    if (recall_k->empty()) throw ParameterError("need at least one recall k");
    for (int k : *recall_k) {
      if (k < 1) throw ParameterError("recall k must be positive");
    }
  }
  if (!unit_open_closed(recall_tiou)) throw ParameterError("recall tIoU must lie in (0, 1]");
  if (z < 1) throw ParameterError("Z must be positive");
  if (k < 1) throw ParameterError("K must be positive");
  if (top_k < 1) throw ParameterError("top-k must be positive");
  if (!(std::isfinite(nms_iou) && nms_iou >= 0.0 && nms_iou <= 1.0)) {
    throw ParameterError("NMS IoU must lie in [0, 1]");
  }
  if (!unit_open_closed(sta_iou)) throw ParameterError("STA IoU must lie in (0, 1]");
  if (!(std::isfinite(ttc_tol) && ttc_tol >= 0.0)) throw ParameterError("TTC tolerance must be nonnegative");
  if (!(std::isfinite(alpha_s) && alpha_s > 0.0)) throw ParameterError("alpha must be positive");
  if (!(std::isfinite(clip_len_s) && clip_len_s > 0.0)) throw ParameterError("clip length must be positive");
  if (!(std::isfinite(clip_stride_s) && clip_stride_s > 0.0)) {
    throw ParameterError("clip stride must be positive");
  }
}

LoadedConfig parse_config(std::string_view text) {
  using detail::ObjectReader;
  const auto doc = detail::parse_json(text);
  LoadedConfig out;
  auto& c = out.config;
  ObjectReader r(doc, "", out.warnings);
  if (r.string("schema") != kConfigSchema) ObjectReader::fail("schema", "expected config/1");
  if (const auto* t = r.optional("tiou")) {
    if (!t->is_array()) ObjectReader::fail("tiou", "expected an array");
    c.tiou_thresholds.emplace();
    for (std::size_t i = 0; i < t->size(); ++i) {
      c.tiou_thresholds->push_back(ObjectReader::as_number((*t)[i], detail::index_path("tiou", i)));
    }
  }
  if (const auto* ks = r.optional("recall_k")) {
    if (!ks->is_array()) ObjectReader::fail("recall_k", "expected an array");
    c.recall_k.emplace();
    for (std::size_t i = 0; i < ks->size(); ++i) {
      c.recall_k->push_back(ObjectReader::as_int((*ks)[i], detail::index_path("recall_k", i)));
    }
  }
  auto num = [&](const char* key, double& field) {
    if (const auto* v = r.optional(key)) field = ObjectReader::as_number(*v, key);
  };
  auto integer = [&](const char* key, int& field) {
    if (const auto* v = r.optional(key)) field = ObjectReader::as_int(*v, key);
  };
  num("recall_tiou", c.recall_tiou);
  integer("z", c.z);
  integer("k", c.k);
  integer("top_k", c.top_k);
  num("nms_iou", c.nms_iou);
  num("sta_iou", c.sta_iou);
  num("ttc_tol", c.ttc_tol);
  num("alpha", c.alpha_s);
  num("clip_len", c.clip_len_s);
  num("clip_stride", c.clip_stride_s);
  if (const auto* v = r.optional("seed")) {
    if (!v->is_number_unsigned()) ObjectReader::fail("seed", "expected a nonnegative integer");
    c.seed = v->get<std::uint64_t>();
  }
  r.finish();
  try {
    c.validate();
  } catch (const ParameterError& e) {
    throw DataError(std::string("config: ") + e.what());
  }
  return out;
}

LoadedConfig load_config(const std::filesystem::path& path) {
  try {
    return parse_config(read_text_file(path));
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string dump_config(const RunConfig& c) {
  detail::json doc{{"schema", kConfigSchema},       {"recall_tiou", c.recall_tiou},
                         {"z", c.z},                 {"k", c.k},
                         {"top_k", c.top_k},         {"nms_iou", c.nms_iou},
                         {"sta_iou", c.sta_iou},     {"ttc_tol", c.ttc_tol},
                         {"alpha", c.alpha_s},       {"clip_len", c.clip_len_s},
                         {"clip_stride", c.clip_stride_s}, {"seed", c.seed}};
  if (c.tiou_thresholds) doc["tiou"] = *c.tiou_thresholds;
  if (c.recall_k) doc["recall_k"] = *c.recall_k;
  return doc.dump(2) + "\n";
}

}  // namespace egoforge::io
