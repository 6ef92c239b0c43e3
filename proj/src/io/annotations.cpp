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

#include "egoforge/io/annotations.hpp"

#include <fstream>
#include <sstream>

#include "strict_json.hpp"

namespace egoforge::io {

namespace {

using detail::json;
using detail::ObjectReader;
using detail::index_path;

Track parse_schema(ObjectReader& r) {
  const auto tag = r.string("schema");
  const auto slash = tag.find('/');
  const auto track = track_from_name(std::string_view(tag).substr(0, slash));
  if (slash == std::string::npos || !track) ObjectReader::fail("schema", "unknown schema tag " + tag);
  if (tag.substr(slash + 1) != std::to_string(kSchemaVersion)) {
    ObjectReader::fail("schema", "unsupported schema version in " + tag);
  }
  return *track;
}

std::array<double, 2> read_pair(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) ObjectReader::fail(where, "expected [x, y]");
  return {ObjectReader::as_number(v[0], where + "[0]"), ObjectReader::as_number(v[1], where + "[1]")};
}

std::vector<std::array<int, 2>> read_sequence(const json& v, const std::string& where) {
  if (!v.is_array()) ObjectReader::fail(where, "expected an array of [verb, noun]");
  std::vector<std::array<int, 2>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto w = index_path(where, i);
    if (!v[i].is_array() || v[i].size() != 2) ObjectReader::fail(w, "expected [verb, noun]");
    out.push_back({ObjectReader::as_int(v[i][0], w + "[0]"), ObjectReader::as_int(v[i][1], w + "[1]")});
  }
  return out;
}

std::vector<std::vector<double>> read_matrix(const json& v, const std::string& where) {
  if (!v.is_array()) ObjectReader::fail(where, "expected an array of rows");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto w = index_path(where, i);
    if (!v[i].is_array()) ObjectReader::fail(w, "expected a row");
    std::vector<double> row;
    for (std::size_t j = 0; j < v[i].size(); ++j) row.push_back(ObjectReader::as_number(v[i][j], index_path(w, j)));
    out.push_back(std::move(row));
  }
  return out;
}

void read_videos(ObjectReader& r, AnnotationSet& s, std::vector<std::string>& warnings, bool required) {
  const json* arr = required ? &r.array("videos") : r.optional("videos");
  if (arr == nullptr) return;
  if (!arr->is_array()) ObjectReader::fail("videos", "expected an array");
  for (std::size_t i = 0; i < arr->size(); ++i) {
    ObjectReader v((*arr)[i], index_path("videos", i), warnings);
    const auto id = v.string("video_id");
    const auto& frames = v.required("num_frames");
    if (!frames.is_number_integer()) ObjectReader::fail(v.child("num_frames"), "expected an integer");
    const double fps = v.number("fps");
    v.finish();
    try {
      s.videos.emplace_back(id, frames.get<std::int64_t>(), fps);
    } catch (const ParameterError& e) {
      ObjectReader::fail(index_path("videos", i), e.what());
    }
  }
}

void read_segments(ObjectReader& r, AnnotationSet& s, Role role, std::vector<std::string>& warnings) {
  if (s.track == Track::mq) {
    if (const json* c = r.optional("num_classes")) {
      s.num_classes = ObjectReader::as_int(*c, "num_classes");
    } else if (role == Role::ground_truth) {
      r.required("num_classes");
    }
  }
  read_videos(r, s, warnings, role == Role::ground_truth);
  const auto& arr = r.array("instances");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    ObjectReader v(arr[i], index_path("instances", i), warnings);
    SegmentRecord rec;
    rec.video_id = v.string("video_id");
    rec.start_s = v.number("start_s");
    rec.end_s = v.number("end_s");
    if (s.track == Track::mq) {
      rec.class_id = v.integer("class_id");
    } else {
      rec.query_id = v.string("query_id");
    }
    if (role == Role::prediction) rec.score = v.number("score");
    v.finish();
    s.segments.push_back(std::move(rec));
  }
}

void read_hands(ObjectReader& r, AnnotationSet& s, std::vector<std::string>& warnings) {
  if (const json* res = r.optional("resolution")) s.resolution = read_pair(*res, "resolution");
  const auto& arr = r.array("instances");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    ObjectReader v(arr[i], index_path("instances", i), warnings);
    HandRecord rec;
    rec.video_id = v.string("video_id");
    rec.instance_id = v.string("instance_id");
    ObjectReader kfs(v.required("keyframes"), v.child("keyframes"), warnings);
    for (Keyframe k : kAllKeyframes) {
      const std::string tag(keyframe_tag(k));
      ObjectReader p(kfs.required(tag), kfs.child(tag), warnings);
      auto& pose = rec.keyframes[static_cast<std::size_t>(k)];
      const auto l = read_pair(p.required("left"), p.child("left"));
      const auto rt = read_pair(p.required("right"), p.child("right"));
      pose.left = {l[0], l[1]};
      pose.right = {rt[0], rt[1]};
      if (const json* vis = p.optional("visible")) {
        ObjectReader vr(*vis, p.child("visible"), warnings);
        pose.left_visible = vr.boolean("left");
        pose.right_visible = vr.boolean("right");
        vr.finish();
      }
      p.finish();
    }
    kfs.finish();
    v.finish();
    s.hands.push_back(std::move(rec));
  }
}

void read_lta(ObjectReader& r, AnnotationSet& s, Role role, std::vector<std::string>& warnings) {
  const json* cfg = role == Role::ground_truth ? &r.required("config") : r.optional("config");
  if (cfg != nullptr) {
    ObjectReader c(*cfg, "config", warnings);
    s.z = c.integer("Z");
    s.vocab = {c.integer("C_v"), c.integer("C_n")};
    s.k = c.has("K") ? c.integer("K") : 5;
    c.finish();
  }
  const auto& arr = r.array("instances");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    ObjectReader v(arr[i], index_path("instances", i), warnings);
    LtaRecord rec;
    rec.video_id = v.string("video_id");
    rec.clip_index = v.integer("clip_index");
    if (role == Role::ground_truth) {
      rec.candidates.push_back(read_sequence(v.required("sequence"), v.child("sequence")));
    } else {
      if (const json* cands = v.optional("candidates")) {
        if (!cands->is_array()) ObjectReader::fail(v.child("candidates"), "expected an array");
        for (std::size_t c = 0; c < cands->size(); ++c) {
          rec.candidates.push_back(read_sequence((*cands)[c], index_path(v.child("candidates"), c)));
        }
      }
      if (const json* m = v.optional("score_matrix")) {
        ObjectReader mr(*m, v.child("score_matrix"), warnings);
        rec.verb_rows = read_matrix(mr.required("verb"), mr.child("verb"));
        rec.noun_rows = read_matrix(mr.required("noun"), mr.child("noun"));
        mr.finish();
      }
      if (rec.candidates.empty() && rec.verb_rows.empty()) {
        ObjectReader::fail(index_path("instances", i), "needs candidates or score_matrix");
      }
    }
    v.finish();
    s.lta.push_back(std::move(rec));
  }
}

void read_boxes(ObjectReader& r, AnnotationSet& s, Role role, std::vector<std::string>& warnings) {
  const bool sta = s.track == Track::sta;
  const json* cfg = role == Role::ground_truth ? &r.required("config") : r.optional("config");
  if (cfg != nullptr) {
    ObjectReader c(*cfg, "config", warnings);
    if (sta) {
      s.vocab = {c.integer("C_v"), c.integer("C_n")};
    } else {
      s.num_classes = c.integer("num_classes");
    }
    c.finish();
  }
  const json* images = role == Role::ground_truth ? &r.array("images") : r.optional("images");
  if (images != nullptr) {
    if (!images->is_array()) ObjectReader::fail("images", "expected an array");
    for (std::size_t i = 0; i < images->size(); ++i) {
      ObjectReader v((*images)[i], index_path("images", i), warnings);
      ImageRecord im{v.string("keyframe_id"), v.number("width"), v.number("height")};
      v.finish();
      s.images.push_back(std::move(im));
    }
  }
  const auto& arr = r.array("instances");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    ObjectReader v(arr[i], index_path("instances", i), warnings);
    BoxRecord rec;
    rec.keyframe_id = v.string("keyframe_id");
    const auto& box = v.required("box");
    if (!box.is_array() || box.size() != 4) ObjectReader::fail(v.child("box"), "expected [x1, y1, x2, y2]");
    for (std::size_t k = 0; k < 4; ++k) rec.box[k] = ObjectReader::as_number(box[k], index_path(v.child("box"), k));
    rec.noun = v.integer("noun");
    if (sta) {
      rec.verb = v.integer("verb");
      rec.ttc_s = v.number("ttc_s");
    } else {
      if (const json* vb = v.optional("verb")) rec.verb = ObjectReader::as_int(*vb, v.child("verb"));
      if (const json* t = v.optional("ttc_s")) rec.ttc_s = ObjectReader::as_number(*t, v.child("ttc_s"));
    }
    if (role == Role::prediction) rec.score = v.number("score");
    v.finish();
    s.boxes.push_back(std::move(rec));
  }
}

json pair_json(double a, double b) { return json::array({a, b}); }

json sequence_json(const std::vector<std::array<int, 2>>& seq) {
  json out = json::array();
  for (const auto& a : seq) out.push_back(json::array({a[0], a[1]}));
  return out;
}

json matrix_json(const std::vector<std::vector<double>>& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(row);
  return out;
}

json videos_json(const AnnotationSet& s) {
  json out = json::array();
  for (const auto& v : s.videos) {
    out.push_back({{"video_id", v.video_id()}, {"num_frames", v.num_frames()}, {"fps", v.fps()}});
  }
  return out;
}

}  // namespace

std::string schema_tag(Track track) {
  return std::string(track_name(track)) + "/" + std::to_string(kSchemaVersion);
}

LoadedAnnotations parse_annotations(std::string_view text, Role role) {
  const json doc = detail::parse_json(text);
  LoadedAnnotations out;
  ObjectReader r(doc, "", out.warnings);
  auto& s = out.set;
  s.track = parse_schema(r);
  s.is_prediction = role == Role::prediction;
  switch (s.track) {
    case Track::mq:
    case Track::nlq: read_segments(r, s, role, out.warnings); break;
    case Track::fhp: read_hands(r, s, out.warnings); break;
    case Track::lta: read_lta(r, s, role, out.warnings); break;
    case Track::sta:
    case Track::scod: read_boxes(r, s, role, out.warnings); break;
  }
  r.finish();
  return out;
}

LoadedAnnotations load_annotations(const std::filesystem::path& path, Role role) {
  try {
    return parse_annotations(read_text_file(path), role);
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

std::string dump_annotations(const AnnotationSet& s) {
  const bool pred = s.is_prediction;
  json doc;
  doc["schema"] = schema_tag(s.track);
  json instances = json::array();
  switch (s.track) {
    case Track::mq:
    case Track::nlq:
      if (s.track == Track::mq && (!pred || s.num_classes > 0)) doc["num_classes"] = s.num_classes;
      if (!pred || !s.videos.empty()) doc["videos"] = videos_json(s);
      for (const auto& r : s.segments) {
        json i{{"video_id", r.video_id}, {"start_s", r.start_s}, {"end_s", r.end_s}};
        if (s.track == Track::mq) {
          i["class_id"] = r.class_id;
        } else {
          i["query_id"] = r.query_id;
        }
        if (pred) i["score"] = r.score;
        instances.push_back(std::move(i));
      }
      break;
    case Track::fhp:
      doc["resolution"] = pair_json(s.resolution[0], s.resolution[1]);
      for (const auto& r : s.hands) {
        json kfs = json::object();
        for (Keyframe k : kAllKeyframes) {
          const auto& p = r.keyframes[static_cast<std::size_t>(k)];
          kfs[std::string(keyframe_tag(k))] = {
              {"left", pair_json(p.left.x, p.left.y)},
              {"right", pair_json(p.right.x, p.right.y)},
              {"visible", {{"left", p.left_visible}, {"right", p.right_visible}}}};
        }
        instances.push_back({{"video_id", r.video_id}, {"instance_id", r.instance_id}, {"keyframes", kfs}});
      }
      break;
    case Track::lta:
      if (!pred || s.z > 0) {
        doc["config"] = {{"Z", s.z}, {"C_v", s.vocab.num_verbs}, {"C_n", s.vocab.num_nouns}, {"K", s.k}};
      }
      for (const auto& r : s.lta) {
        json i{{"video_id", r.video_id}, {"clip_index", r.clip_index}};
        if (!pred) {
          i["sequence"] = r.candidates.empty() ? json::array() : sequence_json(r.candidates.front());
        } else {
          if (!r.candidates.empty()) {
            json c = json::array();
            for (const auto& seq : r.candidates) c.push_back(sequence_json(seq));
            i["candidates"] = std::move(c);
          }
          if (!r.verb_rows.empty() || !r.noun_rows.empty()) {
            i["score_matrix"] = {{"verb", matrix_json(r.verb_rows)}, {"noun", matrix_json(r.noun_rows)}};
          }
        }
        instances.push_back(std::move(i));
      }
      break;
    case Track::sta:
    case Track::scod: {
      const bool sta = s.track == Track::sta;
      if (!pred || (sta ? s.vocab.num_verbs > 0 : s.num_classes > 0)) {
        doc["config"] = sta ? json{{"C_v", s.vocab.num_verbs}, {"C_n", s.vocab.num_nouns}}
                            : json{{"num_classes", s.num_classes}};
      }
      if (!pred || !s.images.empty()) {
        json images = json::array();
        for (const auto& im : s.images) {
          images.push_back({{"keyframe_id", im.keyframe_id}, {"width", im.width}, {"height", im.height}});
        }
        doc["images"] = std::move(images);
      }
      for (const auto& r : s.boxes) {
        json i{{"keyframe_id", r.keyframe_id},
               {"box", json::array({r.box[0], r.box[1], r.box[2], r.box[3]})},
               {"noun", r.noun}};
        if (r.verb) i["verb"] = *r.verb;
        if (r.ttc_s) i["ttc_s"] = *r.ttc_s;
        if (pred) i["score"] = r.score;
        instances.push_back(std::move(i));
      }
      break;
    }
  }
  doc["instances"] = std::move(instances);
  return doc.dump(2) + "\n";
}

void save_annotations(const std::filesystem::path& path, const AnnotationSet& set) {
  write_text_file(path, dump_annotations(set));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw DataError("write failed for " + path.string());
}

}  // namespace egoforge::io
