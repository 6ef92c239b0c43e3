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

#include "egoforge/core/dataset.hpp"

#include <cmath>
#include <set>
#include <string>

namespace egoforge {

namespace {

constexpr std::array<std::string_view, 6> kTrackNames = {"mq", "nlq", "fhp", "lta", "sta", "scod"};

class Collector {
 public:
  void add(std::string where, std::string message) {
    out_.push_back({std::move(where), std::move(message)});
  }
  std::vector<Violation> take() { return std::move(out_); }

 private:
  std::vector<Violation> out_;
};

std::string at(std::string_view kind, std::size_t i) {
  return std::string(kind) + "[" + std::to_string(i) + "]";
}

bool finite_all(std::initializer_list<double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

void check_prob_rows(const std::vector<std::vector<double>>& rows, int z, int width,
                     const std::string& where, const char* name, Collector& c) {
  if (static_cast<int>(rows.size()) != z) {
    c.add(where, std::string(name) + " score matrix has " + std::to_string(rows.size()) +
                     " rows, expected Z=" + std::to_string(z));
    return;
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != width) {
      c.add(where, std::string(name) + " score row " + std::to_string(r) + " has wrong width");
      continue;
    }
    double sum = 0.0;
    bool ok = true;
    for (double p : rows[r]) {
      ok = ok && std::isfinite(p) && p >= 0.0;
      sum += p;
    }
    if (!ok || std::abs(sum - 1.0) > 1e-6) {
      c.add(where, std::string(name) + " score row " + std::to_string(r) + " not normalized");
    }
  }
}

void validate_segments(const AnnotationSet& s, Collector& c) {
  std::set<std::string> known;
  for (const auto& v : s.videos) known.insert(v.video_id());
  // Prediction files may omit the video table; check_references covers them.
  const bool check_refs = !s.is_prediction || !s.videos.empty();
  for (std::size_t i = 0; i < s.segments.size(); ++i) {
    const auto& r = s.segments[i];
    const auto where = at("instances", i);
    if (!finite_all({r.start_s, r.end_s})) {
      c.add(where, "segment bounds not finite");
    } else {
      if (r.start_s < 0.0) c.add(where, "segment starts before 0");
      if (r.start_s > r.end_s) c.add(where, "segment reversed");
    }
    if (check_refs && !known.contains(r.video_id)) c.add(where, "unknown video_id " + r.video_id);
    if (s.track == Track::mq) {
      if (r.class_id < 0 || r.class_id >= s.num_classes) {
        c.add(where, "class_id " + std::to_string(r.class_id) + " out of range");
      }
    } else if (r.query_id.empty()) {
      c.add(where, "empty query_id");
    }
    if (!std::isfinite(r.score)) c.add(where, "score not finite");
  }
}

void validate_hands(const AnnotationSet& s, Collector& c) {
  std::set<std::string> ids;
  for (std::size_t i = 0; i < s.hands.size(); ++i) {
    const auto& r = s.hands[i];
    const auto where = at("instances", i);
    if (r.instance_id.empty()) c.add(where, "empty instance_id");
    if (!ids.insert(r.instance_id).second) c.add(where, "duplicate instance_id " + r.instance_id);
    for (const auto& p : r.keyframes) {
      if (!finite_all({p.left.x, p.left.y, p.right.x, p.right.y})) {
        c.add(where, "hand coordinates not finite");
        break;
      }
    }
  }
}

void validate_lta(const AnnotationSet& s, Collector& c) {
  if (s.z < 1) c.add("config", "Z must be positive");
  if (s.vocab.num_verbs < 1 || s.vocab.num_nouns < 1) c.add("config", "empty vocabulary");
  if (s.k < 1) c.add("config", "K must be positive");
  for (std::size_t i = 0; i < s.lta.size(); ++i) {
    const auto& r = s.lta[i];
    const auto where = at("instances", i);
    if (r.clip_index < 0) c.add(where, "negative clip_index");
    if (r.candidates.empty() && r.verb_rows.empty()) c.add(where, "no candidates");
    if (!s.is_prediction && r.candidates.size() != 1) c.add(where, "ground truth needs one sequence");
    for (const auto& seq : r.candidates) {
      if (static_cast<int>(seq.size()) != s.z) {
        c.add(where, "candidate length " + std::to_string(seq.size()) + " != Z=" + std::to_string(s.z));
      }
      for (const auto& a : seq) {
        if (a[0] < 0 || a[0] >= s.vocab.num_verbs || a[1] < 0 || a[1] >= s.vocab.num_nouns) {
          c.add(where, "action label out of vocabulary");
          break;
        }
      }
    }
    if (!r.verb_rows.empty() || !r.noun_rows.empty()) {
      check_prob_rows(r.verb_rows, s.z, s.vocab.num_verbs, where, "verb", c);
      check_prob_rows(r.noun_rows, s.z, s.vocab.num_nouns, where, "noun", c);
    }
  }
}

void validate_boxes(const AnnotationSet& s, Collector& c) {
  std::set<std::string> known;
  for (std::size_t i = 0; i < s.images.size(); ++i) {
    const auto& im = s.images[i];
    if (!known.insert(im.keyframe_id).second) c.add(at("images", i), "duplicate keyframe_id");
    if (!(im.width > 0.0 && im.height > 0.0)) c.add(at("images", i), "image size must be positive");
  }
  const bool sta = s.track == Track::sta;
  const bool check_refs = !s.is_prediction || !s.images.empty();
  for (std::size_t i = 0; i < s.boxes.size(); ++i) {
    const auto& r = s.boxes[i];
    const auto where = at("instances", i);
    const auto& b = r.box;
    if (!finite_all({b[0], b[1], b[2], b[3]})) {
      c.add(where, "box not finite");
    } else if (b[0] > b[2] || b[1] > b[3]) {
      c.add(where, "box reversed");
    }
    if (check_refs && !known.contains(r.keyframe_id)) {
      c.add(where, "unknown keyframe_id " + r.keyframe_id);
    }
    if (sta) {
      if (r.noun < 0 || r.noun >= s.vocab.num_nouns) c.add(where, "noun out of vocabulary");
      if (!r.verb) {
        c.add(where, "missing verb");
      } else if (*r.verb < 0 || *r.verb >= s.vocab.num_verbs) {
        c.add(where, "verb out of vocabulary");
      }
      if (!r.ttc_s) {
        c.add(where, "missing ttc_s");
      } else if (!(std::isfinite(*r.ttc_s) && *r.ttc_s > 0.0)) {
        c.add(where, "ttc_s must be positive");
      }
    } else if (r.noun < 0 || r.noun >= s.num_classes) {
      c.add(where, "class out of range");
    }
    if (!std::isfinite(r.score)) c.add(where, "score not finite");
  }
}

}  // namespace

std::string_view track_name(Track t) { return kTrackNames[static_cast<std::size_t>(t)]; }

std::optional<Track> track_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kTrackNames.size(); ++i) {
    if (kTrackNames[i] == name) return static_cast<Track>(i);
  }
  return std::nullopt;
}

std::vector<Violation> validate_dataset(const AnnotationSet& set) {
  Collector c;
  switch (set.track) {
    case Track::mq:
    case Track::nlq: validate_segments(set, c); break;
    case Track::fhp: validate_hands(set, c); break;
    case Track::lta: validate_lta(set, c); break;
    case Track::sta:
    case Track::scod: validate_boxes(set, c); break;
  }
  return c.take();
}

std::vector<Violation> check_references(const AnnotationSet& gt, const AnnotationSet& pred) {
  Collector c;
  if (gt.track != pred.track) {
    c.add("schema", "track mismatch: " + std::string(track_name(gt.track)) + " vs " +
                        std::string(track_name(pred.track)));
    return c.take();
  }
  std::set<std::string> videos;
  for (const auto& v : gt.videos) videos.insert(v.video_id());
  for (const auto& r : gt.hands) videos.insert(r.video_id);
  for (const auto& r : gt.lta) videos.insert(r.video_id);
  std::set<std::string> keyframes;
  for (const auto& im : gt.images) keyframes.insert(im.keyframe_id);

  for (std::size_t i = 0; i < pred.segments.size(); ++i) {
    if (!videos.contains(pred.segments[i].video_id)) {
      c.add(at("instances", i), "unknown video_id " + pred.segments[i].video_id);
    }
  }
  std::set<std::string> hand_ids;
  for (const auto& r : gt.hands) hand_ids.insert(r.instance_id);
  for (std::size_t i = 0; i < pred.hands.size(); ++i) {
    if (!videos.contains(pred.hands[i].video_id)) {
      c.add(at("instances", i), "unknown video_id " + pred.hands[i].video_id);
    } else if (!hand_ids.contains(pred.hands[i].instance_id)) {
      c.add(at("instances", i), "unknown instance_id " + pred.hands[i].instance_id);
    }
  }
  for (std::size_t i = 0; i < pred.lta.size(); ++i) {
    if (!videos.contains(pred.lta[i].video_id)) {
      c.add(at("instances", i), "unknown video_id " + pred.lta[i].video_id);
    }
  }
  for (std::size_t i = 0; i < pred.boxes.size(); ++i) {
    if (!keyframes.contains(pred.boxes[i].keyframe_id)) {
      c.add(at("instances", i), "unknown keyframe_id " + pred.boxes[i].keyframe_id);
    }
  }
  return c.take();
}

}  // namespace egoforge
