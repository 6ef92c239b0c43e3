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

#include "egoforge/cli/cli.hpp"

#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "egoforge/cli/evaluate.hpp"
#include "egoforge/core/error.hpp"
#include "egoforge/fusion/vote.hpp"
#include "egoforge/io/annotations.hpp"
#include "egoforge/io/config.hpp"
#include "egoforge/io/features.hpp"
#include "egoforge/io/fixtures.hpp"
#include "egoforge/io/head.hpp"
#include "egoforge/io/render.hpp"
#include "egoforge/snippet/schedule.hpp"
#include "egoforge/toyheads/experiments.hpp"
#include "egoforge/toyheads/stub_features.hpp"
#include "egoforge/toyheads/synth.hpp"

namespace egoforge::cli {

namespace {

namespace fs = std::filesystem;

// Raised by flag checks that CLI11 cannot express; reported as a usage error.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "0.1,0.3" or "0.1:0.5:0.1" (inclusive).
std::vector<double> parse_thresholds(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double a = 0, b = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof()) {
      throw UsageError("--tiou: expected a:b:step, got " + text);
    }
    if (!(step > 0.0) || b < a) throw UsageError("--tiou: range must satisfy a <= b and step > 0");
    const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
    if (n > 1000) throw UsageError("--tiou: too many thresholds");
    // Rounding to 1e-9 maps 0.1 + 2 * 0.1 onto the double nearest 0.3.
    for (long i = 0; i < n; ++i) out.push_back(std::round((a + static_cast<double>(i) * step) * 1e9) / 1e9);
    return out;
  }
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--tiou: not a number: " + item);
    }
  }
  if (out.empty()) throw UsageError("--tiou: empty list");
  return out;
}

std::vector<int> parse_ints(const std::string& text, const char* flag) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": not an integer: " + item);
    }
  }
  if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
  return out;
}

// Whether an option exists on `app` and was set on the command line.
bool given(const CLI::App& app, const char* name) {
  const auto* opt = app.get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

struct Flags {
  std::string gt, pred, out, config, format = "plain", mode, tiou, recall_k;
  std::vector<std::string> inputs;
  std::string track, table;
  std::uint64_t seed = 0;
  int z = 0, k = 0, top_k = 0;
  double nms_iou = -1, ttc_tol = -1, alpha = -1, clip_len = -1, clip_stride = -1;
  // schedule
  std::int64_t num_frames = 0;
  double fps = 0, target_fps = 30;
  int snippet_len = 16, stride = 16, dim = 0;
  std::string video_id = "video";
  // train
  int epochs = -1;
  double lr = -1;
};

class Command {
 public:
  Command(Flags& f, std::ostream& out, std::ostream& err) : f_(f), out_(out), err_(err) {}

  io::Format format() const {
    const auto fmt = io::format_from_name(f_.format);
    if (!fmt) throw UsageError("--format must be plain, csv, or json");
    return *fmt;
  }

  // Merges --config, then explicit flags, into one validated RunConfig.
  io::RunConfig run_config(const CLI::App& app) const {
    io::RunConfig cfg;
    if (!f_.config.empty()) {
      auto loaded = io::load_config(f_.config);
      for (const auto& w : loaded.warnings) err_ << "warning: " << w << "\n";
      cfg = loaded.config;
    }
    if (given(app, "--tiou")) cfg.tiou_thresholds = parse_thresholds(f_.tiou);
    if (given(app, "--recall-k")) cfg.recall_k = parse_ints(f_.recall_k, "--recall-k");
    if (given(app, "--z")) cfg.z = f_.z;
    if (given(app, "--k")) cfg.k = f_.k;
    if (given(app, "--top-k")) cfg.top_k = f_.top_k;
    if (given(app, "--nms-iou")) cfg.nms_iou = f_.nms_iou;
    if (given(app, "--ttc-tol")) cfg.ttc_tol = f_.ttc_tol;
    if (given(app, "--alpha")) cfg.alpha_s = f_.alpha;
    if (given(app, "--clip-len")) cfg.clip_len_s = f_.clip_len;
    if (given(app, "--clip-stride")) cfg.clip_stride_s = f_.clip_stride;
    if (given(app, "--seed")) cfg.seed = f_.seed;
    try {
      cfg.validate();
    } catch (const ParameterError& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }

  // Writes to --out when given, otherwise to stdout.
  void emit(const std::string& text) const {
    if (f_.out.empty()) {
      out_ << text;
    } else {
      io::write_text_file(f_.out, text);
    }
  }

  io::LoadedAnnotations load(const std::string& path, io::Role role) const {
    auto loaded = io::load_annotations(path, role);
    for (const auto& w : loaded.warnings) err_ << "warning: " << path << ": " << w << "\n";
    return loaded;
  }

  void eval(const CLI::App& app) const {
    const auto fmt = format();
    auto cfg = run_config(app);
    const auto track = track_from_name(f_.track);
    const auto gt = load(f_.gt, io::Role::ground_truth).set;
    if (gt.track != *track) {
      throw DataError(f_.gt + ": holds " + std::string(track_name(gt.track)) + " annotations, not " + f_.track);
    }
    const auto pred = prepare_prediction(gt, load(f_.pred, io::Role::prediction).set);
    if (gt.track == Track::lta) {
      if (given(app, "--z") && f_.z != gt.z) {
        throw DataError("--z " + std::to_string(f_.z) + " does not match ground truth Z=" + std::to_string(gt.z));
      }
      if (!given(app, "--k") && f_.config.empty()) cfg.k = gt.k;
    }
    const auto reports = evaluate(gt, pred, cfg);
    emit(io::render_reports(reports, fmt));
  }

  void schedule(const CLI::App& app) const {
    const auto fmt = format();
    const VideoMeta meta(f_.video_id, f_.num_frames, f_.fps);
    const VideoMeta resampled(f_.video_id, snippet::resampled_frame_count(meta, f_.target_fps), f_.target_fps);
    const auto sched = snippet::build_snippet_schedule(resampled, f_.target_fps, f_.snippet_len, f_.stride);
    std::ostringstream os;
    if (fmt == io::Format::csv) os << "index,start_frame,end_frame,padded\n";
    if (fmt == io::Format::json) os << "{\"snippets\": [";
    for (std::size_t i = 0; i < sched.snippets.size(); ++i) {
      const auto& s = sched.snippets[i];
      switch (fmt) {
        case io::Format::plain: os << i << " " << s.start_frame << " " << s.end_frame << (s.padded ? " padded" : "") << "\n"; break;
        case io::Format::csv: os << i << "," << s.start_frame << "," << s.end_frame << "," << (s.padded ? 1 : 0) << "\n"; break;
        case io::Format::json:
          os << (i ? ", " : "") << "[" << s.start_frame << ", " << s.end_frame << ", " << (s.padded ? "true" : "false") << "]";
          break;
      }
    }
    if (fmt == io::Format::json) os << "]}\n";
    if (given(app, "--dim")) {
      if (f_.out.empty()) throw UsageError("--dim writes stub features and needs --out");
      const auto variant = f_.mode == "noun" ? toyheads::FeatureVariant::noun : toyheads::FeatureVariant::verb;
      io::save_features(f_.out, toyheads::stub_feature_matrix(f_.video_id, sched, f_.dim, variant));
      err_ << "wrote " << sched.snippets.size() << " x " << f_.dim << " features to " << f_.out << "\n";
    }
    out_ << os.str();
  }

  void fuse_pre() const {
    const auto a = io::load_features(f_.inputs.at(0));
    const auto b = io::load_features(f_.inputs.at(1));
    const auto fused = checked_data([&] { return snippet::prefuse_features(a, b); });
    io::save_features(f_.out, fused);
    out_ << fused.rows() << " x " << fused.dim() << "\n";
  }

  void fuse_post(const CLI::App& app) const {
    const auto a = load(f_.inputs.at(0), io::Role::prediction).set;
    const auto b = load(f_.inputs.at(1), io::Role::prediction).set;
    if (a.track != b.track || (a.track != Track::mq && a.track != Track::nlq)) {
      throw DataError("post fusion needs two mq or two nlq prediction files");
    }
    double tiou = fusion::FusionConfig{}.temporal_nms_tiou;
    if (given(app, "--tiou")) {
      const auto t = parse_thresholds(f_.tiou);
      if (t.size() != 1) throw UsageError("--tiou: post fusion takes one threshold");
      tiou = t.front();
    }
    const auto ga = ranked_groups(a);
    const auto gb = ranked_groups(b);
    std::map<std::string, int> keys;
    for (const auto& [k, _] : ga) keys[k];
    for (const auto& [k, _] : gb) keys[k];
    AnnotationSet out = a;
    out.segments.clear();
    for (const auto& [key, _] : keys) {
      static const std::vector<RankedSegment> none;
      const auto ia = ga.find(key);
      const auto ib = gb.find(key);
      const auto fused = fusion::post_fuse_segments(ia == ga.end() ? none : ia->second,
                                                    ib == gb.end() ? none : ib->second, tiou);
      const auto video = key.substr(0, key.find('\x1f'));
      for (const auto& s : fused) {
        SegmentRecord r{video, s.segment.start_s(), s.segment.end_s(), -1, {}, s.score};
        if (a.track == Track::mq) {
          r.class_id = std::stoi(s.label);
        } else {
          r.query_id = s.label;
        }
        out.segments.push_back(std::move(r));
      }
    }
    emit(io::dump_annotations(out));
  }

  void fuse_sta(const CLI::App& app) const {
    const auto a = load(f_.inputs.at(0), io::Role::prediction).set;
    const auto b = load(f_.inputs.at(1), io::Role::prediction).set;
    if (a.track != Track::sta || b.track != Track::sta) throw DataError("sta fusion needs two sta prediction files");
    fusion::FusionConfig cfg;
    if (given(app, "--nms-iou")) cfg.nms_iou_thresh = f_.nms_iou;
    if (!(cfg.nms_iou_thresh >= 0.0 && cfg.nms_iou_thresh <= 1.0)) throw UsageError("--nms-iou must lie in [0, 1]");
    const auto fused = fusion::splice_and_nms(keyframe_predictions(a), keyframe_predictions(b), cfg);
    AnnotationSet out = a;
    out.boxes.clear();
    for (const auto& [kf, list] : fused) {
      for (const auto& s : list) {
        out.boxes.push_back({kf, {s.box.x1(), s.box.y1(), s.box.x2(), s.box.y2()}, s.noun_id, s.verb_id, s.ttc_s, s.score});
      }
    }
    emit(io::dump_annotations(out));
  }

  void vote(const CLI::App& app) const {
    auto pred = load(f_.pred, io::Role::prediction).set;
    if (pred.track != Track::lta) throw DataError("vote needs an lta prediction file");
    if (!f_.gt.empty()) {
      const auto gt = load(f_.gt, io::Role::ground_truth).set;
      if (pred.z == 0) {
        pred.z = gt.z;
        pred.vocab = gt.vocab;
      }
    }
    if (pred.z == 0) throw DataError("vote needs Z and the vocabulary from the file config or --gt");
    fusion::VoteConfig vc;
    if (f_.mode == "majority") {
      vc.combine_rule = fusion::CombineRule::majority;
    } else if (!f_.mode.empty() && f_.mode != "mean_prob") {
      throw UsageError("--mode must be mean_prob or majority");
    }
    const int k = given(app, "--k") ? f_.k : 5;
    if (k < 1) throw UsageError("--k must be positive");
    std::map<metrics::ClipKey, std::vector<ForecastMatrix>> clips;
    for (std::size_t i = 0; i < pred.lta.size(); ++i) {
      const auto& r = pred.lta[i];
      auto m = checked_data([&] { return record_matrix(pred, r); });
      if (!m) throw DataError("instances[" + std::to_string(i) + "]: vote needs a score_matrix");
      clips[{r.video_id, r.clip_index}].push_back(std::move(*m));
    }
    AnnotationSet out = pred;
    out.k = k;
    out.lta.clear();
    for (const auto& [key, mats] : clips) {
      const auto res = fusion::multi_clips_vote(mats, vc);
      LtaRecord r{key.video_id, key.clip_index, {}, {}, {}};
      std::vector<ActionSequence> cands{res.labels};
      for (auto& c : fusion::expand_candidates(res.fused, k)) {
        if (static_cast<int>(cands.size()) >= k) break;
        if (c != cands.front()) cands.push_back(std::move(c));
      }
      for (const auto& seq : cands) {
        std::vector<std::array<int, 2>> raw;
        for (const auto& a : seq) raw.push_back({a.verb_id(), a.noun_id()});
        r.candidates.push_back(std::move(raw));
      }
      for (int p = 0; p < res.fused.z(); ++p) {
        const auto vr = res.fused.verb_row(p);
        const auto nr = res.fused.noun_row(p);
        r.verb_rows.emplace_back(vr.begin(), vr.end());
        r.noun_rows.emplace_back(nr.begin(), nr.end());
      }
      out.lta.push_back(std::move(r));
    }
    emit(io::dump_annotations(out));
  }

  void synth(const CLI::App& app) const {
    toyheads::SynthConfig cfg;
    cfg.seed = f_.seed;
    if (given(app, "--z")) cfg.z = f_.z;
    const auto data = toyheads::generate_synthetic(cfg);
    fs::create_directories(f_.out);
    const std::pair<const char*, const AnnotationSet*> sets[] = {
        {"mq", &data.mq}, {"nlq", &data.nlq}, {"fhp", &data.fhp}, {"lta", &data.lta}, {"sta", &data.sta}, {"scod", &data.scod}};
    for (const auto& [name, set] : sets) {
      const auto gt_path = fs::path(f_.out) / (std::string("gt_") + name + ".json");
      const auto pred_path = fs::path(f_.out) / (std::string("pred_") + name + ".json");
      io::save_annotations(gt_path, *set);
      io::save_annotations(pred_path, toyheads::perfect_predictions(*set));
      out_ << gt_path.filename().string() << "\n" << pred_path.filename().string() << "\n";
    }
  }

  void train(const CLI::App& app) const {
    const auto fmt = format();
    std::ostringstream os;
    const std::string mode = f_.mode.empty() ? "lta" : f_.mode;
    if (mode == "lta" || mode == "lta-factorized") {
      toyheads::LtaExperimentConfig cfg;
      cfg.world.seed = f_.seed;
      cfg.train.seed = f_.seed;
      if (mode == "lta-factorized") cfg.head_kind = toyheads::HeadKind::classifier_factorized;
      if (given(app, "--epochs")) cfg.train.epochs = f_.epochs;
      if (given(app, "--lr")) cfg.train.lr = f_.lr;
      if (given(app, "--k")) cfg.k = f_.k;
      if (given(app, "--clip-len")) cfg.clip_len_s = f_.clip_len;
      if (given(app, "--clip-stride")) cfg.clip_stride_s = f_.clip_stride;
      if (given(app, "--alpha")) {
        cfg.alphas.clear();
        for (double a = cfg.clip_len_s; a < f_.alpha; a *= 2.0) cfg.alphas.push_back(a);
        cfg.alphas.push_back(f_.alpha);
        cfg.train_alpha_s = f_.alpha;
      }
      validate_or_usage([&] { cfg.train.validate(); });
      const auto res = toyheads::run_lta_experiment(cfg);
      write_curve(os, res.loss_curve);
      std::vector<metrics::MetricReport> reports;
      auto add = [&](const std::string& label, const toyheads::AlphaResult& a) {
        reports.push_back({label + " Verb ED", a.verb_ed, {}, static_cast<std::size_t>(res.episodes), metrics::MetricFamily::edit_distance});
        reports.push_back({label + " Noun ED", a.noun_ed, {}, static_cast<std::size_t>(res.episodes), metrics::MetricFamily::edit_distance});
        reports.push_back({label + " Action ED", a.action_ed, {}, static_cast<std::size_t>(res.episodes), metrics::MetricFamily::edit_distance});
      };
      add("center-clip OW=" + number(res.center_clip.alpha_s), res.center_clip);
      for (const auto& a : res.voting) add("vote OW=" + number(a.alpha_s), a);
      os << io::render_reports(reports, fmt);
      if (!f_.out.empty()) io::write_text_file(f_.out, io::dump_head(*res.head));
    } else if (mode == "fhp") {
      toyheads::SynthConfig sc;
      sc.seed = f_.seed;
      const auto world = toyheads::generate_world(sc);
      const auto gt = toyheads::annotate(world).fhp;
      const auto data = toyheads::fhp_training_set(world, gt);
      toyheads::TrainConfig tc;
      tc.seed = f_.seed;
      tc.optimizer = toyheads::Optimizer::sgd_momentum;
      tc.lr = 20.0;
      tc.epochs = 1000;
      tc.batch_size = 8;
      if (given(app, "--epochs")) tc.epochs = f_.epochs;
      if (given(app, "--lr")) tc.lr = f_.lr;
      validate_or_usage([&] { tc.validate(); });
      const auto res = toyheads::train_head(toyheads::LinearHead::regression(static_cast<int>(data.front().x.size())), data, tc);
      write_curve(os, res.loss_curve);
      AnnotationSet pred = gt;
      pred.is_prediction = true;
      for (std::size_t i = 0; i < pred.hands.size(); ++i) {
        const auto y = toyheads::head_forward(res.head, data[i].x);
        const auto kf = HandKeyframes::unflatten(y);
        for (std::size_t k = 0; k < kNumKeyframes; ++k) {
          pred.hands[i].keyframes[k].left = kf.poses()[k].left;
          pred.hands[i].keyframes[k].right = kf.poses()[k].right;
        }
      }
      os << io::render_reports(evaluate(gt, pred, io::RunConfig{}), fmt);
      if (!f_.out.empty()) io::write_text_file(f_.out, io::dump_head(res.head));
    } else {
      throw UsageError("--mode must be lta, lta-factorized, or fhp");
    }
    out_ << os.str();
  }

  void report() const {
    const auto fmt = format();
    std::string text;
    if (f_.table.empty() || f_.table == "all") {
      for (const auto& f : io::bundled_fixtures()) {
        if (fmt == io::Format::plain && !text.empty()) text += "\n";
        auto part = io::render_fixture(f, fmt);
        // One csv header for the whole set.
        if (fmt == io::Format::csv && !text.empty()) part.erase(0, part.find('\n') + 1);
        text += part;
      }
    } else {
      try {
        text = io::render_fixture(io::find_fixture(f_.table), fmt);
      } catch (const ParameterError& e) {
        throw UsageError(e.what());
      }
    }
    emit(text);
  }

 private:
  template <class F>
  static auto checked_data(F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const ParameterError& e) {
      throw DataError(e.what());
    }
  }

  template <class F>
  static void validate_or_usage(F&& f) {
    try {
      f();
    } catch (const ParameterError& e) {
      throw UsageError(e.what());
    }
  }

  static std::string number(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  }

  static void write_curve(std::ostream& os, const std::vector<double>& curve) {
    char buf[64];
    for (std::size_t e = 0; e < curve.size(); ++e) {
      std::snprintf(buf, sizeof buf, "epoch %zu loss %.6f\n", e + 1, curve[e]);
      os << buf;
    }
  }

  Flags& f_;
  std::ostream& out_;
  std::ostream& err_;
};

const CLI::App* deepest(const CLI::App* app) {
  for (const auto* sub : app->get_subcommands()) return deepest(sub);
  return app;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Flags f;
  CLI::App app{"Evaluation, fusion, and toy-model toolkit for egocentric video benchmarks", "egoforge"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  auto fmt_opt = [&](CLI::App* s) {
    s->add_option("--format", f.format, "plain, csv, or json")->capture_default_str();
  };

  auto* schedule = app.add_subcommand("schedule", "Snippet schedule for one video (optionally stub features)");
  schedule->add_option("--num-frames", f.num_frames, "Source frame count")->required()->check(CLI::PositiveNumber);
  schedule->add_option("--fps", f.fps, "Source frame rate")->required()->check(CLI::PositiveNumber);
  schedule->add_option("--target-fps", f.target_fps, "Resampled frame rate")->capture_default_str();
  schedule->add_option("--snippet-len", f.snippet_len, "Frames per snippet")->capture_default_str();
  schedule->add_option("--stride", f.stride, "Frames between snippet starts")->capture_default_str();
  schedule->add_option("--video-id", f.video_id, "Video id used to seed stub features")->capture_default_str();
  schedule->add_option("--dim", f.dim, "Write stub features of this width to --out");
  schedule->add_option("--mode", f.mode, "Stub feature variant: verb or noun");
  schedule->add_option("--out", f.out, "Feature file path");
  fmt_opt(schedule);

  auto* eval = app.add_subcommand("eval", "Score predictions against ground truth");
  eval->add_option("track", f.track, "mq, nlq, fhp, lta, sta, or scod")
      ->required()
      ->check(CLI::IsMember({"mq", "nlq", "fhp", "lta", "sta", "scod"}));
  eval->add_option("--gt", f.gt, "Ground-truth JSON")->required();
  eval->add_option("--pred", f.pred, "Prediction JSON")->required();
  eval->add_option("--config", f.config, "Config JSON supplying defaults");
  eval->add_option("--tiou", f.tiou, "tIoU thresholds: comma list or a:b:step");
  eval->add_option("--recall-k", f.recall_k, "Recall cutoffs: comma list");
  eval->add_option("--z", f.z, "Forecast length (must match the ground truth)");
  eval->add_option("--k", f.k, "Candidates scored per forecast");
  eval->add_option("--top-k", f.top_k, "STA predictions kept per keyframe");
  eval->add_option("--ttc-tol", f.ttc_tol, "STA time-to-contact tolerance in seconds");
  eval->add_option("--nms-iou", f.nms_iou, "Unused by eval; accepted for config symmetry");
  eval->add_option("--seed", f.seed, "Unused by eval; accepted for config symmetry");
  eval->add_option("--out", f.out, "Write the report here instead of stdout");
  fmt_opt(eval);

  auto* fuse = app.add_subcommand("fuse", "Pre-fusion of features or post-fusion of predictions");
  fuse->require_subcommand(1);
  auto* fuse_pre = fuse->add_subcommand("pre", "Concatenate two feature files row by row");
  fuse_pre->add_option("inputs", f.inputs, "Two feature files")->required()->expected(2);
  fuse_pre->add_option("--out", f.out, "Fused feature file")->required();
  auto* fuse_post = fuse->add_subcommand("post", "Merge two mq/nlq prediction files with temporal NMS");
  fuse_post->add_option("inputs", f.inputs, "Two prediction files")->required()->expected(2);
  fuse_post->add_option("--tiou", f.tiou, "Temporal NMS threshold");
  fuse_post->add_option("--out", f.out, "Fused prediction file");
  auto* fuse_sta = fuse->add_subcommand("sta", "Splice two STA prediction files and apply NMS");
  fuse_sta->add_option("inputs", f.inputs, "Two prediction files")->required()->expected(2);
  fuse_sta->add_option("--nms-iou", f.nms_iou, "Box NMS threshold (default 0.75)");
  fuse_sta->add_option("--out", f.out, "Fused prediction file");

  auto* vote = app.add_subcommand("vote", "Multi-clip voting over per-clip LTA score matrices");
  vote->add_option("--pred", f.pred, "LTA predictions, one score_matrix per clip")->required();
  vote->add_option("--gt", f.gt, "Ground truth supplying Z and the vocabulary");
  vote->add_option("--mode", f.mode, "mean_prob or majority");
  vote->add_option("--k", f.k, "Candidates per forecast");
  vote->add_option("--out", f.out, "Voted prediction file");

  auto* synth = app.add_subcommand("synth", "Synthetic ground truth and perfect predictions for every track");
  synth->add_option("--seed", f.seed, "Generator seed")->capture_default_str();
  synth->add_option("--z", f.z, "LTA forecast length");
  synth->add_option("--out", f.out, "Output directory")->required();

  auto* train = app.add_subcommand("train", "Train a linear head on synthetic data");
  train->add_option("--mode", f.mode, "lta, lta-factorized, or fhp");
  train->add_option("--seed", f.seed, "Data and shuffle seed")->capture_default_str();
  train->add_option("--epochs", f.epochs, "Training epochs");
  train->add_option("--lr", f.lr, "Learning rate");
  train->add_option("--k", f.k, "Candidates per forecast (lta)");
  train->add_option("--alpha", f.alpha, "Largest observable window in seconds (lta)");
  train->add_option("--clip-len", f.clip_len, "Clip length in seconds (lta)");
  train->add_option("--clip-stride", f.clip_stride, "Clip stride in seconds (lta)");
  train->add_option("--out", f.out, "Write the trained head as JSON");
  fmt_opt(train);

  auto* report = app.add_subcommand("report", "Render bundled published result tables");
  report->add_option("table", f.table, "Table name or all");
  fmt_opt(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << deepest(&app)->help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << deepest(&app)->help();
    return kUsageError;
  }

  Command cmd(f, out, err);
  try {
    if (schedule->parsed()) {
      cmd.schedule(*schedule);
    } else if (eval->parsed()) {
      cmd.eval(*eval);
    } else if (fuse_pre->parsed()) {
      cmd.fuse_pre();
    } else if (fuse_post->parsed()) {
      cmd.fuse_post(*fuse_post);
    } else if (fuse_sta->parsed()) {
      cmd.fuse_sta(*fuse_sta);
    } else if (vote->parsed()) {
      cmd.vote(*vote);
    } else if (synth->parsed()) {
      cmd.synth(*synth);
    } else if (train->parsed()) {
      cmd.train(*train);
    } else if (report->parsed()) {
      cmd.report();
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << deepest(&app)->help();
    return kUsageError;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kOk;
}

}  // namespace egoforge::cli
