#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "movreg/cvae.hpp"
#include "movreg/manifest.hpp"
#include "movreg/metrics.hpp"
#include "movreg/sampling.hpp"
#include "movreg/shape_interp.hpp"
#include "movreg/synth.hpp"

namespace movreg {

struct RasterSpec {
  int width = 64;
  int height = 32;
  bool auto_window = true;
  double margin = 0.05;  // per-axis padding, fraction of the extent
  BoundingBox window{};
};

struct TcOptions {
  long a = 1;
  long r = 10;
  int n = 3;
};

struct MetricOptions {
  HausdorffMode hd_mode = HausdorffMode::boundary_pixels;
  double hd_scale = 1.0;
  TcOptions tc;
};

struct CompressionSpec {
  CompressionMethod method;
  std::optional<std::size_t> max_len;
  bool include_final = true;
};

struct RunConfig {
  int version = 1;
  std::string manifest_path;
  RasterSpec raster;
  CompressionSpec compression;
  std::vector<std::string> interpolators = {"shape", "cvae"};
  MetricOptions metrics;
  TrainConfig cvae;
  std::string output_dir = "out";
  std::uint64_t seed = 1;
};

inline AffineTransform fit_transform(const BoundingBox& window, int width, int height) {
  const double ex = window.xmax - window.xmin;
  const double ey = window.ymax - window.ymin;
  if (!(ex > 0) || !(ey > 0)) throw Error("fit_transform: window has no extent");
  AffineTransform t;
  t.sx = width / ex;
  t.sy = height / ey;
  t.tx = -window.xmin * t.sx;
  t.ty = -window.ymin * t.sy;
  return t;
}

inline BoundingBox auto_window(const SnapshotSequence& seq, double margin) {
  BoundingBox w{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& s : seq) {
    BoundingBox b = bounding_box(s.region);
    w.xmin = std::min(w.xmin, b.xmin);
    w.ymin = std::min(w.ymin, b.ymin);
    w.xmax = std::max(w.xmax, b.xmax);
    w.ymax = std::max(w.ymax, b.ymax);
  }
  const double px = (w.xmax - w.xmin) * margin;
  const double py = (w.ymax - w.ymin) * margin;
  return {w.xmin - px, w.ymin - py, w.xmax + px, w.ymax + py};
}

// "frame,area" rows; area in world units via the mask transform.
inline std::string emit_area_curve(const std::vector<std::pair<long, RasterMask>>& frames) {
  std::string out = "frame,area\n";
  for (const auto& [frame, mask] : frames) {
    out += std::to_string(frame);
    out += ',';
    out += format_double(static_cast<double>(mask.count()) * mask.transform.pixel_area());
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// config JSON

inline TrainConfig train_config_from_json(const nlohmann::json& j, TrainConfig base = {}) {
  TrainConfig c = base;
  if (j.contains("epochs")) c.epochs = j.at("epochs").get<int>();
  if (j.contains("batch_size")) c.batch_size = j.at("batch_size").get<int>();
  if (j.contains("learning_rate")) c.learning_rate = j.at("learning_rate").get<double>();
  if (j.contains("adam_beta1")) c.adam_beta1 = j.at("adam_beta1").get<double>();
  if (j.contains("adam_beta2")) c.adam_beta2 = j.at("adam_beta2").get<double>();
  if (j.contains("adam_eps")) c.adam_eps = j.at("adam_eps").get<double>();
  if (j.contains("latent_dim")) c.latent_dim = j.at("latent_dim").get<int>();
  if (j.contains("hidden")) c.hidden = j.at("hidden").get<std::vector<int>>();
  if (j.contains("kl_weight")) c.kl_weight = j.at("kl_weight").get<double>();
  if (j.contains("rng_seed")) c.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  if (j.contains("recon_loss")) {
    const std::string r = j.at("recon_loss").get<std::string>();
    if (r == "bce") c.recon_loss = TrainConfig::ReconLoss::bce;
    else if (r == "mse") c.recon_loss = TrainConfig::ReconLoss::mse;
    else throw Error("config: recon_loss must be 'bce' or 'mse'");
  }
  c.validate();
  return c;
}

inline nlohmann::json train_config_to_json(const TrainConfig& c) {
  nlohmann::json j;
  j["epochs"] = c.epochs;
  j["batch_size"] = c.batch_size;
  j["learning_rate"] = c.learning_rate;
  j["adam_beta1"] = c.adam_beta1;
  j["adam_beta2"] = c.adam_beta2;
  j["adam_eps"] = c.adam_eps;
  j["latent_dim"] = c.latent_dim;
  j["hidden"] = c.hidden;
  j["kl_weight"] = c.kl_weight;
  j["rng_seed"] = c.rng_seed;
  j["recon_loss"] = c.recon_loss == TrainConfig::ReconLoss::bce ? "bce" : "mse";
  return j;
}

inline RunConfig run_config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  RunConfig c;
  if (j.contains("version")) c.version = j.at("version").get<int>();
  if (c.version != 1) throw Error("config: unsupported version");

  auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp.string() : (base_dir / fp).string();
  };

  c.manifest_path = resolve(j.at("manifest").get<std::string>());
  if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  c.cvae.rng_seed = c.seed;

  if (j.contains("raster")) {
    const auto& r = j.at("raster");
    if (r.contains("width")) c.raster.width = r.at("width").get<int>();
    if (r.contains("height")) c.raster.height = r.at("height").get<int>();
    if (r.contains("margin")) c.raster.margin = r.at("margin").get<double>();
    if (r.contains("window") && !r.at("window").is_string()) {
      const auto& w = r.at("window");
      c.raster.auto_window = false;
      c.raster.window = {w.at("xmin").get<double>(), w.at("ymin").get<double>(),
                         w.at("xmax").get<double>(), w.at("ymax").get<double>()};
    }
  }
  if (c.raster.width < 2 || c.raster.height < 2) throw Error("config: raster dims must be >= 2");

  if (j.contains("compression")) {
    const auto& comp = j.at("compression");
    const std::string method = comp.at("method").get<std::string>();
    if (method == "periodic") {
      c.compression.method.kind = CompressionMethod::Kind::periodic;
      c.compression.method.d = comp.at("d").get<long>();
    } else if (method == "distance") {
      c.compression.method.kind = CompressionMethod::Kind::distance;
      c.compression.method.alpha = comp.at("alpha").get<double>();
    } else {
      throw Error("config: compression method must be 'periodic' or 'distance'");
    }
    if (comp.contains("max_len") && !comp.at("max_len").is_null())
      c.compression.max_len = comp.at("max_len").get<std::size_t>();
    if (comp.contains("include_final")) c.compression.include_final = comp.at("include_final").get<bool>();
  }

  if (j.contains("interpolators")) c.interpolators = j.at("interpolators").get<std::vector<std::string>>();
  for (const auto& name : c.interpolators)
    if (name != "shape" && name != "cvae")
      throw Error("config: unknown interpolator '" + name + "'");

  if (j.contains("metrics")) {
    const auto& m = j.at("metrics");
    if (m.contains("hd_mode")) {
      const std::string mode = m.at("hd_mode").get<std::string>();
      if (mode == "boundary") c.metrics.hd_mode = HausdorffMode::boundary_pixels;
      else if (mode == "vertex") c.metrics.hd_mode = HausdorffMode::polygon_vertices;
      else throw Error("config: hd_mode must be 'boundary' or 'vertex'");
    }
    if (m.contains("hd_scale")) c.metrics.hd_scale = m.at("hd_scale").get<double>();
    if (m.contains("tc")) {
      const auto& tc = m.at("tc");
      if (tc.contains("a")) c.metrics.tc.a = tc.at("a").get<long>();
      if (tc.contains("r")) c.metrics.tc.r = tc.at("r").get<long>();
      if (tc.contains("n")) c.metrics.tc.n = tc.at("n").get<int>();
    }
  }

  if (j.contains("cvae")) {
    if (j.at("cvae").is_string()) {
      const std::string ref = resolve(j.at("cvae").get<std::string>());
      std::ifstream is(ref);
      if (!is) throw Error("config: cannot open cvae config " + ref);
      nlohmann::json cj = nlohmann::json::parse(is);
      c.cvae = train_config_from_json(cj, c.cvae);
    } else {
      c.cvae = train_config_from_json(j.at("cvae"), c.cvae);
    }
  }
  return c;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("config: cannot open " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw Error("config: " + std::string(e.what()));
  }
  return run_config_from_json(j, std::filesystem::path(path).parent_path());
}

// ---------------------------------------------------------------------------
// run protocol

struct StageTimings {
  double ingest_s = 0, compress_s = 0, train_s = 0, interpolate_s = 0, score_s = 0, report_s = 0;
};

struct InterpolatorRun {
  std::string name;
  std::vector<InterpolatedFrame> frames;
  SimilarityReport similarity;
  TcReport tc;
  std::vector<std::pair<long, double>> area_curve;
  std::vector<EpochLoss> loss_trace;  // cvae only
  int empty_outputs = 0;
  int hd_undefined = 0;
};

struct RunReport {
  RunConfig config;
  AffineTransform transform;
  CompressionResult compression;
  std::vector<InterpolatorRun> interpolators;
  std::vector<std::pair<long, double>> truth_area_curve;
  std::size_t total_frames = 0;
  std::size_t support_frames = 0;
  std::size_t evaluated_frames = 0;
  StageTimings timings;
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Generates one frame per requested timestamp from the trained model.
inline std::vector<InterpolatedFrame> cvae_sequence(const CvaeModel& model,
                                                    const SnapshotSequence& seq,
                                                    const std::vector<bool>& is_support,
                                                    bool need_regions) {
  std::vector<InterpolatedFrame> frames;
  frames.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    InterpolatedFrame f;
    f.frame = seq[i].frame;
    f.is_support = is_support[i];
    f.mask = generate_prior_mean(model, seq[i].t_norm);
    if (f.mask.count() == 0) {
      f.empty_output = true;
    } else if (need_regions) {
      f.region = vectorize(f.mask);
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

inline void score_frames(InterpolatorRun& run, const SnapshotSequence& seq,
                         const std::vector<RasterMask>& truth_masks,
                         const std::vector<bool>& is_support, const MetricOptions& options) {
  std::vector<SimilarityRow> rows;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (is_support[i]) continue;
    const InterpolatedFrame& f = run.frames[i];
    SimilarityRow row;
    row.frame = seq[i].frame;
    row.ji = jaccard_index(f.mask, truth_masks[i]);
    const bool pred_empty = f.mask.count() == 0;
    const bool truth_empty = truth_masks[i].count() == 0;
    if (pred_empty && truth_empty) {
      row.hd = 0.0;
    } else if (pred_empty || truth_empty) {
      row.hd_defined = false;
      ++run.hd_undefined;
    } else if (options.hd_mode == HausdorffMode::boundary_pixels) {
      row.hd = hausdorff(f.mask, truth_masks[i]) * options.hd_scale;
    } else {
      const auto pa = ring_vertices(f.region);
      const auto pb = ring_vertices(seq[i].region);
      row.hd = hausdorff(std::span<const Point2D>(pa), std::span<const Point2D>(pb)) * options.hd_scale;
    }
    rows.push_back(row);
  }
  run.similarity = make_similarity_report(std::move(rows));
}

inline nlohmann::json summary_to_json(const MetricSummary& s) {
  return {{"mean", s.mean}, {"sd", s.sd}, {"min", s.min}, {"max", s.max}, {"n", s.n}};
}

inline nlohmann::json tc_report_to_json(const TcReport& tc) {
  nlohmann::json j;
  j["strides"] = tc.strides;
  j["per_stride_mean"] = tc.per_stride_mean;
  j["per_stride_sd"] = tc.per_stride_sd;
  j["skipped_strides"] = tc.skipped_strides;
  j["overall_mean"] = tc.overall_mean;
  return j;
}

}  // namespace detail

inline nlohmann::json run_report_to_json(const RunReport& report) {
  nlohmann::json j;
  j["version"] = 1;

  nlohmann::json cfg;
  cfg["manifest"] = report.config.manifest_path;
  cfg["output_dir"] = report.config.output_dir;
  cfg["seed"] = report.config.seed;
  cfg["raster"] = {{"width", report.config.raster.width}, {"height", report.config.raster.height}};
  cfg["interpolators"] = report.config.interpolators;
  cfg["metrics"] = {
      {"hd_mode", report.config.metrics.hd_mode == HausdorffMode::boundary_pixels ? "boundary" : "vertex"},
      {"hd_scale", report.config.metrics.hd_scale},
      {"tc", {{"a", report.config.metrics.tc.a}, {"r", report.config.metrics.tc.r}, {"n", report.config.metrics.tc.n}}}};
  cfg["cvae"] = train_config_to_json(report.config.cvae);
  j["config"] = cfg;

  j["raster"] = {{"width", report.config.raster.width},
                 {"height", report.config.raster.height},
                 {"transform",
                  {{"sx", report.transform.sx},
                   {"sy", report.transform.sy},
                   {"tx", report.transform.tx},
                   {"ty", report.transform.ty}}}};

  j["frames"] = {{"total", report.total_frames},
                 {"support", report.support_frames},
                 {"evaluated", report.evaluated_frames}};

  nlohmann::json comp;
  comp["method"] = report.compression.method.kind == CompressionMethod::Kind::periodic ? "periodic" : "distance";
  comp["d"] = report.compression.method.d;
  comp["alpha"] = report.compression.method.alpha;
  comp["final_forced"] = report.compression.final_forced;
  comp["dropped_count"] = report.compression.dropped_count;
  std::vector<long> kept_frames;
  for (const auto& s : report.compression.kept) kept_frames.push_back(s.frame);
  comp["kept_frames"] = kept_frames;
  comp["pairwise_distances"] = report.compression.pairwise_distances;
  j["compression"] = comp;

  nlohmann::json interps = nlohmann::json::array();
  for (const auto& run : report.interpolators) {
    nlohmann::json ji;
    ji["name"] = run.name;
    ji["similarity"] = {{"ji", detail::summary_to_json(run.similarity.ji_summary)},
                        {"hd", detail::summary_to_json(run.similarity.hd_summary)}};
    ji["temporal_consistency"] = detail::tc_report_to_json(run.tc);
    ji["empty_outputs"] = run.empty_outputs;
    ji["hd_undefined"] = run.hd_undefined;
    if (run.name == "cvae") {
      ji["files"] = {{"checkpoint", "cvae_checkpoint.bin"}, {"loss_trace", "loss_trace_cvae.csv"}};
      if (!run.loss_trace.empty()) {
        ji["final_loss"] = {{"recon", run.loss_trace.back().recon},
                            {"kl", run.loss_trace.back().kl},
                            {"total", run.loss_trace.back().total}};
      }
    }
    interps.push_back(ji);
  }
  j["interpolators"] = interps;

  j["timings"] = {{"ingest_s", report.timings.ingest_s},     {"compress_s", report.timings.compress_s},
                  {"train_s", report.timings.train_s},       {"interpolate_s", report.timings.interpolate_s},
                  {"score_s", report.timings.score_s},       {"report_s", report.timings.report_s}};
  return j;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot write " + path.string());
  os << content;
  if (!os) throw Error("write failed for " + path.string());
}

inline void write_run_outputs(const RunReport& report) {
  const std::filesystem::path dir(report.config.output_dir);
  std::filesystem::create_directories(dir);

  std::string similarity = "interpolator,frame,ji,hd\n";
  for (const auto& run : report.interpolators) {
    for (const auto& row : run.similarity.per_frame) {
      similarity += run.name;
      similarity += ',';
      similarity += std::to_string(row.frame);
      similarity += ',';
      similarity += format_double(row.ji);
      similarity += ',';
      if (row.hd_defined) similarity += format_double(row.hd);
      similarity += '\n';
    }
  }
  write_text_file(dir / "similarity.csv", similarity);

  std::string tc = "interpolator,stride,t,tc\n";
  for (const auto& run : report.interpolators) {
    for (std::size_t i = 0; i < run.tc.strides.size(); ++i) {
      for (const auto& s : run.tc.per_stride_samples[i]) {
        if (!s.defined) continue;
        tc += run.name;
        tc += ',';
        tc += std::to_string(run.tc.strides[i]);
        tc += ',';
        tc += std::to_string(s.t);
        tc += ',';
        tc += format_double(s.value);
        tc += '\n';
      }
    }
  }
  write_text_file(dir / "tc.csv", tc);

  std::string area = "source,frame,area\n";
  auto append_curve = [&area](const std::string& source, const std::vector<std::pair<long, double>>& curve) {
    for (const auto& [frame, value] : curve) {
      area += source;
      area += ',';
      area += std::to_string(frame);
      area += ',';
      area += format_double(value);
      area += '\n';
    }
  };
  append_curve("truth", report.truth_area_curve);
  for (const auto& run : report.interpolators) append_curve(run.name, run.area_curve);
  write_text_file(dir / "area_curve.csv", area);

  for (const auto& run : report.interpolators) {
    if (run.name != "cvae" || run.loss_trace.empty()) continue;
    std::string trace = "epoch,recon,kl,total\n";
    for (std::size_t e = 0; e < run.loss_trace.size(); ++e) {
      trace += std::to_string(e + 1);
      trace += ',';
      trace += format_double(run.loss_trace[e].recon);
      trace += ',';
      trace += format_double(run.loss_trace[e].kl);
      trace += ',';
      trace += format_double(run.loss_trace[e].total);
      trace += '\n';
    }
    write_text_file(dir / "loss_trace_cvae.csv", trace);
  }

  write_text_file(dir / "report.json", run_report_to_json(report).dump(2) + "\n");
}

// Full protocol: ingest -> compress -> interpolate -> score held-out frames ->
// temporal consistency and area curves -> artifacts on disk.
inline RunReport run(const RunConfig& config) {
  RunReport report;
  report.config = config;

  auto t0 = std::chrono::steady_clock::now();
  SnapshotSequence seq = read_manifest(config.manifest_path);
  if (seq.size() < 2) throw Error("run: manifest must contain at least 2 snapshots");
  report.timings.ingest_s = detail::seconds_since(t0);
  report.total_frames = seq.size();

  const BoundingBox window =
      config.raster.auto_window ? auto_window(seq, config.raster.margin) : config.raster.window;
  const AffineTransform transform = fit_transform(window, config.raster.width, config.raster.height);
  report.transform = transform;

  std::vector<RasterMask> truth_masks;
  truth_masks.reserve(seq.size());
  for (const auto& s : seq)
    truth_masks.push_back(rasterize(s.region, config.raster.width, config.raster.height, transform));

  t0 = std::chrono::steady_clock::now();
  CompressionResult compression;
  if (config.compression.method.kind == CompressionMethod::Kind::periodic) {
    compression = periodic_sample(seq, config.compression.method.d, config.compression.include_final);
  } else {
    compression = distance_based_sample(seq, config.compression.method.alpha, config.compression.max_len,
                                        config.raster.width, config.raster.height, transform,
                                        config.compression.include_final);
  }
  fill_pairwise_distances(compression, config.raster.width, config.raster.height, transform);
  report.timings.compress_s = detail::seconds_since(t0);

  std::vector<bool> is_support(seq.size(), false);
  for (std::size_t idx : compression.kept_indices) is_support[idx] = true;
  report.support_frames = compression.kept.size();
  report.evaluated_frames = seq.size() - compression.kept.size();

  std::vector<long> all_frames;
  for (const auto& s : seq) all_frames.push_back(s.frame);

  const bool need_regions = config.metrics.hd_mode == HausdorffMode::polygon_vertices;

  for (const auto& name : config.interpolators) {
    InterpolatorRun run_result;
    run_result.name = name;

    try {
      if (name == "shape") {
        t0 = std::chrono::steady_clock::now();
        run_result.frames = shape_based_sequence(compression.kept, all_frames, config.raster.width,
                                                 config.raster.height, transform);
        report.timings.interpolate_s += detail::seconds_since(t0);
      } else {
        TrainConfig tc = config.cvae;
        std::vector<TrainSample> dataset;
        for (std::size_t k = 0; k < compression.kept.size(); ++k) {
          const std::size_t idx = compression.kept_indices[k];
          dataset.push_back({flatten_mask(truth_masks[idx]), seq[idx].t_norm});
        }
        t0 = std::chrono::steady_clock::now();
        TrainResult trained = train(std::move(dataset), tc, config.raster.width, config.raster.height, transform);
        report.timings.train_s += detail::seconds_since(t0);
        run_result.loss_trace = trained.trace;

        std::filesystem::create_directories(config.output_dir);
        save_checkpoint(trained.model, (std::filesystem::path(config.output_dir) / "cvae_checkpoint.bin").string());

        t0 = std::chrono::steady_clock::now();
        run_result.frames = detail::cvae_sequence(trained.model, seq, is_support, need_regions);
        report.timings.interpolate_s += detail::seconds_since(t0);
      }
    } catch (const Error& e) {
      throw Error("run[" + name + "]: " + e.what());
    }

    for (const auto& f : run_result.frames)
      if (f.empty_output) ++run_result.empty_outputs;

    t0 = std::chrono::steady_clock::now();
    detail::score_frames(run_result, seq, truth_masks, is_support, config.metrics);

    std::vector<RasterMask> generated;
    generated.reserve(run_result.frames.size());
    for (const auto& f : run_result.frames) generated.push_back(f.mask);
    run_result.tc = tc_sweep(generated, config.metrics.tc.a, config.metrics.tc.r, config.metrics.tc.n);

    for (std::size_t i = 0; i < run_result.frames.size(); ++i)
      run_result.area_curve.push_back(
          {run_result.frames[i].frame,
           static_cast<double>(run_result.frames[i].mask.count()) * transform.pixel_area()});
    report.timings.score_s += detail::seconds_since(t0);

    report.interpolators.push_back(std::move(run_result));
  }

  for (std::size_t i = 0; i < seq.size(); ++i)
    report.truth_area_curve.push_back(
        {seq[i].frame, static_cast<double>(truth_masks[i].count()) * transform.pixel_area()});

  t0 = std::chrono::steady_clock::now();
  write_run_outputs(report);
  report.timings.report_s = detail::seconds_since(t0);
  return report;
}

// ---------------------------------------------------------------------------
// minimal JSON schema checker: type / required / properties / items / enum

inline bool validate_json_schema(const nlohmann::json& doc, const nlohmann::json& schema,
                                 std::string* error = nullptr, const std::string& where = "$") {
  auto fail = [&](const std::string& msg) {
    if (error) *error = where + ": " + msg;
    return false;
  };
  if (schema.contains("type")) {
    const std::string type = schema.at("type").get<std::string>();
    const bool ok = (type == "object" && doc.is_object()) || (type == "array" && doc.is_array()) ||
                    (type == "string" && doc.is_string()) ||
                    (type == "number" && doc.is_number()) ||
                    (type == "integer" && doc.is_number_integer()) ||
                    (type == "boolean" && doc.is_boolean()) || (type == "null" && doc.is_null());
    if (!ok) return fail("expected type " + type);
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& v : schema.at("enum"))
      if (v == doc) found = true;
    if (!found) return fail("value not in enum");
  }
  if (schema.contains("required")) {
    for (const auto& key : schema.at("required")) {
      if (!doc.contains(key.get<std::string>())) return fail("missing required key " + key.get<std::string>());
    }
  }
  if (schema.contains("properties") && doc.is_object()) {
    for (const auto& [key, sub] : schema.at("properties").items()) {
      if (!doc.contains(key)) continue;
      if (!validate_json_schema(doc.at(key), sub, error, where + "." + key)) return false;
    }
  }
  if (schema.contains("items") && doc.is_array()) {
    std::size_t i = 0;
    for (const auto& item : doc) {
      if (!validate_json_schema(item, schema.at("items"), error, where + "[" + std::to_string(i) + "]"))
        return false;
      ++i;
    }
  }
  return true;
}

}  // namespace movreg
