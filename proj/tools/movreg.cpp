// movreg: reconstruct continuous 2D region evolution from discrete snapshots.
//
// Subcommands: synth (make a ground-truth manifest), compress (periodic or
// distance-based sampling), interpolate (shape-based or C-VAE in-betweens),
// score (similarity + temporal consistency vs a truth manifest), run (the
// whole protocol driven by a JSON config).

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <map>

#include "movreg/harness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace movreg;

namespace {

struct RasterCli {
  int width = 64;
  int height = 32;
  std::vector<double> window;  // xmin,ymin,xmax,ymax; empty = auto
  double margin = 0.05;

  void attach(CLI::App* cmd) {
    cmd->add_option("--width", width, "raster width in pixels")->check(CLI::Range(2, 1 << 14));
    cmd->add_option("--height", height, "raster height in pixels")->check(CLI::Range(2, 1 << 14));
    cmd->add_option("--window", window, "world window xmin ymin xmax ymax (default: fit to data)")
        ->expected(4);
    cmd->add_option("--margin", margin, "auto-window padding fraction");
  }

  AffineTransform transform_for(const SnapshotSequence& seq) const {
    BoundingBox box;
    if (window.size() == 4) {
      box = {window[0], window[1], window[2], window[3]};
    } else {
      box = auto_window(seq, margin);
    }
    return fit_transform(box, width, height);
  }
};

TrainConfig load_cvae_config(const std::string& path, std::uint64_t seed) {
  TrainConfig base;
  base.rng_seed = seed;
  if (path.empty()) return base;
  std::ifstream is(path);
  if (!is) throw Error("cannot open cvae config " + path);
  return train_config_from_json(json::parse(is), base);
}

int cmd_synth(const std::string& scenario, int frames, std::uint64_t seed, const std::string& out) {
  SnapshotSequence seq = synth_scenario(scenario, frames, seed);
  write_manifest(out, seq);
  std::cout << "wrote " << seq.size() << " snapshots (" << scenario << ") to " << out << "\n";
  return 0;
}

int cmd_compress(const std::string& manifest, const std::string& method, long d, double alpha,
                 std::int64_t max_len, bool no_final, const RasterCli& raster,
                 const std::string& out_dir) {
  SnapshotSequence seq = read_manifest(manifest);
  const AffineTransform transform = raster.transform_for(seq);

  CompressionResult result;
  if (method == "periodic") {
    result = periodic_sample(seq, d, !no_final);
  } else if (method == "distance") {
    std::optional<std::size_t> cap;
    if (max_len > 0) cap = static_cast<std::size_t>(max_len);
    result = distance_based_sample(seq, alpha, cap, raster.width, raster.height, transform, !no_final);
  } else {
    throw Error("--method must be periodic or distance");
  }
  fill_pairwise_distances(result, raster.width, raster.height, transform);

  fs::create_directories(out_dir);
  write_manifest((fs::path(out_dir) / "kept.csv").string(), result.kept);

  json j;
  j["method"] = method;
  j["d"] = result.method.d;
  j["alpha"] = result.method.alpha;
  j["include_final"] = !no_final;
  j["final_forced"] = result.final_forced;
  j["dropped_count"] = result.dropped_count;
  std::vector<long> kept_frames;
  for (const auto& s : result.kept) kept_frames.push_back(s.frame);
  j["kept_frames"] = kept_frames;
  j["pairwise_distances"] = result.pairwise_distances;
  write_text_file(fs::path(out_dir) / "compression.json", j.dump(2) + "\n");

  std::cout << "kept " << result.kept.size() << " of " << seq.size() << " snapshots -> " << out_dir
            << "/kept.csv\n";
  return 0;
}

int cmd_interpolate(const std::string& method, const std::string& support_path,
                    const std::string& targets_path, const RasterCli& raster,
                    const std::string& cvae_config, std::uint64_t seed, const std::string& out_dir) {
  SnapshotSequence supports = read_manifest(support_path);
  SnapshotSequence targets = read_manifest(targets_path);
  const AffineTransform transform = raster.transform_for(supports);

  std::vector<long> frames;
  for (const auto& s : targets) frames.push_back(s.frame);

  std::vector<InterpolatedFrame> generated;
  std::vector<EpochLoss> trace;
  if (method == "shape") {
    generated = shape_based_sequence(supports, frames, raster.width, raster.height, transform);
  } else if (method == "cvae") {
    TrainConfig config = load_cvae_config(cvae_config, seed);
    std::vector<TrainSample> dataset;
    for (const auto& s : supports)
      dataset.push_back({flatten_mask(rasterize(s.region, raster.width, raster.height, transform)), s.t_norm});
    TrainResult trained = train(std::move(dataset), config, raster.width, raster.height, transform);
    trace = trained.trace;
    fs::create_directories(out_dir);
    save_checkpoint(trained.model, (fs::path(out_dir) / "cvae_checkpoint.bin").string());
    for (const auto& t : targets) {
      InterpolatedFrame f;
      f.frame = t.frame;
      f.mask = generate_prior_mean(trained.model, t.t_norm);
      f.empty_output = f.mask.count() == 0;
      if (!f.empty_output) f.region = vectorize(f.mask);
      generated.push_back(std::move(f));
    }
  } else {
    throw Error("--method must be shape or cvae");
  }

  fs::create_directories(out_dir);
  SnapshotSequence out_seq;
  int empties = 0;
  for (const auto& f : generated) {
    if (f.empty_output) {
      ++empties;
      continue;  // empty region has no WKT form; reported below
    }
    Snapshot s;
    s.frame = f.frame;
    s.region = f.region.empty() ? vectorize(f.mask) : f.region;
    out_seq.push_back(std::move(s));
  }
  write_manifest((fs::path(out_dir) / "generated.csv").string(), out_seq);

  json j;
  j["method"] = method;
  j["support_manifest"] = support_path;
  j["targets_manifest"] = targets_path;
  j["generated"] = out_seq.size();
  j["empty_outputs"] = empties;
  write_text_file(fs::path(out_dir) / "interpolate.json", j.dump(2) + "\n");

  if (!trace.empty()) {
    std::string csv = "epoch,recon,kl,total\n";
    for (std::size_t e = 0; e < trace.size(); ++e)
      csv += std::to_string(e + 1) + "," + format_double(trace[e].recon) + "," +
             format_double(trace[e].kl) + "," + format_double(trace[e].total) + "\n";
    write_text_file(fs::path(out_dir) / "loss_trace_cvae.csv", csv);
  }

  std::cout << "generated " << out_seq.size() << " regions";
  if (empties) std::cout << " (" << empties << " empty outputs skipped)";
  std::cout << " -> " << out_dir << "/generated.csv\n";
  return 0;
}

int cmd_score(const std::string& pred_path, const std::string& truth_path, const RasterCli& raster,
              const std::string& hd_mode, double hd_scale, long tc_a, long tc_r, int tc_n,
              const std::string& out_dir) {
  std::string pred_manifest = pred_path;
  if (fs::is_directory(pred_path)) pred_manifest = (fs::path(pred_path) / "generated.csv").string();

  SnapshotSequence pred = read_manifest(pred_manifest);
  SnapshotSequence truth = read_manifest(truth_path);
  const AffineTransform transform = raster.transform_for(truth);

  std::map<long, const Snapshot*> truth_by_frame;
  for (const auto& s : truth) truth_by_frame[s.frame] = &s;

  const bool vertex_mode = hd_mode == "vertex";
  std::vector<SimilarityRow> rows;
  std::vector<RasterMask> pred_masks;
  for (const auto& p : pred) {
    RasterMask pm = rasterize(p.region, raster.width, raster.height, transform);
    pred_masks.push_back(pm);
    auto it = truth_by_frame.find(p.frame);
    if (it == truth_by_frame.end()) continue;
    RasterMask tm = rasterize(it->second->region, raster.width, raster.height, transform);
    SimilarityRow row;
    row.frame = p.frame;
    row.ji = jaccard_index(pm, tm);
    if (pm.count() == 0 || tm.count() == 0) {
      row.hd_defined = pm.count() == tm.count();
      row.hd = 0.0;
    } else if (vertex_mode) {
      const auto pa = ring_vertices(p.region);
      const auto pb = ring_vertices(it->second->region);
      row.hd = hausdorff(std::span<const Point2D>(pa), std::span<const Point2D>(pb)) * hd_scale;
    } else {
      row.hd = hausdorff(pm, tm) * hd_scale;
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw Error("score: no common frames between prediction and truth");

  SimilarityReport similarity = make_similarity_report(std::move(rows));
  TcReport tc = tc_sweep(pred_masks, tc_a, tc_r, tc_n);

  fs::create_directories(out_dir);
  write_text_file(fs::path(out_dir) / "similarity.csv", similarity_to_csv(similarity));
  write_text_file(fs::path(out_dir) / "tc.csv", tc_to_csv(tc));

  json j;
  j["pred"] = pred_manifest;
  j["truth"] = truth_path;
  j["frames_scored"] = similarity.per_frame.size();
  j["ji"] = {{"mean", similarity.ji_summary.mean}, {"sd", similarity.ji_summary.sd},
             {"min", similarity.ji_summary.min}, {"max", similarity.ji_summary.max}};
  j["hd"] = {{"mean", similarity.hd_summary.mean}, {"sd", similarity.hd_summary.sd},
             {"min", similarity.hd_summary.min}, {"max", similarity.hd_summary.max}};
  j["tc"] = {{"strides", tc.strides}, {"per_stride_mean", tc.per_stride_mean},
             {"overall_mean", tc.overall_mean}};
  write_text_file(fs::path(out_dir) / "score.json", j.dump(2) + "\n");

  std::cout << "scored " << similarity.per_frame.size() << " frames: mean JI "
            << format_double(similarity.ji_summary.mean) << ", mean HD "
            << format_double(similarity.hd_summary.mean) << ", overall TC "
            << format_double(tc.overall_mean) << " -> " << out_dir << "\n";
  return 0;
}

int cmd_run(const std::string& config_path) {
  RunConfig config = load_run_config(config_path);
  RunReport report = run(config);
  std::cout << "run complete: " << report.evaluated_frames << " frames evaluated, outputs in "
            << config.output_dir << "\n";
  for (const auto& r : report.interpolators) {
    std::cout << "  " << r.name << ": mean JI " << format_double(r.similarity.ji_summary.mean)
              << ", mean HD " << format_double(r.similarity.hd_summary.mean) << ", overall TC "
              << format_double(r.tc.overall_mean) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moving-region reconstruction toolkit"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic ground-truth manifest");
  std::string scenario = "disk";
  int frames = 200;
  std::uint64_t synth_seed = 1;
  std::string synth_out = "truth.csv";
  synth->add_option("--scenario", scenario, "disk | blob | noisy")->required();
  synth->add_option("--frames", frames, "number of snapshots")->required()->check(CLI::Range(2, 1000000));
  synth->add_option("--seed", synth_seed, "rng seed (noisy scenario)");
  synth->add_option("--out", synth_out, "output manifest path");

  // compress
  auto* compress = app.add_subcommand("compress", "downsample a snapshot manifest");
  std::string comp_manifest, comp_method = "periodic", comp_out = "compressed";
  long comp_d = 1;
  double comp_alpha = 0.15;
  std::int64_t comp_max_len = 0;
  bool comp_no_final = false;
  RasterCli comp_raster;
  compress->add_option("--manifest", comp_manifest, "input manifest")->required();
  compress->add_option("--method", comp_method, "periodic | distance")->required();
  compress->add_option("--d", comp_d, "periodic downsampling factor");
  compress->add_option("--alpha", comp_alpha, "distance threshold");
  compress->add_option("--max-len", comp_max_len, "stop once this many samples are kept (0 = no cap)");
  compress->add_flag("--no-final", comp_no_final, "do not force-append the final snapshot");
  compress->add_option("--out", comp_out, "output directory");
  comp_raster.attach(compress);

  // interpolate
  auto* interp = app.add_subcommand("interpolate", "generate in-between regions from supports");
  std::string int_method, int_support, int_targets, int_cvae_config, int_out = "interpolated";
  std::uint64_t int_seed = 1;
  RasterCli int_raster;
  interp->add_option("--method", int_method, "shape | cvae")->required();
  interp->add_option("--support", int_support, "support manifest (e.g. compress output kept.csv)")->required();
  interp->add_option("--targets", int_targets, "manifest naming the frames to generate")->required();
  interp->add_option("--cvae-config", int_cvae_config, "training config JSON (cvae method)");
  interp->add_option("--seed", int_seed, "training seed when the config does not set one");
  interp->add_option("--out", int_out, "output directory");
  int_raster.attach(interp);

  // score
  auto* score = app.add_subcommand("score", "score predictions against ground truth");
  std::string score_pred, score_truth, score_hd_mode = "boundary", score_out = "scored";
  double score_hd_scale = 1.0;
  long score_tc_a = 1, score_tc_r = 10;
  int score_tc_n = 3;
  RasterCli score_raster;
  score->add_option("--pred", score_pred, "prediction manifest, or directory holding generated.csv")->required();
  score->add_option("--truth", score_truth, "ground-truth manifest")->required();
  score->add_option("--hd-mode", score_hd_mode, "boundary | vertex");
  score->add_option("--hd-scale", score_hd_scale, "multiply HD values (e.g. to footage resolution)");
  score->add_option("--tc-a", score_tc_a, "stride progression coefficient");
  score->add_option("--tc-r", score_tc_r, "stride progression ratio");
  score->add_option("--tc-n", score_tc_n, "stride progression terms");
  score->add_option("--out", score_out, "output directory");
  score_raster.attach(score);

  // run
  auto* run_cmd = app.add_subcommand("run", "execute a full experiment from a JSON config");
  std::string run_config;
  run_cmd->add_option("--config", run_config, "run config JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) return cmd_synth(scenario, frames, synth_seed, synth_out);
    if (compress->parsed())
      return cmd_compress(comp_manifest, comp_method, comp_d, comp_alpha, comp_max_len, comp_no_final,
                          comp_raster, comp_out);
    if (interp->parsed())
      return cmd_interpolate(int_method, int_support, int_targets, int_raster, int_cvae_config,
                             int_seed, int_out);
    if (score->parsed())
      return cmd_score(score_pred, score_truth, score_raster, score_hd_mode, score_hd_scale,
                       score_tc_a, score_tc_r, score_tc_n, score_out);
    if (run_cmd->parsed()) return cmd_run(run_config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
