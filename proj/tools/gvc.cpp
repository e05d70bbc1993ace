// Command-line front end: dataset synthesis, training, encode/decode/
// verify, rate-distortion sweeps, Pareto selection, external baselines
// and report emission.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <memory>

#include "gvc/container.hpp"
#include "gvc/error.hpp"
#include "gvc/harness.hpp"
#include "gvc/intra_codec.hpp"
#include "gvc/metrics.hpp"
#include "gvc/pipeline.hpp"
#include "gvc/raw_io.hpp"
#include "gvc/synth.hpp"
#include "gvc/train.hpp"

namespace {

struct DimsOpt {
  int t = 0, h = 0, w = 0, c = 0;
  bool set = false;
};

gvc::VideoSequence load_input(const std::string &path, const DimsOpt &dims) {
  if (dims.set) {
    return gvc::load_raw_video(path, dims.h, dims.w, dims.c, dims.t);
  }
  return gvc::load_raw_video(path);
}

double parse_rho(const std::string &value) {
  if (value == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  return std::stod(value);
}

// Either the checkpointed diffusion model or the repeat-last stub.
std::unique_ptr<gvc::FramePredictor> make_predictor(
    const std::string &checkpoint, bool stub, int stub_cond) {
  if (stub) {
    return std::make_unique<gvc::RepeatLastPredictor>(stub_cond);
  }
  if (checkpoint.empty()) {
    throw gvc::ValidationError(
        "need --checkpoint (or --stub-predictor for testing)");
  }
  gvc::Checkpoint ck = gvc::load_checkpoint(checkpoint);
  return std::make_unique<gvc::DiffusionPredictor>(std::move(ck.net),
                                                   ck.config);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"gvc - generative-predictive video codec toolkit"};
  app.require_subcommand(1);

  // ---- gen-data ----
  auto *gen = app.add_subcommand("gen-data", "synthesize moving-shape videos");
  std::string gen_out = "data";
  int gen_videos = 8, gen_frames = 20, gen_h = 16, gen_w = 16, gen_objects = 1,
      gen_vmin = 1, gen_vmax = 2, gen_channels = 1;
  std::uint64_t gen_seed = 1;
  gen->add_option("--out", gen_out, "output directory");
  gen->add_option("--videos", gen_videos);
  gen->add_option("--frames", gen_frames);
  gen->add_option("--height", gen_h);
  gen->add_option("--width", gen_w);
  gen->add_option("--objects", gen_objects);
  gen->add_option("--vmin", gen_vmin);
  gen->add_option("--vmax", gen_vmax);
  gen->add_option("--channels", gen_channels);
  gen->add_option("--seed", gen_seed);

  // ---- train ----
  auto *train = app.add_subcommand("train", "train the diffusion predictor");
  std::string train_data, train_out = "model.gvck", train_loss_csv;
  int train_epochs = 20;
  std::uint64_t train_seed = 1;
  gvc::PredictorConfig pc;
  gvc::AdamConfig adam;
  train->add_option("--data", train_data, "dataset directory")->required();
  train->add_option("--out", train_out, "checkpoint path");
  train->add_option("--epochs", train_epochs);
  train->add_option("--seed", train_seed);
  train->add_option("--ncond", pc.cond_frames);
  train->add_option("--jmodel", pc.out_frames);
  train->add_option("--tdiff", pc.t_diff);
  train->add_option("--beta-start", pc.beta_start);
  train->add_option("--beta-end", pc.beta_end);
  train->add_option("--height", pc.height);
  train->add_option("--width", pc.width);
  train->add_option("--channels", pc.channels);
  train->add_option("--hidden", pc.hidden);
  train->add_option("--lr", adam.lr);
  train->add_option("--batch", adam.batch_size);
  train->add_option("--loss-csv", train_loss_csv);

  // ---- encode ----
  auto *enc = app.add_subcommand("encode", "sequential generative encode");
  std::string enc_input, enc_out = "out.gvc", enc_checkpoint, enc_metric =
      "perceptual-proxy(scales=3)", enc_rho = "0.05", enc_trace;
  DimsOpt enc_dims;
  bool enc_stub = false;
  gvc::EncoderConfig ec;
  enc->add_option("--input", enc_input, "raw video")->required();
  enc->add_option("--dims", [&enc_dims](CLI::results_t res) {
        return std::sscanf(res[0].c_str(), "%d,%d,%d,%d", &enc_dims.t,
                           &enc_dims.h, &enc_dims.w, &enc_dims.c) == 4 &&
               (enc_dims.set = true);
      }, "T,H,W,C of the raw input (else from the .dims sidecar)");
  enc->add_option("--rho", enc_rho, "threshold, or 'inf'");
  enc->add_option("--quality", ec.quality);
  enc->add_option("--ncond", ec.cond_window);
  enc->add_option("--jwindow", ec.gen_window);
  enc->add_option("--seed", ec.seed);
  enc->add_option("--checkpoint", enc_checkpoint);
  enc->add_option("--metric", enc_metric);
  enc->add_option("--out", enc_out);
  enc->add_option("--trace", enc_trace, "also write the decision trace CSV");
  enc->add_flag("--stub-predictor", enc_stub,
                "use the repeat-last stub instead of a checkpoint");

  // ---- decode ----
  auto *dec = app.add_subcommand("decode", "regenerate a video");
  std::string dec_in, dec_out = "decoded.raw", dec_checkpoint;
  bool dec_stub = false;
  dec->add_option("--in", dec_in)->required();
  dec->add_option("--checkpoint", dec_checkpoint);
  dec->add_option("--out", dec_out);
  dec->add_flag("--stub-predictor", dec_stub);

  // ---- verify ----
  auto *ver = app.add_subcommand("verify",
                                 "re-check the threshold guarantee");
  std::string ver_in, ver_orig, ver_checkpoint, ver_metric =
      "perceptual-proxy(scales=3)", ver_rho;
  bool ver_stub = false;
  ver->add_option("--in", ver_in)->required();
  ver->add_option("--orig", ver_orig)->required();
  ver->add_option("--checkpoint", ver_checkpoint);
  ver->add_option("--metric", ver_metric);
  ver->add_option("--rho", ver_rho, "override the container threshold");
  ver->add_flag("--stub-predictor", ver_stub);

  // ---- sweep ----
  auto *sweep = app.add_subcommand("sweep", "rate-distortion grid sweep");
  std::string sweep_config;
  sweep->add_option("--config", sweep_config, "declarative sweep file")
      ->required();

  // ---- pareto ----
  auto *pareto = app.add_subcommand("pareto", "non-dominated subset");
  std::string par_in, par_out = "pareto.csv", par_objective = "perceptual";
  pareto->add_option("--in", par_in)->required();
  pareto->add_option("--objective", par_objective,
                     "perceptual | frechet | psnr");
  pareto->add_option("--out", par_out);

  // ---- baseline ----
  auto *base = app.add_subcommand("baseline", "external codec CRF sweep");
  std::string base_input, base_codec = "h264", base_out = "baseline.csv",
      base_metric = "perceptual-proxy(scales=3)", base_workdir = ".gvc-tmp";
  std::vector<int> base_crfs;
  DimsOpt base_dims;
  base->add_option("--input", base_input)->required();
  base->add_option("--codec", base_codec, "h264 | h265");
  base->add_option("--crf", base_crfs, "CRF values in [0,51]")->required();
  base->add_option("--metric", base_metric);
  base->add_option("--workdir", base_workdir);
  base->add_option("--out", base_out);

  // ---- report ----
  auto *rep = app.add_subcommand("report", "points CSV or aggregate table");
  std::string rep_in, rep_out = "report.csv", rep_format = "points",
      rep_metric = "perceptual-proxy(scales=3)";
  rep->add_option("--in", rep_in)->required();
  rep->add_option("--format", rep_format, "points | table");
  rep->add_option("--metric", rep_metric, "metric label for the header");
  rep->add_option("--out", rep_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      auto videos = gvc::synth_dataset(gen_videos, gen_frames, gen_h, gen_w,
                                       gen_objects, {gen_vmin, gen_vmax},
                                       gen_seed, gen_channels);
      std::filesystem::create_directories(gen_out);
      for (std::size_t i = 0; i < videos.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "/video_%03zu.raw", i);
        gvc::write_raw_video(videos[i], gen_out + name);
      }
      std::cout << "wrote " << videos.size() << " videos to " << gen_out
                << "\n";
    } else if (*train) {
      auto dataset = gvc::load_dataset_dir(train_data, nullptr);
      gvc::TrainResult result =
          gvc::train_predictor(dataset, pc, train_epochs, train_seed, adam);
      gvc::save_checkpoint(train_out, pc, result.net);
      if (!train_loss_csv.empty()) {
        gvc::write_loss_curve_csv(result.epoch_losses, train_loss_csv);
      }
      std::cout << "trained " << train_epochs << " epochs, loss "
                << result.epoch_losses.front() << " -> "
                << result.epoch_losses.back() << ", checkpoint " << train_out
                << "\n";
    } else if (*enc) {
      gvc::VideoSequence video = load_input(enc_input, enc_dims);
      ec.rho = parse_rho(enc_rho);
      ec.metric = gvc::parse_metric_name(enc_metric);
      auto predictor = make_predictor(enc_checkpoint, enc_stub, ec.cond_window);
      gvc::BlockDctCodec codec(gvc::CodecQuality{ec.quality});
      gvc::EncodeResult result = gvc::encode_video(video, ec, codec,
                                                   *predictor);
      gvc::write_container_file(result.container, enc_out);
      if (!enc_trace.empty()) {
        gvc::write_trace_csv(result.trace, enc_trace);
      }
      int generated = 0;
      for (const auto &e : result.trace.entries) {
        generated += e.decision == gvc::Decision::kGenerated ? 1 : 0;
      }
      std::cout << "encoded " << video.length() << " frames ("
                << generated << " generated), bpp "
                << gvc::bpp(result.container) << ", wrote " << enc_out << "\n";
    } else if (*dec) {
      gvc::EncodedContainer container = gvc::read_container_file(dec_in);
      auto predictor = make_predictor(dec_checkpoint, dec_stub,
                                      static_cast<int>(container.cond_window));
      gvc::BlockDctCodec codec(gvc::CodecQuality{gvc::kMaxQuality});
      gvc::VideoSequence video = gvc::decode_video(container, codec,
                                                   *predictor);
      gvc::write_raw_video(video, dec_out);
      std::cout << "decoded " << video.length() << " frames to " << dec_out
                << "\n";
    } else if (*ver) {
      gvc::EncodedContainer container = gvc::read_container_file(ver_in);
      auto predictor = make_predictor(ver_checkpoint, ver_stub,
                                      static_cast<int>(container.cond_window));
      gvc::BlockDctCodec codec(gvc::CodecQuality{gvc::kMaxQuality});
      gvc::VideoSequence recon = gvc::decode_video(container, codec,
                                                   *predictor);
      gvc::VideoSequence orig = gvc::load_raw_video(ver_orig);
      // Rebuild the generated/intra split from the record layout.
      gvc::EncodeTrace trace;
      int frame = 0;
      for (const auto &rec : container.records) {
        for (std::uint32_t i = 0; i < rec.count; ++i, ++frame) {
          trace.entries.push_back({frame,
                                   rec.kind == gvc::kRecordGenerated
                                       ? gvc::Decision::kGenerated
                                       : gvc::Decision::kIntra,
                                   NAN, 0});
        }
      }
      const double rho = ver_rho.empty()
                             ? gvc::rho_from_fixed(container.threshold_fp)
                             : parse_rho(ver_rho);
      gvc::VerifyReport report = gvc::verify_threshold(
          trace, recon, orig, gvc::parse_metric_name(ver_metric), rho);
      std::cout << report.summary() << "\n";
      return report.passed() ? 0 : 1;
    } else if (*sweep) {
      gvc::SweepFileConfig cfg = gvc::parse_sweep_config(sweep_config);
      auto dataset = gvc::load_dataset_dir(cfg.dataset_dir, nullptr);
      auto predictor = make_predictor(cfg.checkpoint, cfg.checkpoint.empty(),
                                      cfg.spec.cond_window);
      auto points = gvc::rd_sweep(dataset, cfg.spec, *predictor);
      auto aggregates = gvc::aggregate_sweep(points, cfg.spec);
      gvc::write_sweep_csv(points, aggregates, cfg.spec, cfg.out_csv);
      std::cout << "swept " << points.size() << " cells ("
                << aggregates.size() << " configurations) to " << cfg.out_csv
                << "\n";
    } else if (*pareto) {
      auto points = gvc::read_points_csv(par_in);
      std::vector<gvc::RDPoint> ok_points;
      for (auto &p : points) {
        if (p.ok()) ok_points.push_back(std::move(p));
      }
      gvc::Objective objective = gvc::Objective::kPerceptual;
      if (par_objective == "frechet") {
        objective = gvc::Objective::kFrechet;
      } else if (par_objective == "psnr") {
        objective = gvc::Objective::kPsnr;
      } else if (par_objective != "perceptual") {
        throw gvc::ValidationError("unknown objective: " + par_objective);
      }
      auto front = gvc::pareto_front(ok_points, objective);
      gvc::write_report(front, gvc::ReportFormat::kPointsCsv,
                        gvc::MetricSpec{}, gvc::FeatureConfig{}, par_out);
      std::cout << front.size() << " of " << ok_points.size()
                << " points on the front, wrote " << par_out << "\n";
    } else if (*base) {
      gvc::VideoSequence video = load_input(base_input, base_dims);
      gvc::BaselineResult result = gvc::external_codec_baseline(
          video, base_crfs, base_codec, gvc::parse_metric_name(base_metric),
          gvc::FeatureConfig{}, base_workdir);
      if (!result.available) {
        std::cout << result.notice << "\n";
        return 0;
      }
      gvc::write_report(result.points, gvc::ReportFormat::kPointsCsv,
                        gvc::parse_metric_name(base_metric),
                        gvc::FeatureConfig{}, base_out);
      std::cout << "baseline " << base_codec << ": " << result.points.size()
                << " CRF points, wrote " << base_out << "\n";
    } else if (*rep) {
      auto points = gvc::read_points_csv(rep_in);
      const gvc::ReportFormat format = rep_format == "table"
                                           ? gvc::ReportFormat::kAggregateTable
                                           : gvc::ReportFormat::kPointsCsv;
      gvc::write_report(points, format, gvc::parse_metric_name(rep_metric),
                        gvc::FeatureConfig{}, rep_out);
      std::cout << "wrote " << rep_out << "\n";
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
