#ifndef GVC_HARNESS_HPP_
#define GVC_HARNESS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "gvc/frame.hpp"
#include "gvc/metrics.hpp"
#include "gvc/pipeline.hpp"
#include "gvc/predictor.hpp"

namespace gvc {

// One rate-distortion-perception measurement.
struct RDPoint {
  std::string method = "gvc";
  std::string video_id;
  int quality = 0;
  double rho = 0.0;
  std::uint64_t seed = 0;
  double bpp = 0.0;
  double psnr_db = 0.0;     // mean over frames
  double perceptual = 0.0;  // mean over frames, metric units
  double frechet = 0.0;     // reconstruction set vs original set
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

struct SweepSpec {
  std::vector<int> qualities;
  std::vector<double> rhos;
  std::vector<std::uint64_t> seeds = {0};
  int cond_window = 2;
  int gen_window = 4;
  MetricSpec metric;
  FeatureConfig feature;
  int workers = 1;

  void validate() const;
};

// One encode/decode/measure cycle per (video, quality, rho, seed) cell.
// Cell failures land in the row's status; the sweep continues. Cells
// may run on spec.workers threads; row order is canonical regardless.
std::vector<RDPoint> rd_sweep(const std::vector<VideoSequence> &dataset,
                              const SweepSpec &spec,
                              const FramePredictor &predictor);

struct AggregateRow {
  int quality = 0;
  double rho = 0.0;
  int n = 0;  // ok rows aggregated
  double bpp_mean = 0.0, bpp_var = 0.0;
  double psnr_mean = 0.0, psnr_var = 0.0;
  double perceptual_mean = 0.0, perceptual_var = 0.0;
  double frechet_mean = 0.0, frechet_var = 0.0;
};

// Mean and sample variance (n-1) per (quality, rho) configuration, in
// sweep axis order.
std::vector<AggregateRow> aggregate_sweep(const std::vector<RDPoint> &points,
                                          const SweepSpec &spec);

void write_sweep_csv(const std::vector<RDPoint> &points,
                     const std::vector<AggregateRow> &aggregates,
                     const SweepSpec &spec, const std::string &path);

enum class Objective { kPerceptual, kFrechet, kPsnr };

// Non-dominated subset under (bpp down, objective down; PSNR up),
// ordered by bpp; exact ties are all kept. Rows must be ok and finite.
std::vector<RDPoint> pareto_front(const std::vector<RDPoint> &points,
                                  Objective objective);

// --- external codec baseline (optional, off by default) ------------------

struct BaselineResult {
  bool available = false;
  std::string notice;  // machine-readable marker when unavailable
  std::vector<RDPoint> points;
};

// Shells out to ffmpeg for H.264/H.265 CRF sweeps on the same metrics.
// codec_name is "h264" or "h265"; CRF values must lie in [0, 51]. A
// missing binary yields available=false and a "baseline-unavailable"
// notice, never fabricated rows.
BaselineResult external_codec_baseline(const VideoSequence &video,
                                       const std::vector<int> &crf_list,
                                       const std::string &codec_name,
                                       const MetricSpec &metric,
                                       const FeatureConfig &feature,
                                       const std::string &workdir);

// --- reporting ------------------------------------------------------------

enum class ReportFormat { kPointsCsv, kAggregateTable };

// kPointsCsv: one row per point, metric labels in the header.
// kAggregateTable: per-method mean and sample std (n-1), Table-style.
void write_report(const std::vector<RDPoint> &points, ReportFormat format,
                  const MetricSpec &metric, const FeatureConfig &feature,
                  const std::string &path);

// --- sweep config file ------------------------------------------------------

// Declarative key=value file mirroring SweepSpec, e.g.
//   dataset = data/
//   checkpoint = model.gvck
//   out = sweep.csv
//   qualities = 2,4,6
//   rhos = 0.02,0.05,0.1
//   seeds = 1
//   cond_window = 2
//   gen_window = 4
//   metric = perceptual-proxy(scales=3)
//   workers = 1
struct SweepFileConfig {
  std::string dataset_dir;
  std::string checkpoint;
  std::string out_csv = "sweep.csv";
  SweepSpec spec;
};

SweepFileConfig parse_sweep_config(const std::string &path);

// All .raw files (with .dims sidecars) in a directory, name-sorted.
std::vector<VideoSequence> load_dataset_dir(const std::string &dir,
                                            std::vector<std::string> *names);

// Point rows from a sweep or report CSV (aggregate rows are skipped).
std::vector<RDPoint> read_points_csv(const std::string &path);

}  // namespace gvc

#endif  // GVC_HARNESS_HPP_
