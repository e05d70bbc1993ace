#include "gvc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "gvc/container.hpp"
#include "gvc/error.hpp"
#include "gvc/raw_io.hpp"

namespace gvc {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// Status strings land in comma-separated files.
std::string sanitize(std::string s) {
  for (char &c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

double mean_of(const std::vector<double> &xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) /
         static_cast<double>(xs.size());
}

// Sample variance, n-1 denominator; 0 for singletons.
double sample_var(const std::vector<double> &xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(xs.size() - 1);
}

}  // namespace

void SweepSpec::validate() const {
  if (qualities.empty() || rhos.empty() || seeds.empty()) {
    throw ValidationError("sweep needs nonempty quality, rho and seed lists");
  }
  for (int q : qualities) {
    if (q < 0 || q > kMaxQuality) {
      throw ValidationError("sweep quality out of [0, 9]");
    }
  }
  for (double r : rhos) {
    if (std::isnan(r) || r < 0.0) {
      throw ValidationError("sweep rho must be >= 0 (or +inf)");
    }
  }
  if (cond_window < 1 || gen_window < 1 || workers < 1) {
    throw ValidationError("sweep windows and workers must be >= 1");
  }
}

namespace {

RDPoint run_cell(const VideoSequence &video, const std::string &video_id,
                 int quality, double rho, std::uint64_t seed,
                 const SweepSpec &spec, const FramePredictor &predictor) {
  RDPoint p;
  p.video_id = video_id;
  p.quality = quality;
  p.rho = rho;
  p.seed = seed;
  try {
    EncoderConfig cfg;
    cfg.cond_window = spec.cond_window;
    cfg.gen_window = spec.gen_window;
    cfg.rho = rho;
    cfg.quality = quality;
    cfg.seed = seed;
    cfg.metric = spec.metric;
    BlockDctCodec codec(CodecQuality{quality});

    EncodeResult enc = encode_video(video, cfg, codec, predictor);
    VideoSequence decoded = decode_video(enc.container, codec, predictor);
    if (!(decoded == enc.reconstruction)) {
      p.status = "error:decoder-divergence";
      return p;
    }

    p.bpp = bpp(enc.container);
    double psnr_sum = 0.0, perc_sum = 0.0;
    for (int i = 0; i < video.length(); ++i) {
      psnr_sum += psnr(decoded.frames[i], video.frames[i]);
      perc_sum += frame_distance(decoded.frames[i], video.frames[i],
                                 spec.metric);
    }
    p.psnr_db = psnr_sum / video.length();
    p.perceptual = perc_sum / video.length();
    p.frechet =
        frechet_feature_distance(decoded.frames, video.frames, spec.feature);
  } catch (const std::exception &e) {
    p.status = std::string("error:") + e.what();
  }
  return p;
}

}  // namespace

std::vector<RDPoint> rd_sweep(const std::vector<VideoSequence> &dataset,
                              const SweepSpec &spec,
                              const FramePredictor &predictor) {
  spec.validate();
  if (dataset.empty()) {
    throw ValidationError("sweep needs at least one video");
  }

  struct Cell {
    int video;
    int quality;
    double rho;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (int q : spec.qualities) {
    for (double rho : spec.rhos) {
      for (std::uint64_t seed : spec.seeds) {
        for (std::size_t v = 0; v < dataset.size(); ++v) {
          cells.push_back({static_cast<int>(v), q, rho, seed});
        }
      }
    }
  }

  std::vector<RDPoint> rows(cells.size());
  auto worker = [&](int worker_id) {
    for (std::size_t i = worker_id; i < cells.size(); i += spec.workers) {
      const Cell &c = cells[i];
      char vid[16];
      std::snprintf(vid, sizeof(vid), "v%03d", c.video);
      rows[i] = run_cell(dataset[c.video], vid, c.quality, c.rho, c.seed,
                         spec, predictor);
    }
  };
  if (spec.workers == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < spec.workers; ++w) {
      pool.emplace_back(worker, w);
    }
    for (std::thread &th : pool) {
      th.join();
    }
  }
  return rows;
}

std::vector<AggregateRow> aggregate_sweep(const std::vector<RDPoint> &points,
                                          const SweepSpec &spec) {
  std::vector<AggregateRow> rows;
  for (int q : spec.qualities) {
    for (double rho : spec.rhos) {
      std::vector<double> bpps, psnrs, percs, frechets;
      for (const RDPoint &p : points) {
        if (p.ok() && p.quality == q && p.rho == rho) {
          bpps.push_back(p.bpp);
          psnrs.push_back(p.psnr_db);
          percs.push_back(p.perceptual);
          frechets.push_back(p.frechet);
        }
      }
      AggregateRow a;
      a.quality = q;
      a.rho = rho;
      a.n = static_cast<int>(bpps.size());
      if (a.n > 0) {
        a.bpp_mean = mean_of(bpps);
        a.bpp_var = sample_var(bpps, a.bpp_mean);
        a.psnr_mean = mean_of(psnrs);
        a.psnr_var = sample_var(psnrs, a.psnr_mean);
        a.perceptual_mean = mean_of(percs);
        a.perceptual_var = sample_var(percs, a.perceptual_mean);
        a.frechet_mean = mean_of(frechets);
        a.frechet_var = sample_var(frechets, a.frechet_mean);
      }
      rows.push_back(a);
    }
  }
  return rows;
}

void write_sweep_csv(const std::vector<RDPoint> &points,
                     const std::vector<AggregateRow> &aggregates,
                     const SweepSpec &spec, const std::string &path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IoError("cannot open sweep csv for writing: " + path);
  }
  out << "# gvc-sweep codec=block-dct metric=" << metric_name(spec.metric)
      << " frechet=" << spec.feature.name() << "\n";
  out << "row,method,video,quality,rho,seed,n,bpp,psnr_db,perceptual,"
         "frechet,bpp_var,psnr_var,perceptual_var,frechet_var,status\n";
  for (const RDPoint &p : points) {
    out << "point," << p.method << "," << p.video_id << "," << p.quality
        << "," << fmt_double(p.rho) << "," << p.seed << ",1,"
        << fmt_double(p.bpp) << "," << fmt_double(p.psnr_db) << ","
        << fmt_double(p.perceptual) << "," << fmt_double(p.frechet)
        << ",,,,," << sanitize(p.status) << "\n";
  }
  for (const AggregateRow &a : aggregates) {
    out << "aggregate,gvc,ALL," << a.quality << "," << fmt_double(a.rho)
        << ",," << a.n << "," << fmt_double(a.bpp_mean) << ","
        << fmt_double(a.psnr_mean) << "," << fmt_double(a.perceptual_mean)
        << "," << fmt_double(a.frechet_mean) << "," << fmt_double(a.bpp_var)
        << "," << fmt_double(a.psnr_var) << ","
        << fmt_double(a.perceptual_var) << "," << fmt_double(a.frechet_var)
        << ",ok\n";
  }
  if (!out) {
    throw IoError("sweep csv write failed: " + path);
  }
}

std::vector<RDPoint> pareto_front(const std::vector<RDPoint> &points,
                                  Objective objective) {
  if (points.empty()) {
    throw ValidationError("pareto front needs at least one point");
  }
  auto metric_of = [objective](const RDPoint &p) {
    switch (objective) {
      case Objective::kPerceptual:
        return p.perceptual;
      case Objective::kFrechet:
        return p.frechet;
      case Objective::kPsnr:
        return -p.psnr_db;  // maximize PSNR
    }
    return 0.0;
  };
  for (const RDPoint &p : points) {
    if (!p.ok() || !std::isfinite(p.bpp) || !std::isfinite(metric_of(p))) {
      throw ValidationError("pareto front needs ok rows with finite fields");
    }
  }

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (points[a].bpp != points[b].bpp) {
                       return points[a].bpp < points[b].bpp;
                     }
                     return metric_of(points[a]) < metric_of(points[b]);
                   });

  // Sweep in bpp order: a point survives when its objective strictly
  // improves on everything cheaper, or exactly ties the incumbent in
  // both axes.
  std::vector<RDPoint> front;
  double best_metric = std::numeric_limits<double>::infinity();
  double best_bpp = std::numeric_limits<double>::infinity();
  for (std::size_t idx : order) {
    const double m = metric_of(points[idx]);
    const double b = points[idx].bpp;
    if (m < best_metric) {
      best_metric = m;
      best_bpp = b;
      front.push_back(points[idx]);
    } else if (m == best_metric && b == best_bpp) {
      front.push_back(points[idx]);
    }
  }
  return front;
}

namespace {

bool command_ok(const std::string &cmd) {
  const int rc = std::system((cmd + " > /dev/null 2>&1").c_str());
  return rc == 0;
}

// Planar temp dump in the plane order ffmpeg expects (gbrp for RGB).
void write_ffmpeg_raw(const VideoSequence &video, const std::string &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot write temp raw: " + path);
  }
  const int plane = video.height() * video.width();
  for (const Frame &f : video.frames) {
    if (video.channels() == 1) {
      out.write(reinterpret_cast<const char *>(f.samples.data()), plane);
    } else {
      static constexpr int kGbr[3] = {1, 2, 0};
      for (int p : kGbr) {
        out.write(reinterpret_cast<const char *>(f.samples.data() +
                                                 (std::size_t)p * plane),
                  plane);
      }
    }
  }
}

VideoSequence read_ffmpeg_raw(const std::string &path, int t, int h, int w,
                              int c) {
  VideoSequence video = load_raw_video(path, h, w, c, t);
  if (c == 3) {
    const int plane = h * w;
    for (Frame &f : video.frames) {
      Frame rgb(h, w, 3);
      static constexpr int kFromGbr[3] = {2, 0, 1};  // gbr -> rgb
      for (int p = 0; p < 3; ++p) {
        std::copy(f.samples.begin() + (std::size_t)p * plane,
                  f.samples.begin() + (std::size_t)(p + 1) * plane,
                  rgb.samples.begin() + (std::size_t)kFromGbr[p] * plane);
      }
      f = std::move(rgb);
    }
  }
  return video;
}

}  // namespace

BaselineResult external_codec_baseline(const VideoSequence &video,
                                       const std::vector<int> &crf_list,
                                       const std::string &codec_name,
                                       const MetricSpec &metric,
                                       const FeatureConfig &feature,
                                       const std::string &workdir) {
  for (int crf : crf_list) {
    if (crf < 0 || crf > 51) {
      throw ValidationError("CRF " + std::to_string(crf) +
                            " outside [0, 51]");
    }
  }
  std::string encoder;
  if (codec_name == "h264") {
    encoder = "libx264";
  } else if (codec_name == "h265") {
    encoder = "libx265";
  } else {
    throw ValidationError("unknown baseline codec: " + codec_name);
  }

  BaselineResult result;
  if (!command_ok("ffmpeg -version")) {
    result.available = false;
    result.notice = "baseline-unavailable codec=" + codec_name +
                    " reason=ffmpeg-not-found";
    return result;
  }
  result.available = true;

  video.validate();
  const int t = video.length(), h = video.height(), w = video.width(),
            c = video.channels();
  const std::string pix_fmt = c == 1 ? "gray" : "gbrp";
  namespace fs = std::filesystem;
  fs::create_directories(workdir);
  const std::string in_raw = workdir + "/baseline_in.raw";
  write_ffmpeg_raw(video, in_raw);

  char size[32];
  std::snprintf(size, sizeof(size), "%dx%d", w, h);

  for (int crf : crf_list) {
    RDPoint p;
    p.method = codec_name;
    p.video_id = "v000";
    p.quality = crf;
    p.seed = 0;
    const std::string coded = workdir + "/baseline_" + std::to_string(crf) +
                              ".mkv";
    const std::string dec_raw = workdir + "/baseline_" +
                                std::to_string(crf) + ".dec.raw";
    std::ostringstream enc_cmd;
    enc_cmd << "ffmpeg -y -loglevel error -f rawvideo -pix_fmt " << pix_fmt
            << " -s " << size << " -r 25 -i " << in_raw << " -c:v " << encoder
            << " -crf " << crf << " -pix_fmt " << pix_fmt << " " << coded;
    std::ostringstream dec_cmd;
    dec_cmd << "ffmpeg -y -loglevel error -i " << coded
            << " -f rawvideo -pix_fmt " << pix_fmt << " " << dec_raw;
    try {
      if (!command_ok(enc_cmd.str())) {
        p.status = "error:encode-failed";
        result.points.push_back(p);
        continue;
      }
      if (!command_ok(dec_cmd.str())) {
        p.status = "error:decode-failed";
        result.points.push_back(p);
        continue;
      }
      const VideoSequence decoded = read_ffmpeg_raw(dec_raw, t, h, w, c);
      p.bpp = 8.0 * static_cast<double>(fs::file_size(coded)) /
              (static_cast<double>(t) * h * w);
      double psnr_sum = 0.0, perc_sum = 0.0;
      for (int i = 0; i < t; ++i) {
        psnr_sum += psnr(decoded.frames[i], video.frames[i]);
        perc_sum += frame_distance(decoded.frames[i], video.frames[i], metric);
      }
      p.psnr_db = psnr_sum / t;
      p.perceptual = perc_sum / t;
      p.frechet = frechet_feature_distance(decoded.frames, video.frames,
                                           feature);
    } catch (const std::exception &e) {
      p.status = std::string("error:") + e.what();
    }
    result.points.push_back(p);
  }
  return result;
}

void write_report(const std::vector<RDPoint> &points, ReportFormat format,
                  const MetricSpec &metric, const FeatureConfig &feature,
                  const std::string &path) {
  if (points.empty()) {
    throw ValidationError("report needs at least one point");
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IoError("cannot open report for writing: " + path);
  }
  out << "# gvc-report metric=" << metric_name(metric)
      << " frechet=" << feature.name() << "\n";
  if (format == ReportFormat::kPointsCsv) {
    out << "method,video,quality,rho,seed,bpp,psnr_db,perceptual,frechet,"
           "status\n";
    for (const RDPoint &p : points) {
      out << p.method << "," << p.video_id << "," << p.quality << ","
          << fmt_double(p.rho) << "," << p.seed << "," << fmt_double(p.bpp)
          << "," << fmt_double(p.psnr_db) << "," << fmt_double(p.perceptual)
          << "," << fmt_double(p.frechet) << "," << sanitize(p.status) << "\n";
    }
  } else {
    out << "method,n,bpp_mean,bpp_std,psnr_mean,psnr_std,perceptual_mean,"
           "perceptual_std,frechet_mean,frechet_std\n";
    std::vector<std::string> methods;
    for (const RDPoint &p : points) {
      if (p.ok() &&
          std::find(methods.begin(), methods.end(), p.method) ==
              methods.end()) {
        methods.push_back(p.method);
      }
    }
    for (const std::string &method : methods) {
      std::vector<double> bpps, psnrs, percs, frechets;
      for (const RDPoint &p : points) {
        if (p.ok() && p.method == method) {
          bpps.push_back(p.bpp);
          psnrs.push_back(p.psnr_db);
          percs.push_back(p.perceptual);
          frechets.push_back(p.frechet);
        }
      }
      auto put = [&](const std::vector<double> &xs) {
        const double m = mean_of(xs);
        out << "," << fmt_double(m) << ","
            << fmt_double(std::sqrt(sample_var(xs, m)));
      };
      out << method << "," << bpps.size();
      put(bpps);
      put(psnrs);
      put(percs);
      put(frechets);
      out << "\n";
    }
  }
  if (!out) {
    throw IoError("report write failed: " + path);
  }
}

namespace {

std::string trim(const std::string &s) {
  const std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

SweepFileConfig parse_sweep_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open sweep config: " + path);
  }
  SweepFileConfig cfg;
  cfg.spec.qualities.clear();
  cfg.spec.rhos.clear();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("sweep config line " + std::to_string(line_no) +
                            " is not key = value");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key == "dataset") {
      cfg.dataset_dir = value;
    } else if (key == "checkpoint") {
      cfg.checkpoint = value;
    } else if (key == "out") {
      cfg.out_csv = value;
    } else if (key == "qualities") {
      for (const std::string &v : split_list(value)) {
        cfg.spec.qualities.push_back(std::stoi(v));
      }
    } else if (key == "rhos") {
      for (const std::string &v : split_list(value)) {
        cfg.spec.rhos.push_back(v == "inf"
                                    ? std::numeric_limits<double>::infinity()
                                    : std::stod(v));
      }
    } else if (key == "seeds") {
      cfg.spec.seeds.clear();
      for (const std::string &v : split_list(value)) {
        cfg.spec.seeds.push_back(std::stoull(v));
      }
    } else if (key == "cond_window") {
      cfg.spec.cond_window = std::stoi(value);
    } else if (key == "gen_window") {
      cfg.spec.gen_window = std::stoi(value);
    } else if (key == "metric") {
      cfg.spec.metric = parse_metric_name(value);
    } else if (key == "workers") {
      cfg.spec.workers = std::stoi(value);
    } else {
      throw ValidationError("unknown sweep config key: " + key);
    }
  }
  return cfg;
}

std::vector<RDPoint> read_points_csv(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open points csv: " + path);
  }
  std::vector<RDPoint> points;
  std::vector<std::string> header;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      fields.push_back(field);
    }
    // split drops a trailing empty field
    if (!line.empty() && line.back() == ',') fields.push_back("");
    if (header.empty()) {
      header = fields;
      continue;
    }
    if (fields.size() < header.size()) {
      fields.resize(header.size());
    }
    auto col = [&](const std::string &name) -> const std::string & {
      static const std::string kEmpty;
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return fields[i];
      }
      return kEmpty;
    };
    const std::string &row_type = col("row");
    if (!row_type.empty() && row_type != "point") continue;
    RDPoint p;
    if (!col("method").empty()) p.method = col("method");
    p.video_id = col("video");
    if (!col("quality").empty()) p.quality = std::stoi(col("quality"));
    if (!col("rho").empty()) {
      p.rho = col("rho") == "inf" ? std::numeric_limits<double>::infinity()
                                  : std::stod(col("rho"));
    }
    if (!col("seed").empty()) p.seed = std::stoull(col("seed"));
    if (!col("bpp").empty()) p.bpp = std::stod(col("bpp"));
    if (!col("psnr_db").empty()) p.psnr_db = std::stod(col("psnr_db"));
    if (!col("perceptual").empty()) p.perceptual = std::stod(col("perceptual"));
    if (!col("frechet").empty()) p.frechet = std::stod(col("frechet"));
    if (!col("status").empty()) p.status = col("status");
    points.push_back(std::move(p));
  }
  return points;
}

std::vector<VideoSequence> load_dataset_dir(const std::string &dir,
                                            std::vector<std::string> *names) {
  namespace fs = std::filesystem;
  std::vector<std::string> paths;
  for (const auto &entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".raw") {
      paths.push_back(entry.path().string());
    }
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) {
    throw IoError("no .raw videos found in " + dir);
  }
  std::vector<VideoSequence> videos;
  for (const std::string &p : paths) {
    videos.push_back(load_raw_video(p));
    if (names != nullptr) {
      names->push_back(fs::path(p).stem().string());
    }
  }
  return videos;
}

}  // namespace gvc
