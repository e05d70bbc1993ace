#include "gvc/metrics.hpp"

#include <cmath>

#include "gvc/error.hpp"

namespace gvc {

namespace {

void check_same_shape(const Frame &a, const Frame &b) {
  if (!a.same_shape(b)) {
    throw DimensionError("metric inputs must share dimensions");
  }
}

// One channel as doubles in [0,1].
std::vector<double> channel_unit(const Frame &f, int c) {
  std::vector<double> out(static_cast<std::size_t>(f.height) * f.width);
  for (int y = 0; y < f.height; ++y) {
    for (int x = 0; x < f.width; ++x) {
      out[y * f.width + x] = f.at(c, y, x) / 255.0;
    }
  }
  return out;
}

// Channel-mean luma in [0,1].
std::vector<double> luma_unit(const Frame &f) {
  std::vector<double> out(static_cast<std::size_t>(f.height) * f.width, 0.0);
  for (int c = 0; c < f.channels; ++c) {
    for (int i = 0; i < f.height * f.width; ++i) {
      out[i] += f.samples[(std::size_t)c * f.height * f.width + i];
    }
  }
  for (double &v : out) {
    v /= 255.0 * f.channels;
  }
  return out;
}

struct Plane {
  int h = 0, w = 0;
  std::vector<double> v;
  double at(int y, int x) const { return v[y * w + x]; }
};

Plane downsample2(const Plane &p) {
  Plane out;
  out.h = p.h / 2;
  out.w = p.w / 2;
  out.v.resize(static_cast<std::size_t>(out.h) * out.w);
  for (int y = 0; y < out.h; ++y) {
    for (int x = 0; x < out.w; ++x) {
      out.v[y * out.w + x] = 0.25 * (p.at(2 * y, 2 * x) + p.at(2 * y, 2 * x + 1) +
                                     p.at(2 * y + 1, 2 * x) +
                                     p.at(2 * y + 1, 2 * x + 1));
    }
  }
  return out;
}

std::vector<double> gradient_magnitude(const Plane &p) {
  std::vector<double> mag(static_cast<std::size_t>(p.h - 1) * (p.w - 1));
  for (int y = 0; y + 1 < p.h; ++y) {
    for (int x = 0; x + 1 < p.w; ++x) {
      const double gx = p.at(y, x + 1) - p.at(y, x);
      const double gy = p.at(y + 1, x) - p.at(y, x);
      mag[y * (p.w - 1) + x] = std::sqrt(gx * gx + gy * gy);
    }
  }
  return mag;
}

// Gradient-magnitude similarity, 1 on identical planes.
double gradient_term(const Plane &a, const Plane &b) {
  constexpr double c1 = 1e-4;
  const std::vector<double> ma = gradient_magnitude(a);
  const std::vector<double> mb = gradient_magnitude(b);
  double sim = 0.0;
  for (std::size_t i = 0; i < ma.size(); ++i) {
    sim += (2.0 * ma[i] * mb[i] + c1) / (ma[i] * ma[i] + mb[i] * mb[i] + c1);
  }
  return 1.0 - sim / static_cast<double>(ma.size());
}

// SSIM-flavored local mean/contrast comparison over 4x4 tiles.
double structure_term(const Plane &a, const Plane &b) {
  constexpr double c2 = 1e-4;  // (0.01)^2
  constexpr double c3 = 9e-4;  // (0.03)^2
  constexpr int tile = 4;
  double sim = 0.0;
  int tiles = 0;
  for (int ty = 0; ty + tile <= a.h; ty += tile) {
    for (int tx = 0; tx + tile <= a.w; tx += tile) {
      double sa = 0, sb = 0, saa = 0, sbb = 0;
      for (int y = ty; y < ty + tile; ++y) {
        for (int x = tx; x < tx + tile; ++x) {
          sa += a.at(y, x);
          sb += b.at(y, x);
          saa += a.at(y, x) * a.at(y, x);
          sbb += b.at(y, x) * b.at(y, x);
        }
      }
      const double n = tile * tile;
      const double mua = sa / n, mub = sb / n;
      const double vara = std::max(0.0, saa / n - mua * mua);
      const double varb = std::max(0.0, sbb / n - mub * mub);
      const double sda = std::sqrt(vara), sdb = std::sqrt(varb);
      const double lum = (2.0 * mua * mub + c2) / (mua * mua + mub * mub + c2);
      const double con = (2.0 * sda * sdb + c3) / (vara + varb + c3);
      sim += lum * con;
      ++tiles;
    }
  }
  if (tiles == 0) return 0.0;
  return 1.0 - sim / tiles;
}

}  // namespace

double psnr(const Frame &a, const Frame &b) {
  check_same_shape(a, b);
  double sse = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double d = static_cast<double>(a.samples[i]) - b.samples[i];
    sse += d * d;
  }
  if (sse == 0.0) {
    return kPsnrCap;
  }
  const double mse = sse / static_cast<double>(a.samples.size());
  const double db = 10.0 * std::log10(255.0 * 255.0 / mse);
  return std::min(db, kPsnrCap);
}

double perceptual_distance(const Frame &a, const Frame &b,
                           const MetricSpec &spec) {
  check_same_shape(a, b);
  if (spec.scales < 1) {
    throw ValidationError("perceptual proxy needs at least one scale");
  }
  double total = 0.0;
  int terms = 0;
  for (int c = 0; c < a.channels; ++c) {
    Plane pa{a.height, a.width, channel_unit(a, c)};
    Plane pb{b.height, b.width, channel_unit(b, c)};
    for (int s = 0; s < spec.scales; ++s) {
      if (pa.h < 4 || pa.w < 4) break;
      total += 0.5 * gradient_term(pa, pb) + 0.5 * structure_term(pa, pb);
      ++terms;
      pa = downsample2(pa);
      pb = downsample2(pb);
    }
  }
  if (terms == 0) {
    throw ValidationError("frame too small for the perceptual proxy");
  }
  return total / terms;
}

double frame_distance(const Frame &a, const Frame &b, const MetricSpec &spec) {
  switch (spec.kind) {
    case MetricKind::kMeanAbs: {
      check_same_shape(a, b);
      double sum = 0.0;
      for (std::size_t i = 0; i < a.samples.size(); ++i) {
        sum += std::abs(static_cast<double>(a.samples[i]) - b.samples[i]);
      }
      return sum / (255.0 * static_cast<double>(a.samples.size()));
    }
    case MetricKind::kPsnrDistance:
      return (kPsnrCap - psnr(a, b)) / kPsnrCap;
    case MetricKind::kPerceptualProxy:
      return perceptual_distance(a, b, spec);
    case MetricKind::kExternal:
      if (!spec.external) {
        throw ValidationError("external metric not provided");
      }
      return spec.external(a, b);
  }
  throw ValidationError("unknown metric kind");
}

std::string metric_name(const MetricSpec &spec) {
  switch (spec.kind) {
    case MetricKind::kMeanAbs:
      return "mean-abs";
    case MetricKind::kPsnrDistance:
      return "psnr-distance";
    case MetricKind::kPerceptualProxy:
      return "perceptual-proxy(scales=" + std::to_string(spec.scales) + ")";
    case MetricKind::kExternal:
      return "external:" + spec.external_name;
  }
  return "unknown";
}

MetricSpec parse_metric_name(const std::string &name) {
  MetricSpec spec;
  if (name == "mean-abs") {
    spec.kind = MetricKind::kMeanAbs;
  } else if (name == "psnr-distance") {
    spec.kind = MetricKind::kPsnrDistance;
  } else if (name == "proxy" || name == "perceptual-proxy") {
    spec.kind = MetricKind::kPerceptualProxy;
  } else if (name.rfind("perceptual-proxy(scales=", 0) == 0) {
    spec.kind = MetricKind::kPerceptualProxy;
    spec.scales = std::stoi(name.substr(24));
  } else {
    throw ValidationError("unknown metric name: " + name);
  }
  return spec;
}

std::string FeatureConfig::name() const {
  return "frechet-pooled(grid=" + std::to_string(grid) +
         ",temporal=" + std::to_string(temporal ? 1 : 0) + ")";
}

std::vector<double> frame_features(const Frame &frame, const Frame *prev,
                                   const FeatureConfig &config) {
  if (config.grid < 1) {
    throw ValidationError("feature grid must be positive");
  }
  const std::vector<double> luma = luma_unit(frame);
  const Plane plane{frame.height, frame.width, luma};

  std::vector<double> feat;
  feat.reserve(config.dim());

  // Cell boundaries by integer splits.
  auto cell_edge = [&](int size, int i) { return size * i / config.grid; };

  for (int gy = 0; gy < config.grid; ++gy) {
    for (int gx = 0; gx < config.grid; ++gx) {
      double sum = 0.0;
      int n = 0;
      for (int y = cell_edge(frame.height, gy); y < cell_edge(frame.height, gy + 1); ++y) {
        for (int x = cell_edge(frame.width, gx); x < cell_edge(frame.width, gx + 1); ++x) {
          sum += plane.at(y, x);
          ++n;
        }
      }
      feat.push_back(n > 0 ? sum / n : 0.0);
    }
  }

  const std::vector<double> grad = gradient_magnitude(plane);
  const int gh = frame.height - 1, gw = frame.width - 1;
  for (int gy = 0; gy < config.grid; ++gy) {
    for (int gx = 0; gx < config.grid; ++gx) {
      double sum = 0.0;
      int n = 0;
      for (int y = cell_edge(gh, gy); y < cell_edge(gh, gy + 1); ++y) {
        for (int x = cell_edge(gw, gx); x < cell_edge(gw, gx + 1); ++x) {
          sum += grad[y * gw + x];
          ++n;
        }
      }
      feat.push_back(n > 0 ? sum / n : 0.0);
    }
  }

  double mean = 0.0;
  for (double v : luma) mean += v;
  mean /= luma.size();
  double var = 0.0;
  for (double v : luma) var += (v - mean) * (v - mean);
  feat.push_back(std::sqrt(var / luma.size()));

  if (config.temporal) {
    double diff = 0.0;
    if (prev != nullptr) {
      const std::vector<double> prev_luma = luma_unit(*prev);
      for (std::size_t i = 0; i < luma.size(); ++i) {
        diff += std::abs(luma[i] - prev_luma[i]);
      }
      diff /= luma.size();
    }
    feat.push_back(diff);
  }
  return feat;
}

FeatureSummary summarize_features(const std::vector<Frame> &frames,
                                  const FeatureConfig &config) {
  if (frames.empty()) {
    throw ValidationError("feature summary needs at least one frame");
  }
  const int d = config.dim();
  const int n = static_cast<int>(frames.size());

  Eigen::MatrixXd feats(n, d);
  for (int i = 0; i < n; ++i) {
    const Frame *prev = i > 0 ? &frames[i - 1] : nullptr;
    if (prev && !frames[i].same_shape(*prev)) {
      throw DimensionError("feature frames must share dimensions");
    }
    const std::vector<double> f = frame_features(frames[i], prev, config);
    for (int j = 0; j < d; ++j) feats(i, j) = f[j];
  }

  FeatureSummary s;
  s.count = n;
  s.mean = feats.colwise().mean();
  Eigen::MatrixXd centered = feats.rowwise() - s.mean.transpose();
  const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
  s.cov = (centered.transpose() * centered) / denom;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s.cov);
  const double min_eig = eig.eigenvalues().minCoeff();
  if (n < d + 1 || min_eig < 1e-10) {
    if (!config.allow_shrinkage) {
      throw Error("degenerate feature covariance (set too small or rank "
                  "deficient); enable shrinkage or supply more frames");
    }
    s.cov += 1e-6 * Eigen::MatrixXd::Identity(d, d);
  }
  return s;
}

double frechet_distance(const FeatureSummary &a, const FeatureSummary &b) {
  if (a.mean.size() != b.mean.size()) {
    throw DimensionError("feature summaries have different dimensions");
  }
  const Eigen::VectorXd dmu = a.mean - b.mean;

  // tr((S1 S2)^{1/2}) via the symmetrized product S1^{1/2} S2 S1^{1/2}.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_a(a.cov);
  Eigen::VectorXd root = eig_a.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Eigen::MatrixXd sqrt_a = eig_a.eigenvectors() * root.asDiagonal() *
                           eig_a.eigenvectors().transpose();
  Eigen::MatrixXd prod = sqrt_a * b.cov * sqrt_a;
  prod = 0.5 * (prod + prod.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_p(prod);
  const double tr_sqrt =
      eig_p.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();

  const double dist =
      dmu.squaredNorm() + a.cov.trace() + b.cov.trace() - 2.0 * tr_sqrt;
  return std::max(0.0, dist);
}

double frechet_feature_distance(const std::vector<Frame> &set_a,
                                const std::vector<Frame> &set_b,
                                const FeatureConfig &config) {
  return frechet_distance(summarize_features(set_a, config),
                          summarize_features(set_b, config));
}

}  // namespace gvc
