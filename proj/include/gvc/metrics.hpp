#ifndef GVC_METRICS_HPP_
#define GVC_METRICS_HPP_

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "gvc/frame.hpp"

namespace gvc {

// PSNR in dB over all samples, 10*log10(255^2 / MSE), capped at the
// reporting ceiling of 99 dB (identical frames report exactly 99).
inline constexpr double kPsnrCap = 99.0;
double psnr(const Frame &a, const Frame &b);

enum class MetricKind {
  kMeanAbs,          // mean |a-b| / 255
  kPsnrDistance,     // (99 - psnr) / 99
  kPerceptualProxy,  // multi-scale gradient + local-structure distance
  kExternal,
};

// The thresholding metric D behind the encoder. All kinds satisfy
// D(a,a) = 0, D(a,b) = D(b,a) >= 0. The perceptual proxy is a
// deterministic stand-in for learned metrics; its values live in [0,~1]
// and are not numerically comparable to LPIPS.
struct MetricSpec {
  MetricKind kind = MetricKind::kPerceptualProxy;
  int scales = 3;  // perceptual proxy pyramid depth
  std::function<double(const Frame &, const Frame &)> external;
  std::string external_name;
};

double perceptual_distance(const Frame &a, const Frame &b,
                           const MetricSpec &spec);
double frame_distance(const Frame &a, const Frame &b, const MetricSpec &spec);

// Self-describing name, e.g. "perceptual-proxy(scales=3)". Serialized
// into result CSV headers.
std::string metric_name(const MetricSpec &spec);

MetricSpec parse_metric_name(const std::string &name);

// --- Frechet feature distance -------------------------------------------
//
// Desk-scale stand-in for learned video distances: Gaussian statistics
// of handcrafted pooled features, compared with the 2-Wasserstein
// (Frechet) distance |mu1-mu2|^2 + tr(S1 + S2 - 2 (S1 S2)^{1/2}).

struct FeatureConfig {
  int grid = 3;               // pooling grid, grid x grid cells
  bool temporal = true;       // include frame-difference feature
  bool allow_shrinkage = true;
  // dimension: 2*grid^2 + 1 (+1 when temporal)
  int dim() const { return 2 * grid * grid + 1 + (temporal ? 1 : 0); }
  std::string name() const;
};

struct FeatureSummary {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;  // sample covariance (n-1), symmetric PSD
  int count = 0;
};

// Pooled feature vector of one frame; prev may be null (first frame).
std::vector<double> frame_features(const Frame &frame, const Frame *prev,
                                   const FeatureConfig &config);

FeatureSummary summarize_features(const std::vector<Frame> &frames,
                                  const FeatureConfig &config);

double frechet_distance(const FeatureSummary &a, const FeatureSummary &b);

double frechet_feature_distance(const std::vector<Frame> &set_a,
                                const std::vector<Frame> &set_b,
                                const FeatureConfig &config);

}  // namespace gvc

#endif  // GVC_METRICS_HPP_
