#ifndef GVC_DENOISER_HPP_
#define GVC_DENOISER_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace gvc {

// Dense CHW tensor of doubles.
struct Tensor {
  int c = 0, h = 0, w = 0;
  std::vector<double> v;

  Tensor() = default;
  Tensor(int c, int h, int w)
      : c(c), h(h), w(w), v(static_cast<std::size_t>(c) * h * w, 0.0) {}

  std::size_t size() const { return v.size(); }
  double &at(int ci, int y, int x) {
    return v[(static_cast<std::size_t>(ci) * h + y) * w + x];
  }
  double at(int ci, int y, int x) const {
    return v[(static_cast<std::size_t>(ci) * h + y) * w + x];
  }
};

struct NetConfig {
  int x_channels = 1;  // noisy target planes per call
  int y_channels = 2;  // conditioning planes
  int hidden = 32;     // F
  int emb_dim = 32;    // timestep embedding width, even
  int height = 16;     // spatial dims, divisible by 2
  int width = 16;

  bool operator==(const NetConfig &other) const = default;
};

struct ParamShape {
  std::string name;
  std::vector<int> dims;
  std::size_t offset = 0;
  std::size_t count = 0;
};

std::vector<double> timestep_embedding(int t, int dim);

// Conditional epsilon-prediction network: a two-level U-Net. The noisy
// target x and the conditioning y are concatenated on channels; the
// sinusoidal timestep embedding enters as a learned per-channel bias
// after the first convolution. SiLU activations keep the loss surface
// smooth, which the finite-difference gradient checks rely on.
//
//   concat(x,y) -> conv1(+t) -> conv2 -> pool2 -> conv3 -> conv4
//   -> up2 -> concat(skip) -> conv5 -> conv6 -> eps_hat
class Denoiser {
 public:
  explicit Denoiser(const NetConfig &config);

  const NetConfig &config() const { return config_; }
  const std::vector<ParamShape> &shapes() const { return shapes_; }
  std::size_t num_params() const { return params_.size(); }
  std::vector<double> &params() { return params_; }
  const std::vector<double> &params() const { return params_; }

  // He-style init, deterministic in the seed. The output convolution
  // starts at zero, so a fresh net predicts eps = 0.
  void init_weights(std::uint64_t seed);

  // Forward activations kept for the backward pass.
  struct Cache {
    Tensor in, h1, a1, h2, a2, p, h3, a3, h4, a4, u, cat, h5, a5;
    std::vector<double> emb;
  };

  Tensor forward(const Tensor &x, const Tensor &y, int t,
                 Cache *cache = nullptr) const;
  // Accumulates parameter gradients of sum(d_out * out) into *grad.
  void backward(const Cache &cache, const Tensor &d_out,
                std::vector<double> *grad) const;

 private:
  enum ParamIdx {
    kConv1W, kConv1B, kTembW, kTembB, kConv2W, kConv2B, kConv3W, kConv3B,
    kConv4W, kConv4B, kConv5W, kConv5B, kConv6W, kConv6B, kNumArrays,
  };

  const double *arr(int idx) const { return params_.data() + shapes_[idx].offset; }
  void check_input(const Tensor &x, const Tensor &y) const;

  NetConfig config_;
  std::vector<ParamShape> shapes_;
  std::vector<double> params_;
};

}  // namespace gvc

#endif  // GVC_DENOISER_HPP_
