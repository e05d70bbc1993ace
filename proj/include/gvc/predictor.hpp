#ifndef GVC_PREDICTOR_HPP_
#define GVC_PREDICTOR_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "gvc/denoiser.hpp"
#include "gvc/frame.hpp"
#include "gvc/schedule.hpp"

namespace gvc {

struct PredictorConfig {
  int cond_frames = 2;  // N_cond: conditioning frames per call
  int out_frames = 1;   // frames the network generates per call
  int t_diff = 100;     // diffusion steps
  double beta_start = 1e-4;
  double beta_end = 0.02;
  int height = 16;
  int width = 16;
  int channels = 1;
  int hidden = 32;   // network width
  int emb_dim = 32;  // timestep embedding width

  bool operator==(const PredictorConfig &other) const = default;
  void validate() const;
};

NetConfig net_config(const PredictorConfig &config);
NoiseSchedule schedule_of(const PredictorConfig &config);

// count frames starting at `from`, stacked on channels, normalized.
Tensor frames_to_tensor(const std::vector<Frame> &frames, int from, int count);
// Inverse: clamp to [-1,1] and quantize each plane group to a Frame.
std::vector<Frame> tensor_to_frames(const Tensor &t, int channels);

// Seeded ancestral sampling: runs the reverse chain from Gaussian noise,
// conditioning on the given reconstructed frames, and rolls out
// autoregressively when j exceeds the network's per-call output. The
// noise stream is a single generator seeded with `seed`, consumed in a
// fixed order (initial noise in storage order, then the per-step noise
// for t = T..2; no noise at t = 1), so identical (seed, cond, params)
// give bit-identical frames. Generated frames are quantized to 8 bits
// before re-entering the conditioning window.
std::vector<Frame> sample_next_frames(const std::vector<Frame> &cond, int j,
                                      const Denoiser &net,
                                      const PredictorConfig &config,
                                      const NoiseSchedule &schedule,
                                      std::uint64_t seed);

// What the sequential encoder needs from a frame generator.
class FramePredictor {
 public:
  virtual ~FramePredictor() = default;
  virtual std::vector<Frame> generate(const std::vector<Frame> &cond, int j,
                                      std::uint64_t seed) const = 0;
  virtual int cond_frames() const = 0;
  virtual std::string name() const = 0;
};

class DiffusionPredictor : public FramePredictor {
 public:
  DiffusionPredictor(Denoiser net, PredictorConfig config)
      : net_(std::move(net)),
        config_(config),
        schedule_(schedule_of(config)) {}

  std::vector<Frame> generate(const std::vector<Frame> &cond, int j,
                              std::uint64_t seed) const override {
    return sample_next_frames(cond, j, net_, config_, schedule_, seed);
  }
  int cond_frames() const override { return config_.cond_frames; }
  std::string name() const override { return "diffusion"; }

  const Denoiser &net() const { return net_; }
  const PredictorConfig &config() const { return config_; }

 private:
  Denoiser net_;
  PredictorConfig config_;
  NoiseSchedule schedule_;
};

// Deterministic stub: every generated frame copies the last
// conditioning frame. Used for pipeline tests and as a cheap baseline.
class RepeatLastPredictor : public FramePredictor {
 public:
  explicit RepeatLastPredictor(int cond_frames) : cond_frames_(cond_frames) {}

  std::vector<Frame> generate(const std::vector<Frame> &cond, int j,
                              std::uint64_t /*seed*/) const override {
    return std::vector<Frame>(static_cast<std::size_t>(j), cond.back());
  }
  int cond_frames() const override { return cond_frames_; }
  std::string name() const override { return "repeat-last"; }

 private:
  int cond_frames_;
};

}  // namespace gvc

#endif  // GVC_PREDICTOR_HPP_
