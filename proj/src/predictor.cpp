#include "gvc/predictor.hpp"

#include <cmath>

#include "gvc/error.hpp"
#include "gvc/rng.hpp"

namespace gvc {

void PredictorConfig::validate() const {
  if (cond_frames < 1 || out_frames < 1) {
    throw ValidationError("predictor windows must be >= 1");
  }
  if (t_diff < 1) {
    throw ValidationError("t_diff must be >= 1");
  }
  if (!(beta_start > 0.0 && beta_start <= beta_end && beta_end < 1.0)) {
    throw ValidationError("need 0 < beta_start <= beta_end < 1");
  }
  if (channels != 1 && channels != 3) {
    throw ValidationError("channels must be 1 or 3");
  }
}

NetConfig net_config(const PredictorConfig &config) {
  config.validate();
  NetConfig nc;
  nc.x_channels = config.out_frames * config.channels;
  nc.y_channels = config.cond_frames * config.channels;
  nc.hidden = config.hidden;
  nc.emb_dim = config.emb_dim;
  nc.height = config.height;
  nc.width = config.width;
  return nc;
}

NoiseSchedule schedule_of(const PredictorConfig &config) {
  return make_schedule(config.t_diff, config.beta_start, config.beta_end);
}

Tensor frames_to_tensor(const std::vector<Frame> &frames, int from,
                        int count) {
  if (from < 0 || count < 1 ||
      from + count > static_cast<int>(frames.size())) {
    throw ValidationError("frame window outside sequence");
  }
  const Frame &first = frames[from];
  Tensor t(count * first.channels, first.height, first.width);
  std::size_t pos = 0;
  for (int i = 0; i < count; ++i) {
    const Frame &f = frames[from + i];
    if (!f.same_shape(first)) {
      throw DimensionError("stacked frames must share dimensions");
    }
    for (std::size_t s = 0; s < f.samples.size(); ++s) {
      t.v[pos++] = f.samples[s] / 127.5 - 1.0;
    }
  }
  return t;
}

std::vector<Frame> tensor_to_frames(const Tensor &t, int channels) {
  if (channels < 1 || t.c % channels != 0) {
    throw DimensionError("tensor channels not a multiple of frame channels");
  }
  const int count = t.c / channels;
  std::vector<Frame> frames;
  frames.reserve(count);
  std::size_t pos = 0;
  for (int i = 0; i < count; ++i) {
    Frame f(t.h, t.w, channels);
    for (std::size_t s = 0; s < f.samples.size(); ++s) {
      f.samples[s] = quantize_sample(t.v[pos++]);
    }
    frames.push_back(std::move(f));
  }
  return frames;
}

namespace {

// One reverse chain from seeded Gaussian noise to out_frames frames.
// eps-parameterization: a0_hat = (x_t - sqrt(1-abar_t) eps_hat) /
// sqrt(abar_t), then the posterior mean, plus sqrt(beta_tilde_t) z for
// t > 1. a0_hat is not clamped inside the chain; only the final output
// is clamped and quantized.
Tensor reverse_chain(const Tensor &cond, const Denoiser &net,
                     const NoiseSchedule &schedule, GaussianRng &rng) {
  const NetConfig nc = net.config();
  Tensor x(nc.x_channels, nc.height, nc.width);
  for (double &v : x.v) {
    v = rng.normal();
  }
  for (int t = schedule.num_steps; t >= 1; --t) {
    const Tensor eps_hat = net.forward(x, cond, t);
    const double abar = schedule.alpha_bar_at(t);
    const double cs = std::sqrt(abar);
    const double cn = std::sqrt(1.0 - abar);
    std::vector<double> a0_hat(x.v.size());
    for (std::size_t i = 0; i < x.v.size(); ++i) {
      a0_hat[i] = (x.v[i] - cn * eps_hat.v[i]) / cs;
    }
    std::vector<double> mu = posterior_mean(x.v, a0_hat, t, schedule);
    if (t > 1) {
      const double sigma = std::sqrt(schedule.beta_tilde[t - 1]);
      for (std::size_t i = 0; i < mu.size(); ++i) {
        mu[i] += sigma * rng.normal();
      }
    }
    x.v = std::move(mu);
  }
  return x;
}

}  // namespace

std::vector<Frame> sample_next_frames(const std::vector<Frame> &cond, int j,
                                      const Denoiser &net,
                                      const PredictorConfig &config,
                                      const NoiseSchedule &schedule,
                                      std::uint64_t seed) {
  config.validate();
  if (j < 1) {
    throw ValidationError("must request at least one frame");
  }
  if (static_cast<int>(cond.size()) != config.cond_frames) {
    throw DimensionError("expected " + std::to_string(config.cond_frames) +
                         " conditioning frames, got " +
                         std::to_string(cond.size()));
  }
  for (const Frame &f : cond) {
    if (f.height != config.height || f.width != config.width ||
        f.channels != config.channels) {
      throw DimensionError("conditioning frame shape mismatch");
    }
  }
  if (schedule.num_steps != config.t_diff) {
    throw ValidationError("schedule does not match predictor config");
  }

  GaussianRng rng(seed);
  std::vector<Frame> window(cond.begin(), cond.end());
  std::vector<Frame> generated;
  generated.reserve(j);

  while (static_cast<int>(generated.size()) < j) {
    const Tensor y = frames_to_tensor(
        window, static_cast<int>(window.size()) - config.cond_frames,
        config.cond_frames);
    const Tensor x0 = reverse_chain(y, net, schedule, rng);
    std::vector<Frame> produced = tensor_to_frames(x0, config.channels);
    const int take = std::min<int>(static_cast<int>(produced.size()),
                                   j - static_cast<int>(generated.size()));
    for (int i = 0; i < take; ++i) {
      generated.push_back(produced[i]);
      window.push_back(std::move(produced[i]));
    }
  }
  return generated;
}

}  // namespace gvc
