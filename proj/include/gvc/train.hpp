#ifndef GVC_TRAIN_HPP_
#define GVC_TRAIN_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gvc/denoiser.hpp"
#include "gvc/frame.hpp"
#include "gvc/predictor.hpp"
#include "gvc/schedule.hpp"

namespace gvc {

struct AdamConfig {
  double lr = 2e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  int batch_size = 16;
};

struct AdamState {
  std::vector<double> m, v;
  long step = 0;

  explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

// One batch item: conditioning planes y and clean target planes x, both
// in the normalized [-1,1] domain.
struct TrainItem {
  Tensor y;
  Tensor x;
};

// One noise-prediction step: per item draws t uniform in [1, T_diff]
// and unit Gaussian noise (both from rng_seed, items in order), forms
// the noisy target with the closed-form marginal, and takes one Adam
// step on the mean squared eps-prediction error. Returns the
// per-element mean loss. Throws DivergenceError on a non-finite loss.
double train_step(Denoiser &net, const NoiseSchedule &schedule,
                  const std::vector<TrainItem> &batch, AdamState &opt,
                  const AdamConfig &config, std::uint64_t rng_seed);

// Sliding windows (y = cond_frames frames, x = the next out_frames) cut
// from every video in the dataset.
std::vector<TrainItem> make_training_windows(
    const std::vector<VideoSequence> &dataset, const PredictorConfig &config);

struct TrainResult {
  Denoiser net;
  std::vector<double> epoch_losses;  // mean step loss per epoch
};

// Full training loop, deterministic in (dataset, config, epochs, seed).
TrainResult train_predictor(const std::vector<VideoSequence> &dataset,
                            const PredictorConfig &config, int epochs,
                            std::uint64_t seed, const AdamConfig &opt = {});

void write_loss_curve_csv(const std::vector<double> &epoch_losses,
                          const std::string &path);

// Checkpoint: "GVCK" magic, config fields, then shape-tagged
// little-endian f64 weight arrays.
void save_checkpoint(const std::string &path, const PredictorConfig &config,
                     const Denoiser &net);

struct Checkpoint {
  PredictorConfig config;
  Denoiser net;
};

Checkpoint load_checkpoint(const std::string &path);

}  // namespace gvc

#endif  // GVC_TRAIN_HPP_
