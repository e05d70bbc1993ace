#include "gvc/train.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "gvc/bytes.hpp"
#include "gvc/error.hpp"
#include "gvc/rng.hpp"

namespace gvc {

double train_step(Denoiser &net, const NoiseSchedule &schedule,
                  const std::vector<TrainItem> &batch, AdamState &opt,
                  const AdamConfig &config, std::uint64_t rng_seed) {
  if (batch.empty()) {
    throw ValidationError("training batch must be nonempty");
  }
  if (opt.m.size() != net.num_params()) {
    throw DimensionError("optimizer state does not match parameter count");
  }

  GaussianRng rng(rng_seed);
  std::vector<double> grad(net.num_params(), 0.0);
  double loss = 0.0;
  const double elems =
      static_cast<double>(batch.size()) * batch[0].x.size();

  for (const TrainItem &item : batch) {
    const int t =
        1 + static_cast<int>(rng.raw() % static_cast<std::uint64_t>(
                                              schedule.num_steps));
    Tensor eps(item.x.c, item.x.h, item.x.w);
    for (double &v : eps.v) {
      v = rng.normal();
    }
    Tensor noisy = item.x;
    noisy.v = forward_sample(item.x.v, t, eps.v, schedule);

    Denoiser::Cache cache;
    const Tensor out = net.forward(noisy, item.y, t, &cache);

    Tensor d_out(out.c, out.h, out.w);
    for (std::size_t i = 0; i < out.v.size(); ++i) {
      const double r = out.v[i] - eps.v[i];
      loss += r * r / elems;
      d_out.v[i] = 2.0 * r / elems;
    }
    net.backward(cache, d_out, &grad);
  }

  if (!std::isfinite(loss)) {
    throw DivergenceError("training loss is not finite", NAN);
  }

  ++opt.step;
  const double bc1 = 1.0 - std::pow(config.beta1, opt.step);
  const double bc2 = 1.0 - std::pow(config.beta2, opt.step);
  std::vector<double> &params = net.params();
  for (std::size_t i = 0; i < params.size(); ++i) {
    opt.m[i] = config.beta1 * opt.m[i] + (1.0 - config.beta1) * grad[i];
    opt.v[i] = config.beta2 * opt.v[i] + (1.0 - config.beta2) * grad[i] * grad[i];
    const double mhat = opt.m[i] / bc1;
    const double vhat = opt.v[i] / bc2;
    params[i] -= config.lr * mhat / (std::sqrt(vhat) + config.eps);
  }
  return loss;
}

std::vector<TrainItem> make_training_windows(
    const std::vector<VideoSequence> &dataset,
    const PredictorConfig &config) {
  config.validate();
  const int span = config.cond_frames + config.out_frames;
  std::vector<TrainItem> items;
  for (const VideoSequence &video : dataset) {
    video.validate();
    if (video.height() != config.height || video.width() != config.width ||
        video.channels() != config.channels) {
      throw DimensionError("dataset video shape does not match config");
    }
    if (video.length() < span) {
      throw ValidationError(
          "dataset video shorter than one conditioning + target window");
    }
    for (int start = 0; start + span <= video.length(); ++start) {
      TrainItem item;
      item.y = frames_to_tensor(video.frames, start, config.cond_frames);
      item.x = frames_to_tensor(video.frames, start + config.cond_frames,
                                config.out_frames);
      items.push_back(std::move(item));
    }
  }
  return items;
}

namespace {

// Fisher-Yates with an explicit engine; std::shuffle's sequence is
// implementation-defined.
void deterministic_shuffle(std::vector<int> &order, std::mt19937_64 &rng) {
  for (std::size_t i = order.size(); i > 1; --i) {
    const std::size_t k = rng() % i;
    std::swap(order[i - 1], order[k]);
  }
}

}  // namespace

TrainResult train_predictor(const std::vector<VideoSequence> &dataset,
                            const PredictorConfig &config, int epochs,
                            std::uint64_t seed, const AdamConfig &opt) {
  if (epochs < 1) {
    throw ValidationError("epochs must be >= 1");
  }
  const std::vector<TrainItem> items = make_training_windows(dataset, config);
  const NoiseSchedule schedule = schedule_of(config);

  Denoiser net(net_config(config));
  net.init_weights(derive_seed(seed, 0xC0DEC));
  AdamState state(net.num_params());

  std::mt19937_64 shuffle_rng(derive_seed(seed, 0x5AFF1E));
  std::vector<int> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);

  TrainResult result{std::move(net), {}};
  double last_finite = NAN;
  std::uint64_t step_counter = 0;

  for (int epoch = 0; epoch < epochs; ++epoch) {
    deterministic_shuffle(order, shuffle_rng);
    double epoch_loss = 0.0;
    int steps = 0;
    for (std::size_t pos = 0; pos < order.size(); pos += opt.batch_size) {
      std::vector<TrainItem> batch;
      for (std::size_t i = pos;
           i < std::min(order.size(), pos + opt.batch_size); ++i) {
        batch.push_back(items[order[i]]);
      }
      double loss;
      try {
        loss = train_step(result.net, schedule, batch, state, opt,
                          derive_seed(seed, 0xB00 + step_counter));
      } catch (const DivergenceError &) {
        throw DivergenceError("training diverged at epoch " +
                                  std::to_string(epoch),
                              last_finite);
      }
      last_finite = loss;
      epoch_loss += loss;
      ++steps;
      ++step_counter;
    }
    result.epoch_losses.push_back(epoch_loss / steps);
  }
  return result;
}

void write_loss_curve_csv(const std::vector<double> &epoch_losses,
                          const std::string &path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IoError("cannot open loss curve for writing: " + path);
  }
  out << "epoch,loss\n";
  char buf[64];
  for (std::size_t i = 0; i < epoch_losses.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu,%.12g\n", i + 1, epoch_losses[i]);
    out << buf;
  }
}

namespace {
constexpr std::uint8_t kCkptMagic[4] = {'G', 'V', 'C', 'K'};
constexpr std::uint32_t kCkptVersion = 1;
}  // namespace

void save_checkpoint(const std::string &path, const PredictorConfig &config,
                     const Denoiser &net) {
  if (net.config() != net_config(config)) {
    throw ValidationError("network does not match the predictor config");
  }
  ByteWriter w;
  w.raw(kCkptMagic, 4);
  w.u32(kCkptVersion);
  w.u32(static_cast<std::uint32_t>(config.cond_frames));
  w.u32(static_cast<std::uint32_t>(config.out_frames));
  w.u32(static_cast<std::uint32_t>(config.t_diff));
  w.f64(config.beta_start);
  w.f64(config.beta_end);
  w.u32(static_cast<std::uint32_t>(config.height));
  w.u32(static_cast<std::uint32_t>(config.width));
  w.u32(static_cast<std::uint32_t>(config.channels));
  w.u32(static_cast<std::uint32_t>(config.hidden));
  w.u32(static_cast<std::uint32_t>(config.emb_dim));
  w.u32(static_cast<std::uint32_t>(net.shapes().size()));
  for (const ParamShape &s : net.shapes()) {
    w.u8(static_cast<std::uint8_t>(s.name.size()));
    w.raw(reinterpret_cast<const std::uint8_t *>(s.name.data()),
          s.name.size());
    w.u8(static_cast<std::uint8_t>(s.dims.size()));
    for (int d : s.dims) {
      w.u32(static_cast<std::uint32_t>(d));
    }
    const double *p = net.params().data() + s.offset;
    for (std::size_t i = 0; i < s.count; ++i) {
      w.f64(p[i]);
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open checkpoint for writing: " + path);
  }
  const Bytes &data = w.bytes();
  out.write(reinterpret_cast<const char *>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) {
    throw IoError("checkpoint write failed: " + path);
  }
}

Checkpoint load_checkpoint(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open checkpoint: " + path);
  }
  Bytes data((std::istreambuf_iterator<char>(in)),
             std::istreambuf_iterator<char>());
  ByteReader r(data);
  for (int i = 0; i < 4; ++i) {
    std::size_t at = r.offset();
    if (r.u8() != kCkptMagic[i]) {
      throw ParseError("bad magic, not a GVCK checkpoint", at);
    }
  }
  {
    std::size_t at = r.offset();
    if (r.u32() != kCkptVersion) {
      throw ParseError("unsupported checkpoint version", at);
    }
  }
  PredictorConfig config;
  config.cond_frames = static_cast<int>(r.u32());
  config.out_frames = static_cast<int>(r.u32());
  config.t_diff = static_cast<int>(r.u32());
  config.beta_start = r.f64();
  config.beta_end = r.f64();
  config.height = static_cast<int>(r.u32());
  config.width = static_cast<int>(r.u32());
  config.channels = static_cast<int>(r.u32());
  config.hidden = static_cast<int>(r.u32());
  config.emb_dim = static_cast<int>(r.u32());
  config.validate();

  Denoiser net(net_config(config));
  const std::uint32_t array_count = r.u32();
  if (array_count != net.shapes().size()) {
    r.fail("checkpoint holds " + std::to_string(array_count) +
           " arrays, network expects " + std::to_string(net.shapes().size()));
  }
  for (const ParamShape &s : net.shapes()) {
    const std::uint8_t name_len = r.u8();
    const Bytes name_bytes = r.raw(name_len);
    const std::string name(name_bytes.begin(), name_bytes.end());
    if (name != s.name) {
      r.fail("unexpected array \"" + name + "\", expected \"" + s.name + "\"");
    }
    const std::uint8_t ndim = r.u8();
    if (ndim != s.dims.size()) {
      r.fail("array " + name + " rank mismatch");
    }
    for (int d : s.dims) {
      if (r.u32() != static_cast<std::uint32_t>(d)) {
        r.fail("array " + name + " shape mismatch");
      }
    }
    double *p = net.params().data() + s.offset;
    for (std::size_t i = 0; i < s.count; ++i) {
      p[i] = r.f64();
    }
  }
  if (!r.at_end()) {
    r.fail("trailing bytes after checkpoint");
  }
  return Checkpoint{config, std::move(net)};
}

}  // namespace gvc
