// Acceptance suite: each criterion prints one PASS/FAIL line. Run all
// with no arguments or a single one with --criterion N.

#include <chrono>
#include <cmath>
#include <cstring>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include "gvc/denoiser.hpp"
#include "gvc/error.hpp"
#include "gvc/harness.hpp"
#include "gvc/metrics.hpp"
#include "gvc/pipeline.hpp"
#include "gvc/predictor.hpp"
#include "gvc/range_coder.hpp"
#include "gvc/rng.hpp"
#include "gvc/schedule.hpp"
#include "gvc/synth.hpp"
#include "gvc/train.hpp"
#include "test_util.hpp"

using namespace gvc;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Checker {
  int failures = 0;
  std::ostringstream detail;

  void expect(bool ok, const std::string &what) {
    if (!ok) {
      ++failures;
      detail << "    FAILED: " << what << "\n";
    }
  }
};

VideoSequence constant_video(int t, int h, int w, std::uint8_t value) {
  VideoSequence v;
  for (int i = 0; i < t; ++i) {
    Frame f(h, w, 1);
    std::fill(f.samples.begin(), f.samples.end(), value);
    v.frames.push_back(std::move(f));
  }
  return v;
}

MetricSpec mean_abs_metric() {
  return MetricSpec{MetricKind::kMeanAbs, 3, nullptr, ""};
}

std::string decision_string(const EncodeTrace &trace) {
  std::string s;
  for (const TraceEntry &e : trace.entries) {
    s += e.decision == Decision::kIntra ? 'I' : 'G';
  }
  return s;
}

// ---------------------------------------------------------------------
// 1. Algorithm-1 fidelity on three hand-executed videos.
// ---------------------------------------------------------------------
bool criterion_1(Checker &check) {
  const auto started = std::chrono::steady_clock::now();
  RepeatLastPredictor stub2(2);
  RepeatLastPredictor stub1(1);
  BlockDctCodec lossless({kMaxQuality});

  // Video A: static value 100 through frame 9, jumps to 200 at frame 10.
  // N_cond=2, j=3, rho=0.01. Hand execution: frames 0,1 intra; calls at
  // l=2,5 accept 3 candidates each (D=0); the call at l=8 accepts 8,9
  // and fails at 10 (D = 100/255), re-anchoring frames 10,11; the call
  // at l=12 accepts the rest.
  {
    VideoSequence video = constant_video(15, 16, 16, 100);
    for (int i = 10; i < 15; ++i) {
      std::fill(video.frames[i].samples.begin(),
                video.frames[i].samples.end(), 200);
    }
    EncoderConfig cfg;
    cfg.cond_window = 2;
    cfg.gen_window = 3;
    cfg.rho = 0.01;
    cfg.quality = kMaxQuality;
    cfg.metric = mean_abs_metric();
    const EncodeResult r = encode_video(video, cfg, lossless, stub2);
    check.expect(decision_string(r.trace) == "IIGGGGGGGGIIGGG",
                 "video A decisions: " + decision_string(r.trace));
    for (const TraceEntry &e : r.trace.entries) {
      if (e.decision == Decision::kGenerated) {
        check.expect(std::abs(e.d - 0.0) <= 1e-12, "video A generated D = 0");
      }
    }
    check.expect(r.container.records.size() == 4 &&
                     r.container.records[0].count == 2 &&
                     r.container.records[1].count == 8 &&
                     r.container.records[2].count == 2 &&
                     r.container.records[3].count == 3,
                 "video A record layout [I2][G8][I2][G3]");
  }

  // Video B: value 50 for frames 0..4, 150 for 5..9. N_cond=1, j=2,
  // rho=0.01. Hand execution: intra 0; calls at l=1,3 accept pairs;
  // the call at l=5 fails immediately (D = 100/255), re-anchor frame 5;
  // calls at l=6,8 accept pairs.
  {
    VideoSequence video = constant_video(10, 16, 16, 50);
    for (int i = 5; i < 10; ++i) {
      std::fill(video.frames[i].samples.begin(),
                video.frames[i].samples.end(), 150);
    }
    EncoderConfig cfg;
    cfg.cond_window = 1;
    cfg.gen_window = 2;
    cfg.rho = 0.01;
    cfg.quality = kMaxQuality;
    cfg.metric = mean_abs_metric();
    const EncodeResult r = encode_video(video, cfg, lossless, stub1);
    check.expect(decision_string(r.trace) == "IGGGGIGGGG",
                 "video B decisions: " + decision_string(r.trace));
    check.expect(r.container.records.size() == 4 &&
                     r.container.records[0].count == 1 &&
                     r.container.records[1].count == 4 &&
                     r.container.records[2].count == 1 &&
                     r.container.records[3].count == 4,
                 "video B record layout [I1][G4][I1][G4]");
  }

  // Video C: constant ramp, frame t holds value 10t. N_cond=2, j=3,
  // rho=15/255. The stub copies the last reconstruction, so candidate i
  // sits 10(i+1) gray levels from its original: the first candidate
  // passes (D = 10/255), the second fails (20/255), re-anchoring two
  // frames. Pattern: IIGIIGII with D exactly 10/255 on both accepts.
  {
    VideoSequence video = constant_video(8, 16, 16, 0);
    for (int t = 0; t < 8; ++t) {
      std::fill(video.frames[t].samples.begin(),
                video.frames[t].samples.end(),
                static_cast<std::uint8_t>(10 * t));
    }
    EncoderConfig cfg;
    cfg.cond_window = 2;
    cfg.gen_window = 3;
    cfg.rho = 15.0 / 255.0;
    cfg.quality = kMaxQuality;
    cfg.metric = mean_abs_metric();
    const EncodeResult r = encode_video(video, cfg, lossless, stub2);
    check.expect(decision_string(r.trace) == "IIGIIGII",
                 "video C decisions: " + decision_string(r.trace));
    for (const TraceEntry &e : r.trace.entries) {
      if (e.decision == Decision::kGenerated) {
        check.expect(std::abs(e.d - 10.0 / 255.0) <= 1e-12,
                     "video C generated D = 10/255");
      }
    }
  }

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                    started)
          .count();
  check.expect(secs < 1.0, "runtime under one second");
  return check.failures == 0;
}

// ---------------------------------------------------------------------
// 2. Threshold guarantee over >= 200 randomized encodes.
// ---------------------------------------------------------------------
bool criterion_2(Checker &check) {
  std::mt19937_64 rng(20240601);

  PredictorConfig pc;
  pc.t_diff = 5;
  pc.hidden = 8;
  pc.emb_dim = 8;
  pc.height = pc.width = 16;
  Denoiser net(net_config(pc));
  {
    GaussianRng wrng(17);
    for (double &p : net.params()) {
      p = 0.1 * wrng.normal();
    }
  }
  const DiffusionPredictor diffusion(std::move(net), pc);
  const RepeatLastPredictor stub(2);

  int total_generated = 0;
  int violations = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int t = 6 + static_cast<int>(rng() % 9);
    const auto videos =
        synth_dataset(1, t, 16, 16, 1 + static_cast<int>(rng() % 3),
                      {static_cast<int>(rng() % 2),
                       1 + static_cast<int>(rng() % 3)},
                      rng());
    EncoderConfig cfg;
    cfg.cond_window = 2;
    cfg.gen_window = 1 + static_cast<int>(rng() % 4);
    cfg.quality = static_cast<int>(rng() % 10);
    cfg.seed = rng();
    cfg.metric = trial % 2 == 0 ? mean_abs_metric() : MetricSpec{};
    cfg.rho = (1 + static_cast<int>(rng() % 50)) / 100.0;
    const FramePredictor &predictor =
        trial % 2 == 0 ? static_cast<const FramePredictor &>(stub)
                       : static_cast<const FramePredictor &>(diffusion);
    BlockDctCodec codec({cfg.quality});

    const EncodeResult enc = encode_video(videos[0], cfg, codec, predictor);
    const VerifyReport report = verify_threshold(
        enc.trace, enc.reconstruction, videos[0], cfg.metric, cfg.rho);
    violations += static_cast<int>(report.violations.size());
    total_generated += report.generated_frames;
  }
  check.expect(violations == 0,
               "zero violations across 200 encodes, saw " +
                   std::to_string(violations));
  check.expect(total_generated > 0, "the sweep actually generated frames");
  return check.failures == 0;
}

// ---------------------------------------------------------------------
// 3. Encoder/decoder agreement on 50 randomized cases.
// ---------------------------------------------------------------------
bool criterion_3(Checker &check) {
  std::mt19937_64 rng(777001);

  // A briefly trained predictor: agreement must hold for real weights.
  PredictorConfig pc;
  pc.t_diff = 6;
  pc.hidden = 8;
  pc.emb_dim = 8;
  pc.height = pc.width = 16;
  const auto train_set = synth_dataset(4, 8, 16, 16, 1, {1, 2}, 5150);
  AdamConfig adam;
  adam.batch_size = 8;
  const TrainResult trained = train_predictor(train_set, pc, 3, 99, adam);
  const DiffusionPredictor diffusion(trained.net, pc);
  const RepeatLastPredictor stub(2);

  int mismatches = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int t = 5 + static_cast<int>(rng() % 8);
    const auto videos = synth_dataset(
        1, t, 16, 16, 1 + static_cast<int>(rng() % 2),
        {1, 1 + static_cast<int>(rng() % 3)}, rng());
    EncoderConfig cfg;
    cfg.cond_window = 2;
    cfg.gen_window = 1 + static_cast<int>(rng() % 4);
    cfg.quality = 2 + static_cast<int>(rng() % 8);
    cfg.seed = rng();
    cfg.rho = trial % 5 == 0 ? kInf : (5 + static_cast<int>(rng() % 40)) / 100.0;
    cfg.metric = MetricSpec{};
    const FramePredictor &predictor =
        trial % 2 == 0 ? static_cast<const FramePredictor &>(diffusion)
                       : static_cast<const FramePredictor &>(stub);
    BlockDctCodec codec({cfg.quality});

    const EncodeResult enc = encode_video(videos[0], cfg, codec, predictor);
    const EncodedContainer parsed =
        read_container(write_container(enc.container));
    const VideoSequence decoded = decode_video(parsed, codec, predictor);
    if (!(decoded == enc.reconstruction)) {
      ++mismatches;
    }
  }
  check.expect(mismatches == 0,
               "bit-identical reconstructions, mismatches: " +
                   std::to_string(mismatches));
  return check.failures == 0;
}

// ---------------------------------------------------------------------
// 4. Rate extremes and the initial-window-only structure at rho = inf.
// ---------------------------------------------------------------------
bool criterion_4(Checker &check) {
  const auto videos = synth_dataset(4, 12, 16, 16, 2, {1, 2}, 314);
  const RepeatLastPredictor stub(2);
  for (const VideoSequence &video : videos) {
    EncoderConfig cfg;
    cfg.cond_window = 2;
    cfg.gen_window = 3;
    cfg.quality = 5;
    cfg.seed = 42;
    cfg.metric = mean_abs_metric();
    BlockDctCodec codec({cfg.quality});

    cfg.rho = 0.0;
    const double bpp_zero =
        bpp(encode_video(video, cfg, codec, stub).container);
    cfg.rho = 0.08;
    const double bpp_mid =
        bpp(encode_video(video, cfg, codec, stub).container);
    cfg.rho = kInf;
    const EncodeResult inf_enc = encode_video(video, cfg, codec, stub);
    const double bpp_inf = bpp(inf_enc.container);

    check.expect(bpp_zero > bpp_mid, "bpp(rho=0) > bpp(mid rho)");
    check.expect(bpp_mid >= bpp_inf, "bpp(mid rho) >= bpp(rho=inf)");

    int intra_frames = 0;
    for (const FrameRecord &rec : inf_enc.container.records) {
      if (rec.kind == kRecordIntra) {
        intra_frames += rec.count;
      }
    }
    check.expect(intra_frames == cfg.cond_window,
                 "rho=inf intra-codes exactly N_cond frames");
  }
  return check.failures == 0;
}

// ---------------------------------------------------------------------
// 5. Diffusion math: identities, marginal moments, posterior, gradients.
// ---------------------------------------------------------------------
bool criterion_5(Checker &check) {
  // (a) schedule identities at 1e-12 on random schedules
  {
    std::mt19937_64 rng(5001);
    bool ok = true;
    for (int trial = 0; trial < 30 && ok; ++trial) {
      const int t_diff = 1 + static_cast<int>(rng() % 400);
      const double b0 = 1e-5 + (rng() % 1000) * 1e-6;
      const double b1 = std::min(0.999, b0 + (rng() % 1000) * 2e-4);
      const NoiseSchedule s = make_schedule(t_diff, b0, b1);
      ok = ok && s.beta_tilde[0] == 0.0;
      for (int t = 1; t <= t_diff; ++t) {
        ok = ok && s.alpha_bar_at(t) < s.alpha_bar_at(t - 1);
        const double lhs = s.beta_tilde[t - 1] * (1.0 - s.alpha_bar_at(t));
        const double rhs = s.beta[t - 1] * (1.0 - s.alpha_bar_at(t - 1));
        ok = ok && std::abs(lhs - rhs) <= 1e-12;
      }
    }
    check.expect(ok, "(a) beta_tilde and alpha_bar identities at 1e-12");
  }

  // (b) forward marginal moments over 1e4 Monte-Carlo draws
  {
    const NoiseSchedule s = make_schedule(5, 0.05, 0.3);
    const int t = 4;
    const double abar = s.alpha_bar_at(t);
    const double a0 = -0.45;
    const int n = 10000;
    GaussianRng grng(5002);
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = forward_sample({a0}, t, {grng.normal()}, s)[0];
      sum += x;
      sumsq += x * x;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    const double expected_var = 1.0 - abar;
    check.expect(std::abs(mean - std::sqrt(abar) * a0) <=
                     3.0 * std::sqrt(expected_var / n),
                 "(b) marginal mean within 3 s.e.");
    check.expect(std::abs(var - expected_var) <=
                     3.0 * expected_var * std::sqrt(2.0 / (n - 1)),
                 "(b) marginal variance within 3 s.e.");
  }

  // (c) posterior mean against the Bayes conjugacy oracle at rel 1e-9
  {
    const NoiseSchedule s = make_schedule(4, 0.15, 0.45);
    std::mt19937_64 rng(5003);
    bool ok = true;
    for (int trial = 0; trial < 200 && ok; ++trial) {
      const double at = (static_cast<double>(rng() % 4000) - 2000) / 1000.0;
      const double a0 = (static_cast<double>(rng() % 4000) - 2000) / 1000.0;
      for (int t = 2; t <= 4; ++t) {
        const double beta = s.beta[t - 1];
        const double alpha = 1.0 - beta;
        const double abar_prev = s.alpha_bar_at(t - 1);
        const double precision = alpha / beta + 1.0 / (1.0 - abar_prev);
        const double oracle =
            (std::sqrt(alpha) / beta * at +
             std::sqrt(abar_prev) / (1.0 - abar_prev) * a0) /
            precision;
        const double ours = posterior_mean({at}, {a0}, t, s)[0];
        ok = ok &&
             std::abs(ours - oracle) <= 1e-9 * std::max(1.0, std::abs(oracle));
      }
    }
    check.expect(ok, "(c) posterior mean matches the Bayes oracle");
  }

  // (d) analytic gradients against central finite differences
  {
    NetConfig nc;
    nc.x_channels = 1;
    nc.y_channels = 2;
    nc.hidden = 3;
    nc.emb_dim = 4;
    nc.height = 4;
    nc.width = 4;
    Denoiser net(nc);
    GaussianRng wrng(5004);
    for (double &p : net.params()) {
      p = 0.2 * wrng.normal();
    }
    Tensor x(1, 4, 4), y(2, 4, 4), target(1, 4, 4);
    for (double &v : x.v) v = wrng.normal();
    for (double &v : y.v) v = wrng.normal();
    for (double &v : target.v) v = wrng.normal();
    const int t = 2;
    const double n = static_cast<double>(target.size());

    auto loss_of = [&]() {
      const Tensor out = net.forward(x, y, t);
      double loss = 0.0;
      for (std::size_t i = 0; i < out.v.size(); ++i) {
        const double r = out.v[i] - target.v[i];
        loss += r * r / n;
      }
      return loss;
    };
    Denoiser::Cache cache;
    const Tensor out = net.forward(x, y, t, &cache);
    Tensor d_out(out.c, out.h, out.w);
    for (std::size_t i = 0; i < out.v.size(); ++i) {
      d_out.v[i] = 2.0 * (out.v[i] - target.v[i]) / n;
    }
    std::vector<double> analytic(net.num_params(), 0.0);
    net.backward(cache, d_out, &analytic);

    const double h = 1e-5;
    double worst = 0.0;
    for (std::size_t k = 0; k < net.num_params(); ++k) {
      const double saved = net.params()[k];
      net.params()[k] = saved + h;
      const double up = loss_of();
      net.params()[k] = saved - h;
      const double down = loss_of();
      net.params()[k] = saved;
      const double fd = (up - down) / (2.0 * h);
      const double scale =
          std::max({std::abs(fd), std::abs(analytic[k]), 1e-6});
      worst = std::max(worst, std::abs(fd - analytic[k]) / scale);
    }
    check.expect(worst < 1e-4, "(d) gradient rel err " +
                                   std::to_string(worst) + " < 1e-4");
  }
  return check.failures == 0;
}

// ---------------------------------------------------------------------
// 6. Desk-scale learning effect within the training budget.
// ---------------------------------------------------------------------
bool criterion_6(Checker &check) {
  const std::clock_t cpu_start = std::clock();

  PredictorConfig pc;
  pc.cond_frames = 2;
  pc.out_frames = 1;
  pc.t_diff = 50;
  pc.beta_start = 1e-4;
  pc.beta_end = 0.05;
  pc.height = pc.width = 16;
  pc.hidden = 24;
  pc.emb_dim = 32;

  const auto train_set = synth_dataset(32, 10, 16, 16, 1, {1, 2}, 6001);
  AdamConfig adam;
  adam.lr = 2e-3;
  adam.batch_size = 16;
  const int epochs = 30;
  const TrainResult run = train_predictor(train_set, pc, epochs, 6002, adam);

  const double cpu_minutes =
      static_cast<double>(std::clock() - cpu_start) / CLOCKS_PER_SEC / 60.0;
  check.expect(cpu_minutes <= 30.0, "training stayed under 30 CPU-minutes (" +
                                        std::to_string(cpu_minutes) + ")");

  // (a) final loss at or below 0.2x the initial loss
  const double initial = run.epoch_losses.front();
  const double final_loss = run.epoch_losses.back();
  check.expect(final_loss <= 0.2 * initial,
               "(a) loss " + std::to_string(initial) + " -> " +
                   std::to_string(final_loss) + " is a 5x reduction");

  // (b) 1-step prediction beats repeat-last on > 50% of 100 held-out
  const DiffusionPredictor predictor(run.net, pc);
  const NoiseSchedule schedule = schedule_of(pc);
  const auto held_out = synth_dataset(100, 8, 16, 16, 1, {1, 2}, 7001);
  const MetricSpec proxy{};
  int wins = 0;
  for (int i = 0; i < 100; ++i) {
    const VideoSequence &video = held_out[i];
    const std::vector<Frame> cond{video.frames[4], video.frames[5]};
    const Frame &target = video.frames[6];
    const auto predicted = sample_next_frames(
        cond, 1, predictor.net(), pc, schedule, derive_seed(8001, i));
    const double d_model = frame_distance(predicted[0], target, proxy);
    const double d_copy = frame_distance(video.frames[5], target, proxy);
    if (d_model < d_copy) {
      ++wins;
    }
  }
  check.expect(wins > 50, "(b) model beats repeat-last on " +
                              std::to_string(wins) + "/100 held-out");

  // (c) some (quality, rho) beats the all-intra encode at equal quality
  // while keeping the threshold guarantee
  {
    const VideoSequence &video = held_out[0];
    bool found = false;
    std::string tried;
    for (const int quality : {4, 5, 6}) {
      for (const double rho : {0.05, 0.1, 0.2}) {
        EncoderConfig cfg;
        cfg.cond_window = 2;
        cfg.gen_window = 2;
        cfg.quality = quality;
        cfg.rho = rho;
        cfg.seed = 9001;
        cfg.metric = proxy;
        BlockDctCodec codec({quality});
        const EncodeResult enc = encode_video(video, cfg, codec, predictor);

        EncoderConfig all_intra = cfg;
        all_intra.rho = 0.0;
        const EncodeResult base =
            encode_video(video, all_intra, codec, predictor);

        const VerifyReport report = verify_threshold(
            enc.trace, enc.reconstruction, video, cfg.metric, cfg.rho);
        if (report.passed() && bpp(enc.container) < bpp(base.container)) {
          found = true;
          break;
        }
        tried += " (q=" + std::to_string(quality) +
                 ",rho=" + std::to_string(rho) + ")";
      }
      if (found) break;
    }
    check.expect(found,
                 "(c) a generative setting undercuts all-intra bpp" + tried);
  }
  return check.failures == 0;
}

// ---------------------------------------------------------------------
// 7. Entropy coder: exact round trips and near-Shannon rates.
// ---------------------------------------------------------------------
bool criterion_7(Checker &check) {
  std::mt19937_64 rng(700700);
  bool all_exact = true;
  for (int trial = 0; trial < 10000; ++trial) {
    const int alphabet = 2 + static_cast<int>(rng() % 32);
    std::vector<std::uint32_t> freqs(alphabet);
    for (auto &f : freqs) {
      f = 1 + static_cast<std::uint32_t>(rng() % 256);
    }
    const FreqModel model(freqs);
    std::vector<int> symbols(rng() % 120);
    for (auto &s : symbols) {
      s = static_cast<int>(rng() % alphabet);
    }
    if (range_decode(range_encode(symbols, model), model, symbols.size()) !=
        symbols) {
      all_exact = false;
      break;
    }
  }
  check.expect(all_exact, "exact round-trip on 1e4 random streams");

  // iid sources with a known model: coded size within 1% of the
  // Shannon bound plus a 16-byte constant
  struct Source {
    std::string name;
    std::vector<std::uint32_t> freqs;
  };
  const std::vector<Source> sources = {
      {"uniform-256", std::vector<std::uint32_t>(256, 256)},
      {"skewed-99", {64881, 655}},
      {"geometric-16",
       {32768, 16384, 8192, 4096, 2048, 1024, 512, 256, 128, 64, 32, 16, 8,
        4, 2, 2}},
  };
  for (const Source &source : sources) {
    const FreqModel model(source.freqs);
    const double total = model.total();
    double entropy_bits = 0.0;
    for (int s = 0; s < model.size(); ++s) {
      const double p = model.freq(s) / total;
      entropy_bits -= p * std::log2(p);
    }
    const int n = 10000;
    std::vector<int> symbols(n);
    for (auto &sym : symbols) {
      const std::uint32_t target =
          static_cast<std::uint32_t>(rng() % model.total());
      sym = model.find(target);
    }
    const Bytes coded = range_encode(symbols, model);
    check.expect(
        range_decode(coded, model, n) == symbols,
        source.name + " round-trips");
    const double bound_bytes = entropy_bits * n / 8.0;
    check.expect(static_cast<double>(coded.size()) <=
                     1.01 * bound_bytes + 16.0,
                 source.name + ": " + std::to_string(coded.size()) +
                     " bytes within 1% of Shannon " +
                     std::to_string(bound_bytes) + " + 16");
  }
  return check.failures == 0;
}

// ---------------------------------------------------------------------
// 8. Metric spot values and the Frechet analytic case.
// ---------------------------------------------------------------------
bool criterion_8(Checker &check) {
  {
    Frame a(4, 4, 1), b(4, 4, 1);
    std::fill(b.samples.begin(), b.samples.end(), 255);
    check.expect(std::abs(psnr(a, b) - 0.0) <= 0.01,
                 "all-0 vs all-255 is 0 dB");
    Frame c(1, 2, 1), d(1, 2, 1);
    d.samples[0] = 16;
    check.expect(std::abs(psnr(c, d) - 27.06) <= 0.01,
                 "two-pixel case is 27.06 dB");
    check.expect(psnr(a, a) == 99.0, "identical frames cap at 99 dB");
  }
  {
    std::mt19937_64 rng(808);
    bool ok = true;
    for (int trial = 0; trial < 50; ++trial) {
      const double mu1 = (static_cast<double>(rng() % 2000) - 1000) / 100.0;
      const double mu2 = (static_cast<double>(rng() % 2000) - 1000) / 100.0;
      const double sd1 = 0.1 + (rng() % 100) / 25.0;
      const double sd2 = 0.1 + (rng() % 100) / 25.0;
      FeatureSummary a, b;
      a.mean = Eigen::VectorXd::Constant(1, mu1);
      b.mean = Eigen::VectorXd::Constant(1, mu2);
      a.cov = Eigen::MatrixXd::Constant(1, 1, sd1 * sd1);
      b.cov = Eigen::MatrixXd::Constant(1, 1, sd2 * sd2);
      a.count = b.count = 10;
      const double expected =
          (mu1 - mu2) * (mu1 - mu2) + (sd1 - sd2) * (sd1 - sd2);
      ok = ok && std::abs(frechet_distance(a, b) - expected) <=
                     1e-8 * std::max(1.0, expected);
    }
    check.expect(ok, "1-D Frechet matches the closed form at 1e-8");
  }
  {
    std::mt19937_64 rng(809);
    std::vector<Frame> set;
    for (int i = 0; i < 30; ++i) {
      set.push_back(gvc_test::smooth_frame(16, 16, 1, rng));
    }
    check.expect(frechet_feature_distance(set, set, FeatureConfig{}) <= 1e-8,
                 "identical sets score 0");
  }
  return check.failures == 0;
}

// ---------------------------------------------------------------------
// 9. Harness: Pareto oracle, sweep determinism, CRF bounds.
// ---------------------------------------------------------------------
bool criterion_9(Checker &check) {
  // Pareto against the brute-force domination filter on 100 random sets
  {
    std::mt19937_64 rng(909);
    auto make_point = [](double bpp_v, double perc) {
      RDPoint p;
      p.bpp = bpp_v;
      p.perceptual = perc;
      return p;
    };
    bool ok = true;
    for (int trial = 0; trial < 100 && ok; ++trial) {
      std::vector<RDPoint> points;
      const int n = 1 + static_cast<int>(rng() % 50);
      for (int i = 0; i < n; ++i) {
        points.push_back(make_point((rng() % 10) / 100.0, (rng() % 10) / 10.0));
      }
      const auto fast = pareto_front(points, Objective::kPerceptual);

      std::vector<RDPoint> slow;
      for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
          if (i == j) continue;
          const bool no_worse = points[j].bpp <= points[i].bpp &&
                                points[j].perceptual <= points[i].perceptual;
          const bool strict = points[j].bpp < points[i].bpp ||
                              points[j].perceptual < points[i].perceptual;
          dominated = no_worse && strict;
        }
        if (!dominated) slow.push_back(points[i]);
      }
      std::stable_sort(slow.begin(), slow.end(),
                       [](const RDPoint &a, const RDPoint &b) {
                         if (a.bpp != b.bpp) return a.bpp < b.bpp;
                         return a.perceptual < b.perceptual;
                       });
      ok = fast.size() == slow.size();
      for (std::size_t i = 0; ok && i < fast.size(); ++i) {
        ok = fast[i].bpp == slow[i].bpp &&
             fast[i].perceptual == slow[i].perceptual;
      }
    }
    check.expect(ok, "pareto equals the brute-force oracle on 100 sets");
  }

  // sweep CSV determinism
  {
    gvc_test::TempDir tmp("acc9");
    const auto dataset = synth_dataset(2, 8, 16, 16, 2, {1, 2}, 911);
    SweepSpec spec;
    spec.qualities = {4, 7};
    spec.rhos = {0.0, 0.1, kInf};
    spec.metric = mean_abs_metric();
    RepeatLastPredictor stub(2);
    auto run = [&](const std::string &path) {
      const auto points = rd_sweep(dataset, spec, stub);
      write_sweep_csv(points, aggregate_sweep(points, spec), spec, path);
      std::ifstream in(path, std::ios::binary);
      return std::string((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
    };
    const std::string a = run(tmp.file("a.csv"));
    const std::string b = run(tmp.file("b.csv"));
    check.expect(!a.empty() && a == b,
                 "sweep csv byte-identical across two runs");
  }

  // CRF bound
  {
    const auto dataset = synth_dataset(1, 4, 16, 16, 1, {1, 1}, 912);
    bool threw = false;
    try {
      external_codec_baseline(dataset[0], {52}, "h264", MetricSpec{},
                              FeatureConfig{}, "/tmp/gvc-acc9");
    } catch (const ValidationError &) {
      threw = true;
    }
    check.expect(threw, "CRF 52 rejected");
    threw = false;
    try {
      external_codec_baseline(dataset[0], {0, 51, -1}, "h264", MetricSpec{},
                              FeatureConfig{}, "/tmp/gvc-acc9");
    } catch (const ValidationError &) {
      threw = true;
    }
    check.expect(threw, "CRF -1 rejected");
  }
  return check.failures == 0;
}

struct Criterion {
  int number;
  const char *label;
  std::function<bool(Checker &)> run;
};

}  // namespace

int main(int argc, char **argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[i + 1]);
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "Algorithm-1 fidelity against hand-executed traces", criterion_1},
      {2, "threshold guarantee over 200 randomized encodes", criterion_2},
      {3, "encoder/decoder bit agreement on 50 cases", criterion_3},
      {4, "rate extremes across rho", criterion_4},
      {5, "diffusion math against independent oracles", criterion_5},
      {6, "desk-scale learning effect", criterion_6},
      {7, "entropy coder round-trip and rate bounds", criterion_7},
      {8, "metric spot values and Frechet closed form", criterion_8},
      {9, "harness pareto, determinism and CRF bounds", criterion_9},
  };

  int failures = 0;
  for (const Criterion &criterion : criteria) {
    if (only != 0 && criterion.number != only) {
      continue;
    }
    Checker check;
    const auto started = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = criterion.run(check);
    } catch (const std::exception &e) {
      check.detail << "    exception: " << e.what() << "\n";
      ok = false;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      started)
            .count();
    std::printf("%s criterion-%d: %s (%.2fs)\n", ok ? "PASS" : "FAIL",
                criterion.number, criterion.label, secs);
    if (!ok) {
      std::cout << check.detail.str();
      ++failures;
    }
  }
  return failures == 0 ? 0 : 1;
}
