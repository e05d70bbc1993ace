#include "gvc/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "gvc/error.hpp"
#include "gvc/rng.hpp"

namespace gvc {

void EncoderConfig::validate() const {
  if (cond_window < 1 || gen_window < 1) {
    throw ValidationError("cond_window and gen_window must be >= 1");
  }
  if (std::isnan(rho) || rho < 0.0) {
    throw ValidationError("rho must be >= 0 (or +inf)");
  }
  if (quality < 0 || quality > kMaxQuality) {
    throw ValidationError("quality must be in [0, 9]");
  }
}

namespace {

constexpr std::uint64_t kRecordHeaderBits = 8 * 5;  // kind + count

struct EncodeState {
  std::vector<FrameRecord> records;
  EncodeTrace trace;
  std::vector<Frame> recon;
  std::uint64_t cum_bits = 0;
};

// Intra-codes count frames starting at `from` as one fresh record.
void intra_run(EncodeState &state, const VideoSequence &video,
               const IntraCodec &codec, int from, int count) {
  FrameRecord rec;
  rec.kind = kRecordIntra;
  rec.count = static_cast<std::uint32_t>(count);
  for (int i = 0; i < count; ++i) {
    const int frame = from + i;
    FramePayload payload = codec.encode(video.frames[frame]);
    state.recon[frame] = codec.decode(payload);
    state.cum_bits += (i == 0 ? kRecordHeaderBits : 0) +
                      8 * (4 + payload.data.size());
    state.trace.entries.push_back(
        {frame, Decision::kIntra, NAN, state.cum_bits});
    rec.payloads.push_back(std::move(payload.data));
  }
  state.records.push_back(std::move(rec));
}

void accept_generated(EncodeState &state, Frame frame, int index, double d) {
  if (state.records.empty() || state.records.back().kind != kRecordGenerated) {
    state.records.push_back({kRecordGenerated, 0, {}});
    state.cum_bits += kRecordHeaderBits;
  }
  ++state.records.back().count;
  state.recon[index] = std::move(frame);
  state.trace.entries.push_back(
      {index, Decision::kGenerated, d, state.cum_bits});
}

}  // namespace

EncodeResult encode_video(const VideoSequence &video,
                          const EncoderConfig &config, const IntraCodec &codec,
                          const FramePredictor &predictor) {
  config.validate();
  video.validate();
  const int t = video.length();
  if (t < config.cond_window) {
    throw ValidationError("video shorter than the conditioning window");
  }
  if (predictor.cond_frames() != config.cond_window) {
    throw ValidationError("predictor expects " +
                          std::to_string(predictor.cond_frames()) +
                          " conditioning frames, config says " +
                          std::to_string(config.cond_window));
  }

  EncodeState state;
  state.recon.resize(t);

  intra_run(state, video, codec, 0, config.cond_window);

  int l = config.cond_window;
  while (l < t) {
    const int jj = std::min(config.gen_window, t - l);
    const std::uint64_t call_seed =
        derive_seed(config.seed, static_cast<std::uint64_t>(l));
    const std::vector<Frame> cond(state.recon.begin() + l - config.cond_window,
                                  state.recon.begin() + l);
    std::vector<Frame> candidates = predictor.generate(cond, jj, call_seed);
    if (static_cast<int>(candidates.size()) != jj) {
      throw ValidationError("predictor returned " +
                            std::to_string(candidates.size()) +
                            " frames, expected " + std::to_string(jj));
    }

    bool reanchored = false;
    for (int i = 0; i < jj; ++i) {
      const double d =
          frame_distance(candidates[i], video.frames[l + i], config.metric);
      if (d < config.rho) {
        accept_generated(state, std::move(candidates[i]), l + i, d);
      } else {
        // Remaining candidates from this call are discarded; prediction
        // restarts from a freshly coded conditioning window.
        const int count = std::min(config.cond_window, t - (l + i));
        intra_run(state, video, codec, l + i, count);
        l = l + i + count;
        reanchored = true;
        break;
      }
    }
    if (!reanchored) {
      l += jj;
    }
  }

  EncodeResult result;
  result.container.t = static_cast<std::uint32_t>(t);
  result.container.h = static_cast<std::uint32_t>(video.height());
  result.container.w = static_cast<std::uint32_t>(video.width());
  result.container.c = static_cast<std::uint32_t>(video.channels());
  result.container.cond_window = static_cast<std::uint32_t>(config.cond_window);
  result.container.gen_window = static_cast<std::uint32_t>(config.gen_window);
  result.container.threshold_fp = rho_to_fixed(config.rho);
  result.container.sampler_seed = config.seed;
  result.container.records = std::move(state.records);
  result.container.validate();
  result.trace = std::move(state.trace);
  result.reconstruction.frames = std::move(state.recon);
  return result;
}

VideoSequence decode_video(const EncodedContainer &container,
                           const IntraCodec &codec,
                           const FramePredictor &predictor) {
  container.validate();
  if (container.cond_window < 1 || container.gen_window < 1) {
    throw ValidationError("container windows must be >= 1");
  }
  if (predictor.cond_frames() !=
      static_cast<int>(container.cond_window)) {
    throw ReproducibilityError(
        "predictor conditioning window (" +
        std::to_string(predictor.cond_frames()) +
        ") does not match the container (" +
        std::to_string(container.cond_window) + ")");
  }

  const int t = static_cast<int>(container.t);
  const int n_cond = static_cast<int>(container.cond_window);
  const int j = static_cast<int>(container.gen_window);

  // Flatten the record layout into per-frame kinds and a payload queue.
  std::vector<std::uint8_t> kinds;
  kinds.reserve(t);
  std::vector<const Bytes *> payloads;
  for (const FrameRecord &rec : container.records) {
    for (std::uint32_t i = 0; i < rec.count; ++i) {
      kinds.push_back(rec.kind);
      if (rec.kind == kRecordIntra) {
        payloads.push_back(&rec.payloads[i]);
      }
    }
  }

  VideoSequence out;
  out.frames.resize(t);
  std::size_t payload_next = 0;
  int pos = 0;
  while (pos < t) {
    if (kinds[pos] == kRecordIntra) {
      FramePayload payload;
      payload.data = *payloads[payload_next++];
      payload.height = static_cast<int>(container.h);
      payload.width = static_cast<int>(container.w);
      payload.channels = static_cast<int>(container.c);
      out.frames[pos] = codec.decode(payload);
      ++pos;
      continue;
    }
    if (pos < n_cond) {
      throw ParseError("generated frame before a full conditioning window",
                       kGlobalHeaderSize);
    }
    // Replay the encoder's call: same window start, same derived seed.
    const int jj = std::min(j, t - pos);
    int run = 0;
    while (run < jj && pos + run < t && kinds[pos + run] == kRecordGenerated) {
      ++run;
    }
    const std::uint64_t call_seed =
        derive_seed(container.sampler_seed, static_cast<std::uint64_t>(pos));
    const std::vector<Frame> cond(out.frames.begin() + pos - n_cond,
                                  out.frames.begin() + pos);
    std::vector<Frame> candidates;
    try {
      candidates = predictor.generate(cond, jj, call_seed);
    } catch (const DimensionError &e) {
      throw ReproducibilityError(
          std::string("predictor incompatible with this container: ") +
          e.what());
    }
    if (static_cast<int>(candidates.size()) != jj) {
      throw ReproducibilityError("predictor returned a short window");
    }
    for (int i = 0; i < run; ++i) {
      out.frames[pos + i] = std::move(candidates[i]);
    }
    pos += run;
  }
  return out;
}

std::string VerifyReport::summary() const {
  if (violations.empty()) {
    return "ok: all " + std::to_string(generated_frames) +
           " generated frames meet the threshold";
  }
  std::string msg = "threshold violated at frame " +
                    std::to_string(violations[0].frame) + " (D=" +
                    std::to_string(violations[0].d) + ")";
  if (violations.size() > 1) {
    msg += " and " + std::to_string(violations.size() - 1) + " more";
  }
  return msg;
}

VerifyReport verify_threshold(const EncodeTrace &trace,
                              const VideoSequence &reconstruction,
                              const VideoSequence &original,
                              const MetricSpec &metric, double rho) {
  if (reconstruction.length() != original.length()) {
    throw DimensionError("reconstruction and original differ in length");
  }
  VerifyReport report;
  for (const TraceEntry &entry : trace.entries) {
    if (entry.decision != Decision::kGenerated) {
      continue;
    }
    ++report.generated_frames;
    if (entry.frame < 0 || entry.frame >= original.length()) {
      throw ValidationError("trace frame index out of range");
    }
    const double d = frame_distance(reconstruction.frames[entry.frame],
                                    original.frames[entry.frame], metric);
    if (!(d < rho)) {
      report.violations.push_back({entry.frame, d});
    }
  }
  return report;
}

void write_trace_csv(const EncodeTrace &trace, const std::string &path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IoError("cannot open trace for writing: " + path);
  }
  out << "frame,decision,D,cum_bits\n";
  char buf[128];
  for (const TraceEntry &e : trace.entries) {
    if (e.decision == Decision::kGenerated) {
      std::snprintf(buf, sizeof(buf), "%d,GENERATED,%.12g,%llu\n", e.frame,
                    e.d, static_cast<unsigned long long>(e.cum_bits));
    } else {
      std::snprintf(buf, sizeof(buf), "%d,INTRA,,%llu\n", e.frame,
                    static_cast<unsigned long long>(e.cum_bits));
    }
    out << buf;
  }
}

}  // namespace gvc
