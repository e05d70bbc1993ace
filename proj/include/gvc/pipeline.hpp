#ifndef GVC_PIPELINE_HPP_
#define GVC_PIPELINE_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "gvc/container.hpp"
#include "gvc/frame.hpp"
#include "gvc/intra_codec.hpp"
#include "gvc/metrics.hpp"
#include "gvc/predictor.hpp"

namespace gvc {

struct EncoderConfig {
  int cond_window = 2;  // N_cond, conditioning frames per predictor call
  int gen_window = 4;   // j, candidate frames per predictor call
  double rho = 0.05;    // acceptance threshold in the metric's units
  int quality = 5;      // intra codec quality (the codec argument governs)
  std::uint64_t seed = 0;  // sampler base seed, stored in the container
  MetricSpec metric;

  void validate() const;
};

enum class Decision { kIntra, kGenerated };

// Per-frame encode log. cum_bits counts container bits past the global
// header: each record's 5-byte header lands on the record's first
// frame, each INTRA frame adds its 4-byte length prefix plus payload.
struct TraceEntry {
  int frame = 0;
  Decision decision = Decision::kIntra;
  double d = NAN;  // measured distance, GENERATED frames only
  std::uint64_t cum_bits = 0;
};

struct EncodeTrace {
  std::vector<TraceEntry> entries;
};

void write_trace_csv(const EncodeTrace &trace, const std::string &path);

struct EncodeResult {
  EncodedContainer container;
  EncodeTrace trace;
  // The encoder-side reconstruction; decode_video must reproduce it
  // bit for bit.
  VideoSequence reconstruction;
};

// Sequential encoding: the first cond_window frames are intra-coded;
// afterwards each predictor call proposes gen_window candidates from
// the *reconstructed* conditioning window, and candidates are accepted
// in order while D(candidate, original) < rho. The first failure
// re-anchors: a fresh conditioning window starting at the failed frame
// is intra-coded (truncated at sequence end), remaining candidates are
// discarded, and prediction resumes past it. Per-call sampler seeds
// derive from (config.seed, window start), so a decoder needs only the
// container.
EncodeResult encode_video(const VideoSequence &video,
                          const EncoderConfig &config, const IntraCodec &codec,
                          const FramePredictor &predictor);

// Reproduces the encoder's reconstruction exactly: INTRA frames through
// the codec, GENERATED frames by replaying the sampler with the derived
// seeds. Throws ReproducibilityError when the predictor cannot match
// the container (wrong conditioning window or frame shape).
VideoSequence decode_video(const EncodedContainer &container,
                           const IntraCodec &codec,
                           const FramePredictor &predictor);

struct Violation {
  int frame = 0;
  double d = 0.0;
};

struct VerifyReport {
  int generated_frames = 0;
  std::vector<Violation> violations;

  bool passed() const { return violations.empty(); }
  std::string summary() const;
};

// Recomputes D(reconstruction, original) for every GENERATED frame in
// the trace and reports the frames at or above rho.
VerifyReport verify_threshold(const EncodeTrace &trace,
                              const VideoSequence &reconstruction,
                              const VideoSequence &original,
                              const MetricSpec &metric, double rho);

}  // namespace gvc

#endif  // GVC_PIPELINE_HPP_
