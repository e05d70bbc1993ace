#include "gvc/frame.hpp"

#include <cmath>

#include "gvc/error.hpp"

namespace gvc {

Frame::Frame(int h, int w, int c) : height(h), width(w), channels(c) {
  if (h <= 0 || w <= 0 || (c != 1 && c != 3)) {
    throw ValidationError("bad frame shape " + std::to_string(h) + "x" +
                          std::to_string(w) + "x" + std::to_string(c));
  }
  samples.assign(static_cast<std::size_t>(h) * w * c, 0);
}

std::vector<double> Frame::to_normalized() const {
  std::vector<double> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out[i] = samples[i] / 127.5 - 1.0;
  }
  return out;
}

std::uint8_t quantize_sample(double v) {
  if (v < -1.0) v = -1.0;
  if (v > 1.0) v = 1.0;
  long q = std::lround((v + 1.0) * 127.5);
  if (q < 0) q = 0;
  if (q > 255) q = 255;
  return static_cast<std::uint8_t>(q);
}

Frame frame_from_normalized(const std::vector<double> &values, int h, int w,
                            int c) {
  Frame f(h, w, c);
  if (values.size() != f.samples.size()) {
    throw DimensionError("normalized buffer has " +
                         std::to_string(values.size()) + " values, expected " +
                         std::to_string(f.samples.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    f.samples[i] = quantize_sample(values[i]);
  }
  return f;
}

void VideoSequence::validate() const {
  if (frames.empty()) {
    throw ValidationError("video must contain at least one frame");
  }
  for (const Frame &f : frames) {
    if (!f.same_shape(frames[0])) {
      throw ValidationError("all frames in a video must share dimensions");
    }
    if (f.num_samples() != static_cast<int>(f.samples.size())) {
      throw ValidationError("frame sample count does not match its shape");
    }
  }
}

}  // namespace gvc
