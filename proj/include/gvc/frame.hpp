#ifndef GVC_FRAME_HPP_
#define GVC_FRAME_HPP_

#include <cstdint>
#include <vector>

namespace gvc {

// One raster frame. Samples are 8-bit, stored channel-planar: all of
// channel 0 row-major, then channel 1, and so on.
struct Frame {
  int height = 0;
  int width = 0;
  int channels = 0;  // 1 or 3
  std::vector<std::uint8_t> samples;

  Frame() = default;
  Frame(int h, int w, int c);

  int num_samples() const { return height * width * channels; }

  std::uint8_t &at(int c, int y, int x) {
    return samples[(c * height + y) * width + x];
  }
  std::uint8_t at(int c, int y, int x) const {
    return samples[(c * height + y) * width + x];
  }

  bool same_shape(const Frame &other) const {
    return height == other.height && width == other.width &&
           channels == other.channels;
  }

  // Linear map [0,255] -> [-1,1]. Exact round trip through
  // from_normalized for every 8-bit value.
  std::vector<double> to_normalized() const;

  bool operator==(const Frame &other) const = default;
};

// Inverse of Frame::to_normalized. Values outside [-1,1] are clamped.
Frame frame_from_normalized(const std::vector<double> &values, int h, int w,
                            int c);

std::uint8_t quantize_sample(double v);

struct VideoSequence {
  std::vector<Frame> frames;

  int length() const { return static_cast<int>(frames.size()); }
  int height() const { return frames.empty() ? 0 : frames[0].height; }
  int width() const { return frames.empty() ? 0 : frames[0].width; }
  int channels() const { return frames.empty() ? 0 : frames[0].channels; }

  // T >= 1 and all frames share (H, W, C).
  void validate() const;

  bool operator==(const VideoSequence &other) const = default;
};

}  // namespace gvc

#endif  // GVC_FRAME_HPP_
