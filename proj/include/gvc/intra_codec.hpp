#ifndef GVC_INTRA_CODEC_HPP_
#define GVC_INTRA_CODEC_HPP_

#include <memory>
#include <string>

#include "gvc/bytes.hpp"
#include "gvc/frame.hpp"

namespace gvc {

// Quality axis of the block-transform codec. Levels map to quantization
// steps over scaled integer coefficients (coefficient * 32, rounded):
//
//   quality   9  8  7   6   5   4    3    2    1     0
//   AC step   1  8  16  32  64  128  256  512  1024  2048
//   DC step   1  4  8   16  32  64   128  256  512   1024
//
// Steps halve as quality rises (geometric, ratio 2); quality 9 is the
// exact-round-trip setting. Higher quality never enlarges the step of
// any band.
inline constexpr int kMaxQuality = 9;

struct CodecQuality {
  int level = 5;  // 0 = coarsest .. 9 = finest
};

int quant_step(int quality, int band);  // band 0 = DC, else AC

struct FramePayload {
  Bytes data;
  int height = 0;
  int width = 0;
  int channels = 0;
};

// Payload byte layout: block_size u8, quality u8, pad_bottom u8,
// pad_right u8, body_len u32, then the range-coded coefficient stream
// (zigzag order, per channel plane; adaptive class models, raw sign and
// refinement bits).
FramePayload encode_frame(const Frame &frame, CodecQuality quality);
Frame decode_frame(const FramePayload &payload);

// Single-frame codec behind the pipeline, so other codecs can slot in.
class IntraCodec {
 public:
  virtual ~IntraCodec() = default;
  virtual FramePayload encode(const Frame &frame) const = 0;
  virtual Frame decode(const FramePayload &payload) const = 0;
  virtual std::string name() const = 0;
};

class BlockDctCodec : public IntraCodec {
 public:
  explicit BlockDctCodec(CodecQuality quality) : quality_(quality) {}

  FramePayload encode(const Frame &frame) const override {
    return encode_frame(frame, quality_);
  }
  Frame decode(const FramePayload &payload) const override {
    return decode_frame(payload);
  }
  std::string name() const override {
    return "block-dct-q" + std::to_string(quality_.level);
  }

  CodecQuality quality() const { return quality_; }

 private:
  CodecQuality quality_;
};

}  // namespace gvc

#endif  // GVC_INTRA_CODEC_HPP_
