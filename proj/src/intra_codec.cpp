#include "gvc/intra_codec.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "gvc/dct.hpp"
#include "gvc/error.hpp"
#include "gvc/range_coder.hpp"

namespace gvc {

namespace {

constexpr int kCoefScale = 32;  // coefficients are rounded to 1/32 units
constexpr int kMaxClass = 16;   // bit length of |32768|
constexpr int kNumContexts = 3;

// Zigzag scan order of an 8x8 block.
constexpr std::array<int, 64> kZigzag = [] {
  std::array<int, 64> order{};
  int idx = 0;
  for (int s = 0; s < 15; ++s) {
    if (s % 2 == 0) {  // up-right
      for (int y = (s < 8 ? s : 7); y >= 0 && s - y < 8; --y) {
        order[idx++] = y * 8 + (s - y);
      }
    } else {
      for (int x = (s < 8 ? s : 7); x >= 0 && s - x < 8; --x) {
        order[idx++] = (s - x) * 8 + x;
      }
    }
  }
  return order;
}();

int context_of(int zz_index) {
  if (zz_index == 0) return 0;
  return zz_index <= 9 ? 1 : 2;
}

int bit_length(std::uint32_t v) {
  int n = 0;
  while (v != 0) {
    ++n;
    v >>= 1;
  }
  return n;
}

// Half-away-from-zero integer division.
std::int64_t quantize_value(std::int64_t ic, int step) {
  if (ic >= 0) {
    return (ic + step / 2) / step;
  }
  return -((-ic + step / 2) / step);
}

struct Plane {
  int height = 0, width = 0;
  std::vector<double> values;

  double &at(int y, int x) { return values[y * width + x]; }
  double at(int y, int x) const { return values[y * width + x]; }
};

// Edge-replicated pad to multiples of the block size.
Plane padded_plane(const Frame &frame, int channel, int ph, int pw) {
  Plane p;
  p.height = ph;
  p.width = pw;
  p.values.resize(static_cast<std::size_t>(ph) * pw);
  for (int y = 0; y < ph; ++y) {
    const int sy = y < frame.height ? y : frame.height - 1;
    for (int x = 0; x < pw; ++x) {
      const int sx = x < frame.width ? x : frame.width - 1;
      p.at(y, x) = static_cast<double>(frame.at(channel, sy, sx)) - 128.0;
    }
  }
  return p;
}

class CoefficientCoder {
 public:
  CoefficientCoder()
      : classes_(kNumContexts, AdaptiveModel(kMaxClass + 1)),
        bit_(FreqModel::uniform(2)) {}

  void encode_block(RangeEncoder &enc, const std::int64_t *quantized) {
    for (int i = 0; i < 64; ++i) {
      const std::int64_t v = quantized[kZigzag[i]];
      const std::uint32_t mag = static_cast<std::uint32_t>(v < 0 ? -v : v);
      const int cls = bit_length(mag);
      if (cls > kMaxClass) {
        throw ValidationError("coefficient magnitude exceeds coding range");
      }
      AdaptiveModel &model = classes_[context_of(i)];
      enc.encode(model.cum(cls), model.freq(cls), model.total());
      model.update(cls);
      if (cls > 0) {
        put_bit(enc, v < 0 ? 1 : 0);
        for (int b = cls - 2; b >= 0; --b) {
          put_bit(enc, (mag >> b) & 1);
        }
      }
    }
  }

  void decode_block(RangeDecoder &dec, std::int64_t *quantized) {
    for (int i = 0; i < 64; ++i) {
      AdaptiveModel &model = classes_[context_of(i)];
      std::uint32_t cum = 0;
      const int cls = model.find(dec.decode_target(model.total()), &cum);
      dec.consume(cum, model.freq(cls));
      model.update(cls);
      std::int64_t v = 0;
      if (cls > 0) {
        const int negative = get_bit(dec);
        std::uint32_t mag = 1;
        for (int b = cls - 2; b >= 0; --b) {
          mag = (mag << 1) | static_cast<std::uint32_t>(get_bit(dec));
        }
        v = negative ? -static_cast<std::int64_t>(mag)
                     : static_cast<std::int64_t>(mag);
      }
      quantized[kZigzag[i]] = v;
    }
  }

 private:
  void put_bit(RangeEncoder &enc, int bit) {
    enc.encode(bit_.cum(bit), bit_.freq(bit), bit_.total());
  }
  int get_bit(RangeDecoder &dec) {
    const int bit = bit_.find(dec.decode_target(bit_.total()));
    dec.consume(bit_.cum(bit), bit_.freq(bit));
    return bit;
  }

  std::vector<AdaptiveModel> classes_;
  FreqModel bit_;
};

}  // namespace

int quant_step(int quality, int band) {
  if (quality < 0 || quality > kMaxQuality) {
    throw ValidationError("quality must be in [0, 9]");
  }
  if (quality == kMaxQuality) {
    return 1;
  }
  const int ac = 8 << (8 - quality);
  return band == 0 ? ac / 2 : ac;
}

FramePayload encode_frame(const Frame &frame, CodecQuality quality) {
  if (frame.height <= 0 || frame.width <= 0) {
    throw ValidationError("cannot encode an empty frame");
  }
  const int ph = (frame.height + kDctBlock - 1) / kDctBlock * kDctBlock;
  const int pw = (frame.width + kDctBlock - 1) / kDctBlock * kDctBlock;

  RangeEncoder enc;
  CoefficientCoder coder;
  DctBlock pixels, coefs;
  std::int64_t quantized[64];

  for (int c = 0; c < frame.channels; ++c) {
    const Plane plane = padded_plane(frame, c, ph, pw);
    for (int by = 0; by < ph; by += kDctBlock) {
      for (int bx = 0; bx < pw; bx += kDctBlock) {
        for (int y = 0; y < kDctBlock; ++y) {
          for (int x = 0; x < kDctBlock; ++x) {
            pixels[y * kDctBlock + x] = plane.at(by + y, bx + x);
          }
        }
        forward_dct(pixels, &coefs);
        for (int i = 0; i < 64; ++i) {
          const std::int64_t ic = std::llround(coefs[i] * kCoefScale);
          quantized[i] = quantize_value(ic, quant_step(quality.level, i));
        }
        coder.encode_block(enc, quantized);
      }
    }
  }

  const Bytes body = enc.finish();
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(kDctBlock));
  w.u8(static_cast<std::uint8_t>(quality.level));
  w.u8(static_cast<std::uint8_t>(ph - frame.height));
  w.u8(static_cast<std::uint8_t>(pw - frame.width));
  w.u32(static_cast<std::uint32_t>(body.size()));
  w.raw(body);

  FramePayload payload;
  payload.data = w.take();
  payload.height = frame.height;
  payload.width = frame.width;
  payload.channels = frame.channels;
  return payload;
}

Frame decode_frame(const FramePayload &payload) {
  if (payload.height <= 0 || payload.width <= 0 ||
      (payload.channels != 1 && payload.channels != 3)) {
    throw ValidationError("payload is missing frame dimensions");
  }
  ByteReader r(payload.data);
  const int block = r.u8();
  if (block != kDctBlock) {
    throw ParseError("unsupported block size " + std::to_string(block), 0);
  }
  const int quality = r.u8();
  if (quality > kMaxQuality) {
    throw ParseError("quality level out of range", 1);
  }
  const int pad_bottom = r.u8();
  const int pad_right = r.u8();
  const std::uint32_t body_len = r.u32();
  const Bytes body = r.raw(body_len);
  if (!r.at_end()) {
    r.fail("trailing bytes after payload body");
  }

  const int ph = payload.height + pad_bottom;
  const int pw = payload.width + pad_right;
  if (ph % kDctBlock != 0 || pw % kDctBlock != 0) {
    throw ParseError("padding does not align to block size", 2);
  }

  RangeDecoder dec(body);
  CoefficientCoder coder;
  DctBlock coefs, pixels;
  std::int64_t quantized[64];

  Frame frame(payload.height, payload.width, payload.channels);
  for (int c = 0; c < payload.channels; ++c) {
    for (int by = 0; by < ph; by += kDctBlock) {
      for (int bx = 0; bx < pw; bx += kDctBlock) {
        coder.decode_block(dec, quantized);
        for (int i = 0; i < 64; ++i) {
          const std::int64_t ic = quantized[i] * quant_step(quality, i);
          coefs[i] = static_cast<double>(ic) / kCoefScale;
        }
        inverse_dct(coefs, &pixels);
        for (int y = 0; y < kDctBlock; ++y) {
          const int fy = by + y;
          if (fy >= frame.height) continue;
          for (int x = 0; x < kDctBlock; ++x) {
            const int fx = bx + x;
            if (fx >= frame.width) continue;
            long v = std::lround(pixels[y * kDctBlock + x] + 128.0);
            if (v < 0) v = 0;
            if (v > 255) v = 255;
            frame.at(c, fy, fx) = static_cast<std::uint8_t>(v);
          }
        }
      }
    }
  }
  return frame;
}

}  // namespace gvc
