#ifndef GVC_RANGE_CODER_HPP_
#define GVC_RANGE_CODER_HPP_

#include <cstdint>
#include <vector>

#include "gvc/bytes.hpp"

namespace gvc {

// Byte-oriented range coder with carry propagation (LZMA lineage).
// Probabilities are fixed-point frequency counts; total must stay at or
// below kMaxTotal so the coder's 32-bit range never underflows. The
// decoder replays the encoder's arithmetic exactly: both sides must see
// identical models in identical order.

inline constexpr std::uint32_t kRcTop = 1u << 24;
inline constexpr std::uint32_t kMaxTotal = 1u << 16;

class RangeEncoder {
 public:
  // Encode a symbol occupying [cum, cum + freq) of [0, total).
  void encode(std::uint32_t cum, std::uint32_t freq, std::uint32_t total);
  Bytes finish();

 private:
  void shift_low();

  std::uint64_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint8_t cache_ = 0;
  std::uint64_t cache_size_ = 1;
  Bytes out_;
};

class RangeDecoder {
 public:
  explicit RangeDecoder(const Bytes &data);

  // Scaled value used to locate the current symbol's frequency slot;
  // always < total.
  std::uint32_t decode_target(std::uint32_t total);
  // Must be called with the slot found for the target.
  void consume(std::uint32_t cum, std::uint32_t freq);

  std::size_t bytes_read() const { return pos_; }

 private:
  std::uint8_t next_byte();

  const Bytes &data_;
  std::size_t pos_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint32_t code_ = 0;
};

// Static frequency model over a contiguous alphabet [0, size).
class FreqModel {
 public:
  // Every frequency must be positive; the total must fit kMaxTotal.
  explicit FreqModel(std::vector<std::uint32_t> freqs);

  // Uniform model, handy for raw bits and escape values.
  static FreqModel uniform(std::uint32_t alphabet_size);

  int size() const { return static_cast<int>(cum_.size()) - 1; }
  std::uint32_t total() const { return cum_.back(); }
  std::uint32_t cum(int symbol) const { return cum_[symbol]; }
  std::uint32_t freq(int symbol) const {
    return cum_[symbol + 1] - cum_[symbol];
  }
  int find(std::uint32_t target) const;

 private:
  std::vector<std::uint32_t> cum_;  // size + 1 entries, cum_[0] = 0
};

// Adaptive model: symmetric count updates on both coder sides keep the
// streams in lockstep. Counts start at 1, grow by kIncrement, and halve
// (floored at 1) when the total would exceed kMaxTotal.
class AdaptiveModel {
 public:
  explicit AdaptiveModel(int alphabet_size);

  static constexpr std::uint32_t kIncrement = 24;

  int size() const { return static_cast<int>(freq_.size()); }
  std::uint32_t total() const { return total_; }
  std::uint32_t cum(int symbol) const;
  std::uint32_t freq(int symbol) const { return freq_[symbol]; }
  int find(std::uint32_t target, std::uint32_t *cum_out) const;
  void update(int symbol);

 private:
  std::vector<std::uint32_t> freq_;
  std::uint32_t total_;
};

// One-shot helpers over a static model.
Bytes range_encode(const std::vector<int> &symbols, const FreqModel &model);
std::vector<int> range_decode(const Bytes &data, const FreqModel &model,
                              std::size_t count);

}  // namespace gvc

#endif  // GVC_RANGE_CODER_HPP_
