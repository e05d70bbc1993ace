#include "gvc/range_coder.hpp"

#include <algorithm>

#include "gvc/error.hpp"

namespace gvc {

void RangeEncoder::shift_low() {
  if (static_cast<std::uint32_t>(low_) < 0xFF000000u || (low_ >> 32) != 0) {
    const std::uint8_t carry = static_cast<std::uint8_t>(low_ >> 32);
    std::uint8_t byte = cache_;
    do {
      out_.push_back(static_cast<std::uint8_t>(byte + carry));
      byte = 0xFF;
    } while (--cache_size_ != 0);
    cache_ = static_cast<std::uint8_t>(low_ >> 24);
  }
  ++cache_size_;
  low_ = (low_ & 0x00FFFFFFu) << 8;
}

void RangeEncoder::encode(std::uint32_t cum, std::uint32_t freq,
                          std::uint32_t total) {
  if (freq == 0 || total > kMaxTotal || cum + freq > total) {
    throw ValidationError("range coder slot outside the model");
  }
  const std::uint32_t r = range_ / total;
  low_ += static_cast<std::uint64_t>(cum) * r;
  range_ = r * freq;
  while (range_ < kRcTop) {
    shift_low();
    range_ <<= 8;
  }
}

Bytes RangeEncoder::finish() {
  for (int i = 0; i < 5; ++i) {
    shift_low();
  }
  return std::move(out_);
}

RangeDecoder::RangeDecoder(const Bytes &data) : data_(data) {
  for (int i = 0; i < 5; ++i) {
    code_ = (code_ << 8) | next_byte();
  }
}

std::uint8_t RangeDecoder::next_byte() {
  // Reads past the flushed tail return zero; the encoder's 5-byte flush
  // guarantees every significant bit is already in the stream.
  if (pos_ < data_.size()) {
    return data_[pos_++];
  }
  ++pos_;
  return 0;
}

std::uint32_t RangeDecoder::decode_target(std::uint32_t total) {
  if (total == 0 || total > kMaxTotal) {
    throw ValidationError("range coder model total out of bounds");
  }
  range_ /= total;
  std::uint32_t target = code_ / range_;
  return std::min(target, total - 1);
}

void RangeDecoder::consume(std::uint32_t cum, std::uint32_t freq) {
  code_ -= cum * range_;
  range_ *= freq;
  while (range_ < kRcTop) {
    code_ = (code_ << 8) | next_byte();
    range_ <<= 8;
  }
}

FreqModel::FreqModel(std::vector<std::uint32_t> freqs) {
  if (freqs.empty()) {
    throw ValidationError("frequency model needs a nonempty alphabet");
  }
  cum_.resize(freqs.size() + 1);
  cum_[0] = 0;
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    if (freqs[i] == 0) {
      throw ValidationError("model probabilities must be positive");
    }
    cum_[i + 1] = cum_[i] + freqs[i];
  }
  if (cum_.back() > kMaxTotal) {
    throw ValidationError("model total exceeds fixed-point capacity");
  }
}

FreqModel FreqModel::uniform(std::uint32_t alphabet_size) {
  if (alphabet_size == 0 || alphabet_size > kMaxTotal) {
    throw ValidationError("uniform model alphabet out of range");
  }
  return FreqModel(std::vector<std::uint32_t>(alphabet_size, 1));
}

int FreqModel::find(std::uint32_t target) const {
  // cum_ is strictly increasing; locate the slot containing target.
  auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
  return static_cast<int>(it - cum_.begin()) - 1;
}

AdaptiveModel::AdaptiveModel(int alphabet_size)
    : freq_(alphabet_size, 1), total_(static_cast<std::uint32_t>(alphabet_size)) {
  if (alphabet_size <= 0 ||
      static_cast<std::uint32_t>(alphabet_size) > kMaxTotal) {
    throw ValidationError("adaptive model alphabet out of range");
  }
}

std::uint32_t AdaptiveModel::cum(int symbol) const {
  std::uint32_t c = 0;
  for (int s = 0; s < symbol; ++s) {
    c += freq_[s];
  }
  return c;
}

int AdaptiveModel::find(std::uint32_t target, std::uint32_t *cum_out) const {
  std::uint32_t c = 0;
  for (std::size_t s = 0; s < freq_.size(); ++s) {
    if (target < c + freq_[s]) {
      *cum_out = c;
      return static_cast<int>(s);
    }
    c += freq_[s];
  }
  throw ValidationError("decode target outside adaptive model");
}

void AdaptiveModel::update(int symbol) {
  freq_[symbol] += kIncrement;
  total_ += kIncrement;
  if (total_ > kMaxTotal) {
    total_ = 0;
    for (std::uint32_t &f : freq_) {
      f = (f + 1) >> 1;
      total_ += f;
    }
  }
}

Bytes range_encode(const std::vector<int> &symbols, const FreqModel &model) {
  RangeEncoder enc;
  for (int s : symbols) {
    if (s < 0 || s >= model.size()) {
      throw ValidationError("symbol " + std::to_string(s) +
                            " outside model alphabet of " +
                            std::to_string(model.size()));
    }
    enc.encode(model.cum(s), model.freq(s), model.total());
  }
  return enc.finish();
}

std::vector<int> range_decode(const Bytes &data, const FreqModel &model,
                              std::size_t count) {
  RangeDecoder dec(data);
  std::vector<int> symbols;
  symbols.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint32_t target = dec.decode_target(model.total());
    const int s = model.find(target);
    dec.consume(model.cum(s), model.freq(s));
    symbols.push_back(s);
  }
  return symbols;
}

}  // namespace gvc
