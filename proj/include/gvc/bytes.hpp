#ifndef GVC_BYTES_HPP_
#define GVC_BYTES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "gvc/error.hpp"

namespace gvc {

using Bytes = std::vector<std::uint8_t>;

// Little-endian append-only buffer.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u16(std::uint16_t v) {
    for (int i = 0; i < 2; ++i) buf_.push_back((v >> (8 * i)) & 0xFF);
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back((v >> (8 * i)) & 0xFF);
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back((v >> (8 * i)) & 0xFF);
  }
  void f64(double v) {
    std::uint64_t bits;
    static_assert(sizeof(bits) == sizeof(v));
    __builtin_memcpy(&bits, &v, sizeof(bits));
    u64(bits);
  }
  void raw(const Bytes &data) { buf_.insert(buf_.end(), data.begin(), data.end()); }
  void raw(const std::uint8_t *data, std::size_t n) {
    buf_.insert(buf_.end(), data, data + n);
  }

  const Bytes &bytes() const { return buf_; }
  Bytes take() { return std::move(buf_); }
  std::size_t size() const { return buf_.size(); }

 private:
  Bytes buf_;
};

// Little-endian cursor over a byte span. Throws ParseError with the
// offending offset on truncation.
class ByteReader {
 public:
  explicit ByteReader(const Bytes &data) : data_(data) {}

  std::uint8_t u8() {
    need(1);
    return data_[pos_++];
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = 0;
    for (int i = 0; i < 2; ++i) v |= std::uint16_t(data_[pos_++]) << (8 * i);
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(data_[pos_++]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(data_[pos_++]) << (8 * i);
    return v;
  }
  double f64() {
    std::uint64_t bits = u64();
    double v;
    __builtin_memcpy(&v, &bits, sizeof(v));
    return v;
  }
  Bytes raw(std::size_t n) {
    need(n);
    Bytes out(data_.begin() + pos_, data_.begin() + pos_ + n);
    pos_ += n;
    return out;
  }

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return data_.size() - pos_; }
  bool at_end() const { return pos_ == data_.size(); }

  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError(msg, pos_);
  }

 private:
  void need(std::size_t n) {
    if (data_.size() - pos_ < n) {
      throw ParseError("truncated input, need " + std::to_string(n) +
                           " more bytes",
                       pos_);
    }
  }

  const Bytes &data_;
  std::size_t pos_ = 0;
};

}  // namespace gvc

#endif  // GVC_BYTES_HPP_
