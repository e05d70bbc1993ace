#ifndef GVC_ERROR_HPP_
#define GVC_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gvc {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Invalid argument or violated precondition.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string &msg) : Error(msg) {}
};

// File / stream access failure.
class IoError : public Error {
 public:
  explicit IoError(const std::string &msg) : Error(msg) {}
};

// Malformed bytes. Carries the offset of the first offending byte.
class ParseError : public Error {
 public:
  ParseError(const std::string &msg, std::size_t byte_offset)
      : Error(msg + " (at byte " + std::to_string(byte_offset) + ")"),
        byte_offset(byte_offset) {}
  std::size_t byte_offset;
};

// Input dimensions do not match the data actually present.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string &msg) : Error(msg) {}
};

// Decoder cannot guarantee bit-exact regeneration (missing or
// incompatible checkpoint).
class ReproducibilityError : public Error {
 public:
  explicit ReproducibilityError(const std::string &msg) : Error(msg) {}
};

// Training produced a non-finite loss.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string &msg, double last_finite_loss)
      : Error(msg), last_finite_loss(last_finite_loss) {}
  double last_finite_loss;
};

}  // namespace gvc

#endif  // GVC_ERROR_HPP_
