#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gvc/dct.hpp"
#include "gvc/error.hpp"
#include "gvc/intra_codec.hpp"
#include "test_util.hpp"

using namespace gvc;

namespace {

double mse(const Frame &a, const Frame &b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double d = static_cast<double>(a.samples[i]) - b.samples[i];
    acc += d * d;
  }
  return acc / static_cast<double>(a.samples.size());
}

}  // namespace

TEST_CASE("dct basis is orthonormal") {
  for (int k = 0; k < kDctBlock; ++k) {
    for (int m = 0; m < kDctBlock; ++m) {
      double dot = 0.0;
      for (int n = 0; n < kDctBlock; ++n) {
        dot += kDctBasis[k][n] * kDctBasis[m][n];
      }
      CHECK(dot == doctest::Approx(k == m ? 1.0 : 0.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("inverse dct undoes the forward transform") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    DctBlock pixels, coefs, back;
    for (double &p : pixels) {
      p = static_cast<double>(rng() % 256) - 128.0;
    }
    forward_dct(pixels, &coefs);
    inverse_dct(coefs, &back);
    for (int i = 0; i < 64; ++i) {
      CHECK(back[i] == doctest::Approx(pixels[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("quantization steps are monotone in quality for every band") {
  for (int band : {0, 1, 10, 63}) {
    for (int q = 0; q < kMaxQuality; ++q) {
      CHECK(quant_step(q + 1, band) <= quant_step(q, band));
    }
  }
  CHECK(quant_step(kMaxQuality, 0) == 1);
  CHECK(quant_step(kMaxQuality, 5) == 1);
  CHECK_THROWS_AS(quant_step(10, 0), ValidationError);
}

TEST_CASE("constant frames decode exactly at max quality") {
  Frame gray(16, 16, 1);
  std::fill(gray.samples.begin(), gray.samples.end(), 131);
  const FramePayload payload = encode_frame(gray, {kMaxQuality});
  CHECK(decode_frame(payload) == gray);
  // one DC class symbol per block dominates; the stream stays tiny
  CHECK(payload.data.size() < 64);
}

TEST_CASE("max quality is lossless on arbitrary frames") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const Frame f = gvc_test::random_frame(16, 24, 1, rng);
    CHECK(decode_frame(encode_frame(f, {kMaxQuality})) == f);
  }
  const Frame f3 = gvc_test::random_frame(8, 8, 3, rng);
  CHECK(decode_frame(encode_frame(f3, {kMaxQuality})) == f3);
}

TEST_CASE("dimensions off the block grid pad and round-trip") {
  std::mt19937_64 rng(6);
  const Frame f = gvc_test::random_frame(10, 6, 1, rng);
  const FramePayload payload = encode_frame(f, {kMaxQuality});
  const Frame back = decode_frame(payload);
  CHECK(back == f);
}

TEST_CASE("lower quality never improves mse and never grows the payload") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const Frame f = gvc_test::smooth_frame(16, 16, 1, rng);
    double prev_mse = -1.0;
    std::size_t prev_bytes = SIZE_MAX;
    for (int q = kMaxQuality; q >= 0; --q) {
      const FramePayload payload = encode_frame(f, {q});
      const double m = mse(decode_frame(payload), f);
      CHECK(m >= prev_mse);
      CHECK(payload.data.size() <= prev_bytes);
      prev_mse = m;
      prev_bytes = payload.data.size();
    }
  }
}

TEST_CASE("noise at the coarsest quality still round-trips validly") {
  std::mt19937_64 rng(9);
  const Frame f = gvc_test::random_frame(16, 16, 1, rng);
  const FramePayload payload = encode_frame(f, {0});
  const Frame back = decode_frame(payload);
  CHECK(back.same_shape(f));
  // no compression guarantee on noise; only validity is asserted
}

TEST_CASE("reencoding a decoded frame is a fixed point") {
  std::mt19937_64 rng(10);
  for (int q : {4, 6, 9}) {
    const Frame f = gvc_test::smooth_frame(16, 16, 1, rng);
    const Frame once = decode_frame(encode_frame(f, {q}));
    const Frame twice = decode_frame(encode_frame(once, {q}));
    CHECK(twice == once);
  }
}

TEST_CASE("decoding is deterministic") {
  std::mt19937_64 rng(12);
  const Frame f = gvc_test::smooth_frame(16, 16, 3, rng);
  const FramePayload payload = encode_frame(f, {5});
  CHECK(decode_frame(payload) == decode_frame(payload));
}

TEST_CASE("truncated payloads fail to parse, never partially decode") {
  std::mt19937_64 rng(14);
  const Frame f = gvc_test::smooth_frame(16, 16, 1, rng);
  FramePayload payload = encode_frame(f, {5});
  payload.data.resize(payload.data.size() / 2);
  CHECK_THROWS_AS(decode_frame(payload), ParseError);

  FramePayload empty;
  empty.height = 16;
  empty.width = 16;
  empty.channels = 1;
  CHECK_THROWS_AS(decode_frame(empty), ParseError);
}

TEST_CASE("payload dimensions are required for decode") {
  std::mt19937_64 rng(15);
  FramePayload payload = encode_frame(gvc_test::smooth_frame(8, 8, 1, rng),
                                      {5});
  payload.channels = 0;
  CHECK_THROWS_AS(decode_frame(payload), ValidationError);
}
