#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gvc/error.hpp"
#include "gvc/range_coder.hpp"

using namespace gvc;

TEST_CASE("empty stream round-trips to empty") {
  const FreqModel model = FreqModel::uniform(16);
  const Bytes coded = range_encode({}, model);
  CHECK(range_decode(coded, model, 0).empty());
}

TEST_CASE("single symbol streams round-trip") {
  const FreqModel model({1, 99});
  for (int s : {0, 1}) {
    const std::vector<int> symbols{s};
    CHECK(range_decode(range_encode(symbols, model), model, 1) == symbols);
  }
}

TEST_CASE("model validation rejects zero probabilities and overflow") {
  CHECK_THROWS_AS(FreqModel({1, 0, 3}), ValidationError);
  CHECK_THROWS_AS(FreqModel(std::vector<std::uint32_t>(2, 40000)),
                  ValidationError);
  CHECK_THROWS_AS(FreqModel({}), ValidationError);
}

TEST_CASE("symbols outside the alphabet are rejected") {
  const FreqModel model = FreqModel::uniform(4);
  CHECK_THROWS_AS(range_encode({4}, model), ValidationError);
  CHECK_THROWS_AS(range_encode({-1}, model), ValidationError);
}

TEST_CASE("uniform 256-symbol streams code to ~1 byte per symbol") {
  std::mt19937_64 rng(11);
  const FreqModel model = FreqModel::uniform(256);
  const std::size_t n = 10000;
  std::vector<int> symbols(n);
  for (auto &s : symbols) {
    s = static_cast<int>(rng() % 256);
  }
  const Bytes coded = range_encode(symbols, model);
  CHECK(range_decode(coded, model, n) == symbols);
  // Shannon bound is exactly 8 bits/symbol here.
  CHECK(coded.size() <= n * 101 / 100);
  CHECK(coded.size() + n / 100 >= n);
}

TEST_CASE("a heavily skewed binary source codes near its entropy") {
  // H(0.99) = 0.0808 bits/symbol; allow 0.12 plus a flush constant.
  std::mt19937_64 rng(13);
  FreqModel model({64881, 655});  // p(0) ~ 0.99 in 16-bit fixed point
  const std::size_t n = 100000;
  std::vector<int> symbols(n);
  for (auto &s : symbols) {
    s = (rng() % 100) == 0 ? 1 : 0;
  }
  const Bytes coded = range_encode(symbols, model);
  CHECK(range_decode(coded, model, n) == symbols);
  CHECK(8.0 * static_cast<double>(coded.size()) <= 0.12 * n + 8.0 * 16);
}

TEST_CASE("random streams over random models round-trip exactly") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int alphabet = 2 + static_cast<int>(rng() % 64);
    std::vector<std::uint32_t> freqs(alphabet);
    for (auto &f : freqs) {
      f = 1 + static_cast<std::uint32_t>(rng() % 512);
    }
    const FreqModel model(freqs);
    const std::size_t n = rng() % 300;
    std::vector<int> symbols(n);
    for (auto &s : symbols) {
      // bias toward low symbols so the model mismatch is exercised
      s = static_cast<int>(std::min<std::uint64_t>(rng() % alphabet,
                                                   rng() % alphabet));
    }
    const Bytes coded = range_encode(symbols, model);
    CHECK(range_decode(coded, model, n) == symbols);
  }
}

TEST_CASE("adaptive models stay in lockstep across both sides") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const int alphabet = 2 + static_cast<int>(rng() % 20);
    const std::size_t n = 1 + rng() % 2000;
    std::vector<int> symbols(n);
    for (auto &s : symbols) {
      s = static_cast<int>(rng() % alphabet);
    }

    RangeEncoder enc;
    {
      AdaptiveModel model(alphabet);
      for (int s : symbols) {
        enc.encode(model.cum(s), model.freq(s), model.total());
        model.update(s);
      }
    }
    const Bytes coded = enc.finish();

    RangeDecoder dec(coded);
    AdaptiveModel model(alphabet);
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t cum = 0;
      const int s = model.find(dec.decode_target(model.total()), &cum);
      dec.consume(cum, model.freq(s));
      model.update(s);
      REQUIRE(s == symbols[i]);
    }
  }
}

TEST_CASE("adaptive rescale keeps totals bounded and counts positive") {
  AdaptiveModel model(8);
  for (int i = 0; i < 100000; ++i) {
    model.update(i % 3);
    REQUIRE(model.total() <= kMaxTotal);
  }
  std::uint32_t sum = 0;
  for (int s = 0; s < 8; ++s) {
    REQUIRE(model.freq(s) >= 1u);
    sum += model.freq(s);
  }
  CHECK(sum == model.total());
}
