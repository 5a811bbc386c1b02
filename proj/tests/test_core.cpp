// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <random>

#include "lowlat/core.hpp"

using namespace lowlat;

namespace {

StreamConfig ola(int la, int ls, int hop, int n = 0) {
  StreamConfig c;
  c.analysis_len = la;
  c.synthesis_len = ls;
  c.hop = hop;
  c.transform_size = n > 0 ? n : la;
  return c;
}

}  // namespace

TEST_CASE("derive_latency overlap-add geometry") {
  const LatencySpec spec = derive_latency(ola(320, 320, 160));
  CHECK(spec.algorithmic == 160);
  CHECK(spec.buffer == 160);
  CHECK(spec.total == 320);
  CHECK(spec.total_ms() == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("derive_latency asymmetric window") {
  const LatencySpec spec = derive_latency(ola(320, 80, 40));
  CHECK(spec.total == 80);
  CHECK(spec.total_ms() == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("derive_latency one-frame prediction at 50% overlap") {
  StreamConfig c = ola(96, 96, 48, 320);
  c.mode = Mode::PredictAhead;
  c.predict_frames = 1;
  const LatencySpec spec = derive_latency(c);
  CHECK(spec.algorithmic == 0);
  CHECK(spec.buffer == 48);
  CHECK(spec.total == 48);
  CHECK(spec.total_ms() == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("derive_latency fbe is buffer-only") {
  StreamConfig c;
  c.mode = Mode::Fbe;
  c.hop = 40;
  c.analysis_len = c.synthesis_len = c.transform_size = 80;
  const LatencySpec spec = derive_latency(c);
  CHECK(spec.algorithmic == 0);
  CHECK(spec.total == 40);
}

TEST_CASE("derive_latency is pure") {
  const StreamConfig c = ola(320, 160, 80);
  const LatencySpec a = derive_latency(c);
  const LatencySpec b = derive_latency(c);
  CHECK(a.total == b.total);
  CHECK(a.algorithmic == b.algorithmic);
  CHECK(a.buffer == b.buffer);
}

TEST_CASE("validate_config names the first violated constraint") {
  CHECK(*validate_config(ola(160, 320, 80, 512)) ==
        "synthesis window exceeds analysis window");
  CHECK(*validate_config(ola(320, 320, 0)) == "hop must be positive");
  CHECK(!validate_config(ola(320, 320, 160, 512)));  // zero-padding is fine
  CHECK(*validate_config(ola(320, 320, 160, 160)) ==
        "analysis window exceeds transform size");

  StreamConfig bad = ola(320, 160, 200);
  CHECK(*validate_config(bad) == "hop exceeds synthesis window");

  StreamConfig predict = ola(96, 96, 48, 320);
  predict.mode = Mode::PredictAhead;
  CHECK(*validate_config(predict) ==
        "predict mode requires at least one lookahead frame");
  predict.predict_frames = 1;
  predict.synthesis_len = 96;
  predict.hop = 32;
  CHECK(*validate_config(predict) ==
        "predict mode requires 50% overlap (synthesis length = 2*hop)");

  StreamConfig rate = ola(320, 320, 160);
  rate.sample_rate = 0;
  CHECK(*validate_config(rate) == "sample rate must be positive");
}

TEST_CASE("invalid configs are rejected with the violation message") {
  CHECK_THROWS_WITH_AS(derive_latency(ola(320, 320, 0)), "hop must be positive",
                       Error);
}

TEST_CASE("50% overlap latency equals the output window length") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> halves(8, 400);
  for (int trial = 0; trial < 200; ++trial) {
    const int hop = halves(rng);
    const int ls = 2 * hop;
    const int la = ls + 2 * (halves(rng) % 50);
    const LatencySpec spec = derive_latency(ola(la, ls, hop, la));
    CHECK(spec.total == ls);
  }
}

TEST_CASE("millisecond conversion is exact at 16 kHz") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> halves(1, 4000);
  for (int trial = 0; trial < 200; ++trial) {
    const int hop = halves(rng);
    const StreamConfig c = ola(2 * hop + 64, 2 * hop, hop, 2 * hop + 64);
    const LatencySpec spec = derive_latency(c);
    CHECK(spec.total_ms() * c.sample_rate == double(spec.total) * 1000.0);
  }
}

TEST_CASE("frame counting") {
  const StreamConfig c = ola(320, 320, 160);
  CHECK(frame_count(0, c) == 0);
  CHECK(frame_count(319, c) == 0);  // shorter than a window: no frames
  CHECK(frame_count(320, c) == 1);
  CHECK(frame_count(480, c) == 2);
  CHECK(frame_count(16000, c) == (16000 - 320) / 160 + 1);
}

TEST_CASE("config JSON round trip") {
  nlohmann::json doc = {{"sample_rate", 16000}, {"analysis_ms", 20},
                        {"synthesis_ms", 5},    {"hop_ms", 2.5},
                        {"transform_size", 320}, {"mode", "overlap_add"}};
  const StreamConfig c = config_from_json(doc);
  CHECK(c.analysis_len == 320);
  CHECK(c.synthesis_len == 80);
  CHECK(c.hop == 40);

  const StreamConfig back = config_from_json(config_to_json(c));
  CHECK(back == c);
}

TEST_CASE("config JSON requires exact millisecond conversion") {
  nlohmann::json doc = {{"sample_rate", 16000}, {"analysis_ms", 20},
                        {"synthesis_ms", 20},   {"hop_ms", 0.7},
                        {"transform_size", 320}, {"mode", "overlap_add"}};
  CHECK_THROWS_AS(config_from_json(doc), Error);  // 11.2 samples
}

TEST_CASE("fbe config JSON omits window fields") {
  nlohmann::json doc = {{"sample_rate", 16000}, {"hop_ms", 2.5}, {"mode", "fbe"}};
  const StreamConfig c = config_from_json(doc);
  CHECK(c.mode == Mode::Fbe);
  CHECK(c.hop == 40);
}

TEST_CASE("config JSON missing keys") {
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"mode", "overlap_add"}}), Error);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"hop_ms", 10},
                                                  {"mode", "overlap_add"}}),
                  Error);
  CHECK_THROWS_AS(mode_from_name("wavelet"), Error);
}
