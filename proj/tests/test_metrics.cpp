// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <cmath>
#include <random>

#include "lowlat/core.hpp"
#include "lowlat/metrics.hpp"
#include "oracles.hpp"

using namespace lowlat;

namespace {

Signal sig(std::vector<double> samples) {
  Signal s;
  s.samples = std::move(samples);
  return s;
}

}  // namespace

TEST_CASE("si_sdr caps perfect estimates") {
  const Signal ref = sig({0.3, -0.2, 0.9, 0.1});
  CHECK(si_sdr(ref, ref) == kMetricCapDb);
}

TEST_CASE("si_sdr hand-computed projection example") {
  // target = [1,0], error = [0,1]: equal powers, exactly 0 dB
  CHECK(si_sdr(sig({1.0, 1.0}), sig({1.0, 0.0})) == 0.0);
}

TEST_CASE("si_sdr is invariant to positive scaling of the estimate") {
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Signal ref = sig(oracles::random_vector(rng, 64));
    const Signal est = sig(oracles::random_vector(rng, 64));
    Signal scaled = est;
    const double alpha = scale(rng);
    for (double& v : scaled.samples) v *= alpha;
    CHECK(std::abs(si_sdr(scaled, ref) - si_sdr(est, ref)) <= 1e-9);
  }
}

TEST_CASE("si_sdr input validation") {
  CHECK_THROWS_AS(si_sdr(sig({1.0, 2.0}), sig({0.0, 0.0})), Error);
  CHECK_THROWS_AS(si_sdr(sig({1.0}), sig({1.0, 2.0})), Error);
}

TEST_CASE("si_sdr never exceeds the cap") {
  std::mt19937_64 rng(92);
  for (int trial = 0; trial < 50; ++trial) {
    const Signal ref = sig(oracles::random_vector(rng, 32));
    const Signal est = sig(oracles::random_vector(rng, 32));
    CHECK(si_sdr(est, ref) <= kMetricCapDb);
  }
}

TEST_CASE("snr of an orthogonal tenth-power error is 10 dB") {
  const std::size_t len = 100;
  Signal ref = sig(std::vector<double>(len, 1.0));
  Signal est = ref;
  const double c = std::sqrt(0.1);
  for (std::size_t i = 0; i < len; ++i)
    est.samples[i] += (i % 2 == 0 ? c : -c);  // orthogonal to the all-ones ref
  CHECK(snr(est, ref) == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(snr(ref, ref) == kMetricCapDb);
}

TEST_CASE("log spectral distance of identical signals is zero") {
  std::mt19937_64 rng(93);
  StreamConfig c;
  c.analysis_len = c.synthesis_len = c.transform_size = 320;
  c.hop = 160;
  const Signal x = sig(oracles::random_vector(rng, 4000));
  CHECK(log_spectral_distance(x, x, c) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("halving the signal shifts the log spectrum by 6.02 dB") {
  std::mt19937_64 rng(94);
  StreamConfig c;
  c.analysis_len = c.synthesis_len = c.transform_size = 320;
  c.hop = 160;
  const Signal ref = sig(oracles::random_vector(rng, 8000));
  Signal est = ref;
  for (double& v : est.samples) v *= 0.5;
  CHECK(log_spectral_distance(est, ref, c) ==
        doctest::Approx(20.0 * std::log10(2.0)).epsilon(5e-3));
}

TEST_CASE("metric report bundles the three metrics") {
  std::mt19937_64 rng(95);
  StreamConfig c;
  c.analysis_len = c.synthesis_len = c.transform_size = 320;
  c.hop = 160;
  const Signal ref = sig(oracles::random_vector(rng, 2000));
  const MetricReport report = evaluate("case", ref, ref, c);
  CHECK(report.id == "case");
  CHECK(report.si_sdr_db == kMetricCapDb);
  CHECK(report.snr_db == kMetricCapDb);
  CHECK(report.lsd_db == doctest::Approx(0.0).epsilon(1e-12));
}
