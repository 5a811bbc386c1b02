// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include "lowlat/audit.hpp"
#include "lowlat/core.hpp"
#include "lowlat/enhance.hpp"

using namespace lowlat;

namespace {

StreamConfig ola(int la, int ls, int hop) {
  StreamConfig c;
  c.analysis_len = la;
  c.synthesis_len = ls;
  c.hop = hop;
  c.transform_size = 320;
  return c;
}

StreamConfig fbe(int hop) {
  StreamConfig c;
  c.mode = Mode::Fbe;
  c.hop = hop;
  c.analysis_len = c.synthesis_len = c.transform_size = 2 * hop;
  return c;
}

StreamConfig predict(int len, int hop, int ahead) {
  StreamConfig c = ola(len, len, hop);
  c.mode = Mode::PredictAhead;
  c.predict_frames = ahead;
  return c;
}

}  // namespace

TEST_CASE("measured latency equals the output window for overlap-add") {
  for (auto [la, ls, hop] : {std::tuple{320, 320, 160},
                             {160, 160, 80},
                             {80, 80, 40},
                             {48, 48, 24},
                             {320, 160, 80},
                             {320, 80, 40},
                             {320, 48, 24}}) {
    const LatencyAudit audit = measure_latency(ola(la, ls, hop));
    CHECK(audit.measured_total == ls);
    CHECK(audit.match);
  }
}

TEST_CASE("measured latency equals the hop for one-frame prediction") {
  const LatencyAudit audit = measure_latency(predict(96, 48, 1));
  CHECK(audit.measured_total == 48);
  CHECK(audit.declared.algorithmic == 0);
  CHECK(audit.match);
}

TEST_CASE("measured latency equals the hop for fbe") {
  for (int hop : {160, 80, 40}) {
    const LatencyAudit audit = measure_latency(fbe(hop));
    CHECK(audit.measured_total == hop);
    CHECK(audit.match);
  }
}

TEST_CASE("the audit only accepts identity enhancers") {
  IdentityEnhancer identity;
  ZeroEnhancer zero;
  CHECK(measure_latency(ola(320, 320, 160), identity).match);
  CHECK_THROWS_WITH_AS(measure_latency(ola(320, 320, 160), zero),
                       "latency audit requires an identity enhancer", Error);
}

TEST_CASE("macs estimate scales inversely with the hop") {
  const double per_frame = 2.30265e6;
  const double base = macs_estimate(per_frame, ola(320, 320, 160));
  CHECK(macs_estimate(per_frame, ola(160, 160, 80)) == 2.0 * base);
  CHECK(macs_estimate(per_frame, ola(80, 80, 40)) == 4.0 * base);

  // one-second hop: MACs/sec equals the per-frame cost
  StreamConfig second = ola(32000, 32000, 16000);
  second.transform_size = 32000;
  CHECK(macs_estimate(per_frame, second) == per_frame);
}

TEST_CASE("macs estimate is linear in the per-frame cost") {
  const StreamConfig c = ola(320, 320, 160);
  const double one = macs_estimate(1.0, c);
  for (double m : {2.0, 16.0, 1024.0, 3.5e9})
    CHECK(macs_estimate(m, c) == m * one);
  CHECK_THROWS_AS(macs_estimate(0.0, c), Error);
  CHECK_THROWS_AS(macs_estimate(-5.0, c), Error);
}

TEST_CASE("hop ratios reproduce the published compute ratios within 1%") {
  const double per_frame = 1.0;
  const double base = macs_estimate(per_frame, ola(320, 320, 160));
  const double r10 = macs_estimate(per_frame, ola(160, 160, 80)) / base;
  const double r5 = macs_estimate(per_frame, ola(80, 80, 40)) / base;
  const double r3 = macs_estimate(per_frame, ola(48, 48, 24)) / base;
  CHECK(std::abs(r10 / (460.53 / 230.27) - 1.0) <= 0.01);
  CHECK(std::abs(r5 / (921.06 / 230.27) - 1.0) <= 0.01);
  CHECK(std::abs(r3 / (1540.0 / 230.27) - 1.0) <= 0.01);
}

TEST_CASE("audit serializes to JSON") {
  const StreamConfig c = ola(320, 320, 160);
  const LatencyAudit audit = measure_latency(c);
  const nlohmann::json doc = audit_to_json(c, audit);
  CHECK(doc.at("match").get<bool>());
  CHECK(doc.at("declared").at("total").get<int>() == 320);
  CHECK(doc.at("measured").at("total").get<int>() == 320);
  CHECK(doc.at("declared").at("total_ms").get<double>() == 20.0);
  CHECK(doc.at("config").at("hop_ms").get<double>() == 10.0);
}
