// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lowlat/audit.hpp"

#include <algorithm>
#include <vector>

#include "lowlat/enhance.hpp"

namespace lowlat {

LatencyAudit measure_latency(const StreamConfig& config) {
  require_valid(config);
  LatencyAudit audit;
  audit.declared = derive_latency(config);

  const std::int64_t hop = config.hop;
  std::int64_t measured = 0;

  if (config.mode == Mode::Fbe) {
    // Chunk k completes when (k+1)P samples have arrived and emits output
    // [kP, (k+1)P) at that instant.
    const std::int64_t chunks = 32;
    for (std::int64_t k = 0; k < chunks; ++k) {
      const std::int64_t emit = (k + 1) * hop;
      for (std::int64_t n = k * hop; n < (k + 1) * hop; ++n)
        measured = std::max(measured, emit - n);
    }
  } else {
    const std::int64_t la = config.analysis_len;
    const std::int64_t ls = config.synthesis_len;
    const std::int64_t lookahead =
        config.mode == Mode::PredictAhead ? config.predict_frames : 0;
    const std::int64_t len = la + 64 * hop;
    const std::int64_t slots = (len - la) / hop + 1;

    // emission[n]: arrival count at which the last frame covering output
    // sample n has been processed. Slot j commits when input frame j-a is
    // complete, i.e. at count (j-a)P + La.
    std::vector<std::int64_t> emission(std::size_t(len), -1);
    for (std::int64_t j = 0; j < slots; ++j) {
      const std::int64_t commit = std::max<std::int64_t>((j - lookahead) * hop + la, 0);
      const std::int64_t start = j * hop + la - ls;
      for (std::int64_t n = start; n < start + ls && n < len; ++n)
        emission[std::size_t(n)] = std::max(emission[std::size_t(n)], commit);
    }
    for (std::int64_t n = 0; n < len; ++n) {
      if (emission[std::size_t(n)] < 0) continue;
      measured = std::max(measured, emission[std::size_t(n)] - n);
    }
  }

  audit.measured_total = int(measured);
  audit.match = audit.measured_total == audit.declared.total;
  return audit;
}

LatencyAudit measure_latency(const StreamConfig& config, const Enhancer& enhancer) {
  if (!enhancer.is_identity())
    throw Error("latency audit requires an identity enhancer");
  return measure_latency(config);
}

double macs_estimate(double per_frame_macs, const StreamConfig& config) {
  require_valid(config);
  if (per_frame_macs <= 0.0) throw Error("per-frame MACs must be positive");
  return per_frame_macs * config.sample_rate / config.hop;
}

nlohmann::json audit_to_json(const StreamConfig& config, const LatencyAudit& audit) {
  nlohmann::json doc;
  doc["config"] = config_to_json(config);
  doc["declared"] = {{"algorithmic", audit.declared.algorithmic},
                     {"buffer", audit.declared.buffer},
                     {"total", audit.declared.total},
                     {"total_ms", audit.declared.total_ms()}};
  doc["measured"] = {
      {"total", audit.measured_total},
      {"total_ms", audit.measured_total * 1000.0 / config.sample_rate}};
  doc["match"] = audit.match;
  return doc;
}

}  // namespace lowlat
