// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LOWLAT_AUDIT_HPP_
#define LOWLAT_AUDIT_HPP_

#include <json.hpp>

#include "lowlat/core.hpp"

namespace lowlat {

class Enhancer;

/// Declared vs empirically measured total latency of a pipeline.
struct LatencyAudit {
  int measured_total = 0;  // samples
  LatencySpec declared;
  bool match = false;
};

/// Causal-availability simulation with identity processing: input sample t
/// is available once t+1 samples have arrived; a frame is processable when
/// its last analysis sample is available; output sample n is emittable once
/// every frame whose synthesis region covers n has been processed (for
/// PredictAhead, slot j is committed when input frame j-a completes).
/// Measured total latency is the max over steady-state n of emission(n) - n.
/// Deterministic frame-scheduling simulation; per-frame compute time is
/// excluded by construction.
LatencyAudit measure_latency(const StreamConfig& config);

/// Overload that insists on identity semantics: a non-identity enhancer is
/// rejected, since the audit only isolates structural delay.
LatencyAudit measure_latency(const StreamConfig& config, const Enhancer& enhancer);

/// Multiply-accumulates per second of audio for a fixed per-frame cost:
/// per_frame_macs * sample_rate / hop.
double macs_estimate(double per_frame_macs, const StreamConfig& config);

nlohmann::json audit_to_json(const StreamConfig& config, const LatencyAudit& audit);

}  // namespace lowlat

#endif  // LOWLAT_AUDIT_HPP_
