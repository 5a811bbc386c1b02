// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LOWLAT_METRICS_HPP_
#define LOWLAT_METRICS_HPP_

#include <string>

#include "lowlat/core.hpp"

namespace lowlat {

/// Metric values are capped at +/-100 dB so perfect (or degenerate) results
/// stay finite and sortable.
inline constexpr double kMetricCapDb = 100.0;

/// Scale-invariant SDR: project est onto ref, return the target/error energy
/// ratio in dB. Invariant to positive scaling of est.
double si_sdr(const Signal& est, const Signal& ref);

/// Plain SNR: ||ref||^2 / ||ref - est||^2 in dB.
double snr(const Signal& est, const Signal& ref);

/// Mean over frames of the RMS log-magnitude spectral gap, in dB, using the
/// canonical analysis transform of the given config with a sqrt-Hann window.
double log_spectral_distance(const Signal& est, const Signal& ref,
                             const StreamConfig& config);

struct MetricReport {
  std::string id;
  double si_sdr_db = 0.0;
  double snr_db = 0.0;
  double lsd_db = 0.0;
};

MetricReport evaluate(const std::string& id, const Signal& est,
                      const Signal& ref, const StreamConfig& config);

}  // namespace lowlat

#endif  // LOWLAT_METRICS_HPP_
