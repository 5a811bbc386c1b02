// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lowlat/metrics.hpp"

#include <cmath>

#include "lowlat/transforms.hpp"
#include "lowlat/windows.hpp"

namespace lowlat {

namespace {

void check_lengths(const Signal& est, const Signal& ref) {
  if (est.size() != ref.size())
    throw Error("estimate and reference lengths differ: " +
                std::to_string(est.size()) + " vs " + std::to_string(ref.size()));
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double cap_db(double ratio_num, double ratio_den) {
  if (ratio_num <= 0.0) return -kMetricCapDb;
  if (ratio_den <= 0.0) return kMetricCapDb;
  const double db = 10.0 * std::log10(ratio_num / ratio_den);
  if (db > kMetricCapDb) return kMetricCapDb;
  if (db < -kMetricCapDb) return -kMetricCapDb;
  return db;
}

}  // namespace

double si_sdr(const Signal& est, const Signal& ref) {
  check_lengths(est, ref);
  const double ref_energy = dot(ref.samples, ref.samples);
  if (ref_energy <= 0.0) throw Error("si_sdr reference is all-zero");

  const double scale = dot(est.samples, ref.samples) / ref_energy;
  double target_energy = 0.0;
  double error_energy = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    const double target = scale * ref.samples[i];
    const double error = est.samples[i] - target;
    target_energy += target * target;
    error_energy += error * error;
  }
  return cap_db(target_energy, error_energy);
}

double snr(const Signal& est, const Signal& ref) {
  check_lengths(est, ref);
  const double ref_energy = dot(ref.samples, ref.samples);
  if (ref_energy <= 0.0) throw Error("snr reference is all-zero");
  double error_energy = 0.0;
  for (std::size_t i = 0; i < est.size(); ++i) {
    const double e = ref.samples[i] - est.samples[i];
    error_energy += e * e;
  }
  return cap_db(ref_energy, error_energy);
}

double log_spectral_distance(const Signal& est, const Signal& ref,
                             const StreamConfig& config) {
  check_lengths(est, ref);
  require_valid(config);
  constexpr double kEps = 1e-8;

  StreamConfig c = config;
  if (c.mode == Mode::Fbe) {
    c.mode = Mode::OverlapAdd;  // diagnostic geometry: 2P window, hop P
    c.predict_frames = 0;
  }
  const FrameAnalyzer analyzer(c, sqrt_hann(c.analysis_len),
                               TransformBasis::canonical());
  const std::size_t frames = frame_count(est.size(), c);
  if (frames == 0) throw Error("signal too short for one analysis frame");

  double total = 0.0;
  for (std::size_t k = 0; k < frames; ++k) {
    const SpectralFrame fe = analyzer.analyze_at(est, k);
    const SpectralFrame fr = analyzer.analyze_at(ref, k);
    double acc = 0.0;
    for (std::size_t f = 0; f < fe.size(); ++f) {
      const double gap = 20.0 * std::log10(std::abs(fe.bins[f]) + kEps) -
                         20.0 * std::log10(std::abs(fr.bins[f]) + kEps);
      acc += gap * gap;
    }
    total += std::sqrt(acc / double(fe.size()));
  }
  return total / double(frames);
}

MetricReport evaluate(const std::string& id, const Signal& est,
                      const Signal& ref, const StreamConfig& config) {
  MetricReport report;
  report.id = id;
  report.si_sdr_db = si_sdr(est, ref);
  report.snr_db = snr(est, ref);
  report.lsd_db = log_spectral_distance(est, ref, config);
  return report;
}

}  // namespace lowlat
