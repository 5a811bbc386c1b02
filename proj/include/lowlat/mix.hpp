// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LOWLAT_MIX_HPP_
#define LOWLAT_MIX_HPP_

#include <cstdint>

#include "lowlat/core.hpp"

namespace lowlat {

struct MixResult {
  Signal mixture;
  Signal scaled_noise;
  double noise_gain = 0.0;  // alpha
};

/// Active power: mean square over 10 ms frames whose RMS is within 60 dB of
/// the loudest frame. For constant-envelope signals this equals the plain
/// mean square.
double active_power(const Signal& signal);

/// Scales noise by alpha = sqrt(P_s / (P_n * 10^(snr/10))) using active
/// powers and returns mixture = speech + alpha * noise. Noise is looped or
/// truncated to the speech length. Silent speech or noise is rejected.
MixResult mix(const Signal& speech, const Signal& noise, double snr_db);

/// Deterministic desk-scale test material: a harmonic, amplitude-modulated
/// speech-like signal and a stationary colored-noise signal.
Signal synth_speech(double seconds, int sample_rate, std::uint64_t seed);
Signal synth_noise(double seconds, int sample_rate, std::uint64_t seed);

}  // namespace lowlat

#endif  // LOWLAT_MIX_HPP_
