// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lowlat/mix.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace lowlat {

double active_power(const Signal& signal) {
  if (signal.samples.empty()) return 0.0;
  const std::size_t frame = std::max<std::size_t>(1, std::size_t(signal.sample_rate) / 100);

  std::vector<double> powers;
  double peak = 0.0;
  for (std::size_t start = 0; start < signal.size(); start += frame) {
    const std::size_t end = std::min(start + frame, signal.size());
    double acc = 0.0;
    for (std::size_t i = start; i < end; ++i)
      acc += signal.samples[i] * signal.samples[i];
    const double p = acc / double(end - start);
    powers.push_back(p);
    peak = std::max(peak, p);
  }
  if (peak <= 0.0) return 0.0;

  const double floor = peak * 1e-6;  // 60 dB below the loudest frame
  double total = 0.0;
  std::size_t active = 0;
  for (double p : powers) {
    if (p >= floor) {
      total += p;
      ++active;
    }
  }
  return active > 0 ? total / double(active) : 0.0;
}

MixResult mix(const Signal& speech, const Signal& noise, double snr_db) {
  if (speech.samples.empty()) throw Error("silent speech rejected");
  if (noise.samples.empty()) throw Error("silent noise rejected");
  if (speech.sample_rate != noise.sample_rate)
    throw Error("speech and noise sample rates differ");

  // Loop or truncate the noise to the speech length.
  Signal looped;
  looped.sample_rate = noise.sample_rate;
  looped.samples.resize(speech.size());
  for (std::size_t i = 0; i < speech.size(); ++i)
    looped.samples[i] = noise.samples[i % noise.size()];

  const double speech_power = active_power(speech);
  const double noise_power = active_power(looped);
  if (speech_power <= 0.0) throw Error("silent speech rejected");
  if (noise_power <= 0.0) throw Error("silent noise rejected");

  const double alpha =
      std::sqrt(speech_power / (noise_power * std::pow(10.0, snr_db / 10.0)));

  MixResult result;
  result.noise_gain = alpha;
  result.scaled_noise.sample_rate = speech.sample_rate;
  result.scaled_noise.samples.resize(speech.size());
  result.mixture.sample_rate = speech.sample_rate;
  result.mixture.samples.resize(speech.size());
  for (std::size_t i = 0; i < speech.size(); ++i) {
    result.scaled_noise.samples[i] = alpha * looped.samples[i];
    result.mixture.samples[i] = speech.samples[i] + result.scaled_noise.samples[i];
  }
  return result;
}

namespace {

void normalize_rms(std::vector<double>& samples, double target_rms) {
  double power = 0.0;
  for (double v : samples) power += v * v;
  power /= double(samples.size());
  const double gain = target_rms / std::sqrt(power);
  for (double& v : samples) v *= gain;
}

}  // namespace

Signal synth_speech(double seconds, int sample_rate, std::uint64_t seed) {
  Signal out;
  out.sample_rate = sample_rate;
  const auto len = std::size_t(seconds * sample_rate);
  out.samples.resize(len);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // Sustained voiced source: formant-shaped harmonics with random phases and
  // a slow loudness drift. The line spectrum is what distinguishes it from
  // the banded noise; see synth_noise.
  const double f0 = 135.0 + 50.0 * unif(rng);
  const int harmonics = std::min(46, int(6500.0 / f0));
  std::vector<double> amp(std::size_t(harmonics), 0.0);
  std::vector<double> phase(std::size_t(harmonics), 0.0);
  for (int h = 1; h <= harmonics; ++h) {
    const double freq = h * f0;
    const double formant =
        std::exp(-std::pow((freq - 500.0) / 350.0, 2.0)) +
        0.6 * std::exp(-std::pow((freq - 1600.0) / 450.0, 2.0)) +
        0.25 * std::exp(-std::pow((freq - 3400.0) / 700.0, 2.0)) + 0.01;
    amp[std::size_t(h - 1)] = formant / std::sqrt(double(h));
    phase[std::size_t(h - 1)] = 2.0 * std::numbers::pi * unif(rng);
  }
  const double drift_rate = 0.5 + 0.7 * unif(rng);
  const double drift_phase = 2.0 * std::numbers::pi * unif(rng);

  for (std::size_t i = 0; i < len; ++i) {
    const double t = double(i) / sample_rate;
    double sample = 0.0;
    for (int h = 1; h <= harmonics; ++h) {
      sample += amp[std::size_t(h - 1)] *
                std::sin(2.0 * std::numbers::pi * h * f0 * t +
                         phase[std::size_t(h - 1)]);
    }
    const double envelope =
        0.75 + 0.25 * std::sin(2.0 * std::numbers::pi * drift_rate * t +
                               drift_phase);
    out.samples[i] = envelope * sample + 0.02 * gauss(rng);
  }
  normalize_rms(out.samples, 0.1);
  return out;
}

Signal synth_noise(double seconds, int sample_rate, std::uint64_t seed) {
  Signal out;
  out.sample_rate = sample_rate;
  const auto len = std::size_t(seconds * sample_rate);
  out.samples.resize(len);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // Stationary tonal noise bands placed between the voice's formant regions,
  // over a weak broadband floor.
  constexpr struct {
    double lo, hi;
  } kBands[] = {{950, 1150}, {2300, 2700}, {4400, 5100}, {5700, 6400}};
  std::vector<double> freq;
  std::vector<double> phase;
  for (const auto& band : kBands) {
    for (int i = 0; i < 40; ++i) {
      freq.push_back(band.lo + (band.hi - band.lo) * unif(rng));
      phase.push_back(2.0 * std::numbers::pi * unif(rng));
    }
  }

  for (std::size_t i = 0; i < len; ++i) {
    const double t = double(i) / sample_rate;
    double sample = 0.0;
    for (std::size_t c = 0; c < freq.size(); ++c)
      sample += std::sin(2.0 * std::numbers::pi * freq[c] * t + phase[c]);
    out.samples[i] = sample + 0.3 * gauss(rng);
  }
  normalize_rms(out.samples, 0.1);
  return out;
}

}  // namespace lowlat
