// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Independent brute-force references the implementation is checked against.
// Everything here is written from the textbook definitions, not from the
// library code paths.

#ifndef LOWLAT_TESTS_ORACLES_HPP_
#define LOWLAT_TESTS_ORACLES_HPP_

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace oracles {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// X[f] = sum_n buffer[n] * exp(-2*pi*i*f*n/N) for f = 0..N/2, direct O(N^2).
inline std::vector<std::complex<double>> naive_rdft(
    std::span<const double> buffer) {
  const std::size_t n_full = buffer.size();
  std::vector<std::complex<double>> spec(n_full / 2 + 1);
  for (std::size_t f = 0; f < spec.size(); ++f) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t n = 0; n < n_full; ++n) {
      const double angle = kTwoPi * double(f) * double(n) / double(n_full);
      acc += buffer[n] * std::complex<double>(std::cos(angle), -std::sin(angle));
    }
    spec[f] = acc;
  }
  return spec;
}

/// Inverse of naive_rdft with conjugate-symmetric extension, full N samples.
inline std::vector<double> naive_irdft(
    const std::vector<std::complex<double>>& spec, std::size_t n_full) {
  std::vector<double> out(n_full, 0.0);
  for (std::size_t n = 0; n < n_full; ++n) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t f = 0; f < n_full; ++f) {
      const std::size_t idx = f <= n_full / 2 ? f : n_full - f;
      std::complex<double> value = spec[idx];
      if (f > n_full / 2) value = std::conj(value);
      const double angle = kTwoPi * double(f) * double(n) / double(n_full);
      acc += value * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    out[n] = acc.real() / double(n_full);
  }
  return out;
}

/// y[n] = sum_l h[l] * x[n-l], zero-padded input, O(n*L).
inline std::vector<double> naive_convolve(std::span<const double> x,
                                          std::span<const double> h) {
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    double acc = 0.0;
    for (std::size_t l = 0; l < h.size() && l <= n; ++l)
      acc += h[l] * x[n - l];
    y[n] = acc;
  }
  return y;
}

/// out[c] = sum_r v[r] * m[r][c], double loop.
inline std::vector<double> naive_matvec(std::span<const double> v,
                                        const std::vector<std::vector<double>>& m) {
  std::vector<double> out(m.empty() ? 0 : m[0].size(), 0.0);
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m[r].size(); ++c) out[c] += v[r] * m[r][c];
  return out;
}

/// S(f) = sum_{i=0..2} sum_{j=-1..1} H(f,i,j) * X(k-i, f+j), triple loop.
/// frames holds [k-2, k-1, k] (missing leading entries empty); taps indexed
/// taps[(f*3 + i)*3 + (j+1)].
inline std::vector<std::complex<double>> naive_deep_filter(
    const std::vector<std::vector<std::complex<double>>>& frames,
    const std::vector<std::complex<double>>& taps, std::size_t bins) {
  std::vector<std::complex<double>> out(bins, {0.0, 0.0});
  for (std::size_t f = 0; f < bins; ++f) {
    for (int i = 0; i < 3; ++i) {
      const int frame_idx = int(frames.size()) - 1 - i;
      if (frame_idx < 0) continue;
      const auto& frame = frames[std::size_t(frame_idx)];
      if (frame.empty()) continue;
      for (int j = -1; j <= 1; ++j) {
        const std::int64_t bin = std::int64_t(f) + j;
        if (bin < 0 || bin >= std::int64_t(bins)) continue;
        out[f] += taps[(f * 3 + std::size_t(i)) * 3 + std::size_t(j + 1)] *
                  frame[std::size_t(bin)];
      }
    }
  }
  return out;
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t len,
                                         double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> v(len);
  for (double& x : v) x = dist(rng);
  return v;
}

inline std::vector<std::complex<double>> random_complex(std::mt19937_64& rng,
                                                        std::size_t len,
                                                        double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<std::complex<double>> v(len);
  for (auto& z : v) z = {dist(rng), dist(rng)};
  return v;
}

}  // namespace oracles

#endif  // LOWLAT_TESTS_ORACLES_HPP_
