// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lowlat/windows.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>

#include "lowlat/core.hpp"

namespace lowlat {

std::vector<double> periodic_hann(int len) {
  if (len < 2 || len % 2 != 0)
    throw Error("window length must be even and at least 2");
  std::vector<double> w(std::size_t(len), 0.0);
  for (int n = 0; n < len; ++n)
    w[std::size_t(n)] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * n / len));
  return w;
}

std::vector<double> sqrt_hann(int len) {
  auto w = periodic_hann(len);
  for (double& v : w) v = std::sqrt(v);
  return w;
}

WindowPair sym_pair(int len) {
  WindowPair pair;
  pair.analysis = sqrt_hann(len);
  pair.synthesis = pair.analysis;
  pair.hop = len / 2;
  return pair;
}

WindowPair asym_pair(int analysis_len, int synthesis_len) {
  if (synthesis_len > analysis_len)
    throw Error("synthesis window exceeds analysis window");
  if (analysis_len % 2 != 0 || synthesis_len % 2 != 0 || synthesis_len < 2)
    throw Error("window lengths must be even and at least 2");

  const int rise_len = analysis_len - synthesis_len / 2;
  const auto rise = periodic_hann(2 * rise_len);
  const auto fall = periodic_hann(synthesis_len);

  WindowPair pair;
  pair.analysis.resize(std::size_t(analysis_len));
  for (int n = 0; n < rise_len; ++n) pair.analysis[std::size_t(n)] = rise[std::size_t(n)];
  for (int n = 0; n < synthesis_len / 2; ++n)
    pair.analysis[std::size_t(rise_len + n)] = fall[std::size_t(synthesis_len / 2 + n)];
  pair.synthesis = fall;
  pair.hop = synthesis_len / 2;
  return pair;
}

std::vector<double> overlap_product_pattern(const WindowPair& pair) {
  const int la = pair.analysis_len();
  const int ls = pair.synthesis_len();
  const int hop = pair.hop;
  if (hop <= 0 || hop > ls || ls > la)
    throw Error("window pair has invalid geometry");
  std::vector<double> pattern(std::size_t(hop), 0.0);
  for (int m = 0; m < hop; ++m) {
    double sum = 0.0;
    for (int u = m; u < ls; u += hop)
      sum += pair.synthesis[std::size_t(u)] * pair.analysis[std::size_t(la - ls + u)];
    pattern[std::size_t(m)] = sum;
  }
  return pattern;
}

WindowPair pr_normalize(const WindowPair& pair) {
  const auto pattern = overlap_product_pattern(pair);
  for (int m = 0; m < pair.hop; ++m) {
    if (std::abs(pattern[std::size_t(m)]) < 1e-12) {
      throw Error("window pair does not cover output sample " +
                  std::to_string(m) + " (overlap product is zero)");
    }
  }
  WindowPair out = pair;
  for (int u = 0; u < pair.synthesis_len(); ++u)
    out.synthesis[std::size_t(u)] /= pattern[std::size_t(u % pair.hop)];
  out.normalized = true;
  return out;
}

double pr_error(const WindowPair& pair) {
  const int la = pair.analysis_len();
  const int ls = pair.synthesis_len();
  const int hop = pair.hop;
  if (hop <= 0 || hop > ls || ls > la)
    throw Error("window pair has invalid geometry");

  const std::size_t len = std::size_t(la) + 80 * std::size_t(hop);
  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> x(len);
  double peak = 0.0;
  for (double& v : x) {
    v = dist(rng);
    peak = std::max(peak, std::abs(v));
  }

  // Identity processing: each frame contributes w_s[u] * w_a[la-ls+u] * x.
  std::vector<double> y(len, 0.0);
  const std::size_t frames = (len - std::size_t(la)) / std::size_t(hop) + 1;
  for (std::size_t k = 0; k < frames; ++k) {
    const std::size_t start = k * std::size_t(hop) + std::size_t(la - ls);
    for (int u = 0; u < ls; ++u) {
      y[start + std::size_t(u)] += pair.synthesis[std::size_t(u)] *
                                   pair.analysis[std::size_t(la - ls + u)] *
                                   x[start + std::size_t(u)];
    }
  }

  double worst = 0.0;
  for (std::size_t n = std::size_t(la); n + std::size_t(la) < len; ++n)
    worst = std::max(worst, std::abs(y[n] - x[n]));
  return worst / peak;
}

void write_window_csv(std::ostream& out, const std::vector<double>& window) {
  char buf[64];
  for (double v : window) {
    std::snprintf(buf, sizeof(buf), "%.9g\n", v);
    out << buf;
  }
}

void write_window_csv(const std::string& path, const std::vector<double>& window) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  write_window_csv(out, window);
}

}  // namespace lowlat
