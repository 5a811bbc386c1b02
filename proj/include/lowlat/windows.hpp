// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LOWLAT_WINDOWS_HPP_
#define LOWLAT_WINDOWS_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace lowlat {

/// Analysis/synthesis window pair with its hop.
///
/// Unnormalized pairs come straight from a window family constructor.
/// pr_normalize() rescales the synthesis window so that identity
/// overlap-add reconstructs the input exactly in steady state.
struct WindowPair {
  std::vector<double> analysis;   // w_a, length L_a
  std::vector<double> synthesis;  // w_s, length L_s
  int hop = 0;                    // P
  bool normalized = false;

  int analysis_len() const { return int(analysis.size()); }
  int synthesis_len() const { return int(synthesis.size()); }
};

/// Periodic (DFT-even) Hann window: 0.5*(1 - cos(2*pi*n/len)), n = 0..len-1.
std::vector<double> periodic_hann(int len);

/// Elementwise square root of the periodic Hann window. len must be even, >= 2.
std::vector<double> sqrt_hann(int len);

/// Symmetric sqrt-Hann pair at 50% overlap (hop = len/2).
WindowPair sym_pair(int len);

/// Asymmetric pair: analysis is the rising half of a periodic Hann of length
/// 2*(analysis_len - synthesis_len/2) followed by the falling half of a
/// periodic Hann of length synthesis_len; synthesis is a periodic Hann of
/// length synthesis_len. Hop is fixed to synthesis_len/2. The junction sample
/// w_a[analysis_len - synthesis_len/2] is the Hann peak 1.
WindowPair asym_pair(int analysis_len, int synthesis_len);

/// Overlap product pattern D(m) = sum_j w_s[m + jP] * w_a[L_a - L_s + m + jP]
/// for m in [0, P). Identity overlap-add multiplies every steady-state output
/// sample by D(n mod P).
std::vector<double> overlap_product_pattern(const WindowPair& pair);

/// Divides the synthesis window by the overlap product pattern so that the
/// pattern becomes identically 1. Fails if any pattern value vanishes.
/// Idempotent.
WindowPair pr_normalize(const WindowPair& pair);

/// Reconstruction probe: runs seeded white noise (>= 50 frames) through
/// windowed analysis and windowed overlap-add with identity processing and
/// returns the max absolute steady-state error (excluding L_a warm-up samples
/// on both ends) relative to the max input magnitude.
double pr_error(const WindowPair& pair);

/// One weight per line, 9 significant digits.
void write_window_csv(std::ostream& out, const std::vector<double>& window);
void write_window_csv(const std::string& path, const std::vector<double>& window);

}  // namespace lowlat

#endif  // LOWLAT_WINDOWS_HPP_
