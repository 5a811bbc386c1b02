// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LOWLAT_TRANSFORMS_HPP_
#define LOWLAT_TRANSFORMS_HPP_

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lowlat/core.hpp"
#include "lowlat/windows.hpp"

namespace lowlat {

/// One frame of the time-frequency representation.
///
/// Canonical DFT frames hold the N/2+1 symmetry-reduced complex bins of a
/// real input. Learned bases produce N real features, stored here with zero
/// imaginary parts so enhancers can treat both uniformly.
struct SpectralFrame {
  std::vector<std::complex<double>> bins;
  std::int64_t index = 0;

  std::size_t size() const { return bins.size(); }
};

/// Dense row-major real matrix.
struct RealMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  RealMatrix() = default;
  RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Analysis/synthesis transform pair: either the canonical DFT (with
/// real-input symmetry reduction) or explicit matrices loaded from files.
/// The rectifier flag clamps negative learned analysis features to zero; it
/// applies to learned features only, never to complex DFT bins.
class TransformBasis {
 public:
  static TransformBasis canonical();
  static TransformBasis learned(RealMatrix analysis, RealMatrix synthesis,
                                bool rectify = false);

  bool is_canonical() const { return canonical_; }
  bool rectify() const { return rectify_; }
  const RealMatrix& analysis_matrix() const;
  const RealMatrix& synthesis_matrix() const;

  /// Frame representation length: N/2+1 bins (canonical) or N features.
  std::size_t feature_count(int transform_size) const;

 private:
  TransformBasis() = default;
  bool canonical_ = true;
  bool rectify_ = false;
  RealMatrix analysis_;
  RealMatrix synthesis_;
};

/// Windowing, zero-padding to the transform size, and the basis transform.
/// The windowed frame is aligned with the end of the transform buffer so the
/// synthesis stage always covers the most recent samples.
SpectralFrame analyze_frame(std::span<const double> frame,
                            std::span<const double> analysis_window,
                            const TransformBasis& basis, int transform_size);

/// Inverse transform and synthesis windowing; keeps the last synthesis_len
/// samples of the transform-size output frame.
std::vector<double> synthesize_frame(const SpectralFrame& spec,
                                     std::span<const double> synthesis_window,
                                     const TransformBasis& basis,
                                     int synthesis_len);

/// Cached per-config analysis path, shared between the stream engine and the
/// oracle enhancers that need reference-side frames of the same geometry.
class FrameAnalyzer {
 public:
  FrameAnalyzer(const StreamConfig& config, std::vector<double> analysis_window,
                TransformBasis basis);

  SpectralFrame analyze(std::span<const double> frame, std::int64_t index) const;
  /// Frame k of a signal: input samples [k*hop, k*hop + analysis_len).
  SpectralFrame analyze_at(const Signal& signal, std::size_t frame_index) const;

  std::size_t bins() const { return bins_; }
  const StreamConfig& config() const { return config_; }

 private:
  StreamConfig config_;
  std::vector<double> window_;
  TransformBasis basis_;
  std::size_t bins_ = 0;
  std::vector<double> fwd_cos_;  // [bin][n], canonical path, phase includes pad offset
  std::vector<double> fwd_sin_;
};

class Enhancer;  // enhance.hpp

/// Streaming overlap-add engine for OverlapAdd and PredictAhead modes.
/// Holds per-stream overlap state; one instance serves one stream.
class StreamEngine {
 public:
  StreamEngine(const StreamConfig& config, const WindowPair& pair,
               TransformBasis basis);

  /// Offline run: frames k = 0..K-1, enhanced per slot, overlap-added.
  /// Output is time-aligned with the input and has the same length.
  Signal run(const Signal& input, Enhancer& enhancer);

  const std::shared_ptr<const FrameAnalyzer>& analyzer() const { return analyzer_; }

 private:
  StreamConfig config_;
  WindowPair pair_;
  TransformBasis basis_;
  std::shared_ptr<const FrameAnalyzer> analyzer_;
  std::vector<double> inv_cos_;  // [t][bin] inverse tables, canonical path
  std::vector<double> inv_sin_;

  std::vector<double> synthesize(const SpectralFrame& spec) const;
};

Signal stream_ola(const Signal& input, const StreamConfig& config,
                  const WindowPair& pair, const TransformBasis& basis,
                  Enhancer& enhancer);

/// Explicit matrices that reproduce the canonical DFT path: analysis stacks
/// [Re X_0..Re X_{N/2}, Im X_1..Im X_{N/2-1}] as N real features, synthesis
/// inverts the stack onto the last L_s output samples.
std::pair<RealMatrix, RealMatrix> make_dft_stacked_matrices(int transform_size,
                                                            int analysis_len,
                                                            int synthesis_len);

/// Binary matrix container: `<path>` holds row-major little-endian float32,
/// `<path>.json` is the sidecar {"rows": R, "cols": C, "role": "..."}.
void save_matrix(const std::string& path, const RealMatrix& m,
                 const std::string& role);
RealMatrix load_matrix(const std::string& path, std::size_t expected_rows,
                       std::size_t expected_cols, const std::string& expected_role);

/// Same container with a free row count: one record per row. Used for
/// replayed per-frame data (mapped spectra, deep-filter coefficients,
/// FBE filters) with complex values interleaved re,im.
RealMatrix load_records(const std::string& path, std::size_t expected_cols,
                        const std::string& expected_role);

/// Loads explicit basis matrices (roles "analysis" and "synthesis") sized
/// N x L_a and N x L_s for the given config.
TransformBasis load_basis(const std::string& analysis_path,
                          const std::string& synthesis_path,
                          const StreamConfig& config, bool rectify = false);

}  // namespace lowlat

#endif  // LOWLAT_TRANSFORMS_HPP_
