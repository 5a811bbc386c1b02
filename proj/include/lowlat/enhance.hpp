// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LOWLAT_ENHANCE_HPP_
#define LOWLAT_ENHANCE_HPP_

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lowlat/core.hpp"
#include "lowlat/transforms.hpp"

namespace lowlat {

/// Per-frame enhancement slot.
///
/// The stream engine feeds analysis frames in order through observe() and
/// requests the enhanced frame for each output slot through produce(). Under
/// PredictAhead(a) the engine has observed exactly frames <= slot - a when it
/// calls produce(slot), so causality is structural: an implementation can
/// never read a frame beyond what the mode permits.
///
/// mapping_based() distinguishes enhancers that predict the output spectrum
/// directly (usable under prediction) from filtering enhancers that modify
/// the current observed frame (which prediction cannot supply).
class Enhancer {
 public:
  virtual ~Enhancer() = default;

  virtual void observe(std::size_t frame_index, const SpectralFrame& frame) {
    (void)frame_index;
    (void)frame;
  }
  virtual SpectralFrame produce(std::size_t slot, std::size_t bins) = 0;

  virtual bool mapping_based() const = 0;
  virtual bool is_identity() const { return false; }
  /// Lookahead a declared by a predict wrapper; 0 otherwise.
  virtual int lookahead() const { return 0; }
  virtual void reset() {}
};

/// Passes the current frame through unchanged. Filtering-based.
class IdentityEnhancer : public Enhancer {
 public:
  void observe(std::size_t frame_index, const SpectralFrame& frame) override;
  SpectralFrame produce(std::size_t slot, std::size_t bins) override;
  bool mapping_based() const override { return false; }
  bool is_identity() const override { return true; }
  void reset() override { last_ = SpectralFrame{}; }

 private:
  SpectralFrame last_;
};

/// Produces all-zero frames. Mapping-based.
class ZeroEnhancer : public Enhancer {
 public:
  SpectralFrame produce(std::size_t slot, std::size_t bins) override;
  bool mapping_based() const override { return true; }
};

/// Repeats the most recently observed frame; zeros before the first
/// observation. Mapping-based (worst-case predictor).
class RepeatLastEnhancer : public Enhancer {
 public:
  void observe(std::size_t frame_index, const SpectralFrame& frame) override;
  SpectralFrame produce(std::size_t slot, std::size_t bins) override;
  bool mapping_based() const override { return true; }
  void reset() override { last_ = SpectralFrame{}; }

 private:
  SpectralFrame last_;
};

/// Causal 3 (time) x 3 (frequency) complex filter coefficients for one frame:
/// taps (i, j) with i = 0..2 frames into the past and j = -1..+1 bins.
struct DeepFilterCoeffs {
  std::size_t bins = 0;
  std::vector<std::complex<double>> taps;  // bins * 9, index (f, i, j+1)

  DeepFilterCoeffs() = default;
  explicit DeepFilterCoeffs(std::size_t num_bins)
      : bins(num_bins), taps(num_bins * 9, {0.0, 0.0}) {}

  std::complex<double>& at(std::size_t f, int i, int j) {
    return taps[(f * 3 + std::size_t(i)) * 3 + std::size_t(j + 1)];
  }
  std::complex<double> at(std::size_t f, int i, int j) const {
    return taps[(f * 3 + std::size_t(i)) * 3 + std::size_t(j + 1)];
  }
};

/// S_hat(f) = sum_{i=0..2} sum_{j=-1..+1} H(f,i,j) * X(k-i, f+j).
/// history is ordered oldest..current with up to 3 frames; missing leading
/// frames and out-of-range bins contribute zero.
SpectralFrame apply_deep_filter(std::span<const SpectralFrame> history,
                                const DeepFilterCoeffs& coeffs);

/// Magnitude compression |z|^c * z/|z| with 0 -> 0; exponent c in (0, 1].
SpectralFrame compress_spectrum(const SpectralFrame& spec, double c);
/// Inverse of compress_spectrum (exponent 1/c).
SpectralFrame decompress_spectrum(const SpectralFrame& spec, double c);

/// Default compression exponent for complex compressed spectra.
inline constexpr double kDefaultCompression = 0.3;

/// Per-bin Wiener gains g = |S|^2 / (|S|^2 + |X - S|^2 + eps) from an aligned
/// clean reference; output g * X. Filtering-based.
class OracleWienerEnhancer : public Enhancer {
 public:
  OracleWienerEnhancer(std::shared_ptr<const FrameAnalyzer> analyzer,
                       Signal clean);

  void observe(std::size_t frame_index, const SpectralFrame& frame) override;
  SpectralFrame produce(std::size_t slot, std::size_t bins) override;
  bool mapping_based() const override { return false; }
  void reset() override { last_ = SpectralFrame{}; }

  static constexpr double kEps = 1e-12;

 private:
  std::shared_ptr<const FrameAnalyzer> analyzer_;
  Signal clean_;
  SpectralFrame last_;
};

/// Minimum-norm 3x3 deep-filter coefficients matched to the clean reference
/// frame; best-case filtering oracle, applied through apply_deep_filter.
class OracleDeepFilterEnhancer : public Enhancer {
 public:
  OracleDeepFilterEnhancer(std::shared_ptr<const FrameAnalyzer> analyzer,
                           Signal clean);

  void observe(std::size_t frame_index, const SpectralFrame& frame) override;
  SpectralFrame produce(std::size_t slot, std::size_t bins) override;
  bool mapping_based() const override { return false; }
  void reset() override { history_.clear(); }

  static constexpr double kEps = 1e-12;

 private:
  std::shared_ptr<const FrameAnalyzer> analyzer_;
  Signal clean_;
  std::vector<SpectralFrame> history_;  // up to 3, oldest first
};

/// Emits the clean reference frame for the requested slot regardless of what
/// has been observed. Mapping-based; best-case predictor under lookahead.
class OracleMapEnhancer : public Enhancer {
 public:
  OracleMapEnhancer(std::shared_ptr<const FrameAnalyzer> analyzer, Signal clean);

  SpectralFrame produce(std::size_t slot, std::size_t bins) override;
  bool mapping_based() const override { return true; }

 private:
  std::shared_ptr<const FrameAnalyzer> analyzer_;
  Signal clean_;
};

/// Replays mapped spectra from a record file (sidecar role "mapping"), one
/// complex-interleaved record per output slot. Records may be stored in the
/// compressed domain, in which case they are decompressed on read.
class MappingFileEnhancer : public Enhancer {
 public:
  MappingFileEnhancer(const std::string& path, std::size_t bins,
                      bool compressed = false,
                      double compression = kDefaultCompression);

  SpectralFrame produce(std::size_t slot, std::size_t bins) override;
  bool mapping_based() const override { return true; }

 private:
  std::vector<SpectralFrame> records_;
  bool compressed_;
  double compression_;
};

/// Applies 3x3 deep filters replayed from a record file (sidecar role
/// "df_coeffs", bins*9 complex taps per frame). Filtering-based.
class DeepFilterFileEnhancer : public Enhancer {
 public:
  DeepFilterFileEnhancer(const std::string& path, std::size_t bins);

  void observe(std::size_t frame_index, const SpectralFrame& frame) override;
  SpectralFrame produce(std::size_t slot, std::size_t bins) override;
  bool mapping_based() const override { return false; }
  void reset() override { history_.clear(); }

 private:
  std::vector<DeepFilterCoeffs> records_;
  std::vector<SpectralFrame> history_;
};

/// Validates that `inner` is mapping-based and tags it with a lookahead of
/// `frames_ahead` hops for use in PredictAhead streams. Wrapping a
/// filtering-based enhancer is a configuration error.
std::unique_ptr<Enhancer> predict_wrapper(std::unique_ptr<Enhancer> inner,
                                          int frames_ahead);

}  // namespace lowlat

#endif  // LOWLAT_ENHANCE_HPP_
