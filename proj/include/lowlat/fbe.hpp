// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LOWLAT_FBE_HPP_
#define LOWLAT_FBE_HPP_

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lowlat/core.hpp"
#include "lowlat/transforms.hpp"

namespace lowlat {

/// One per-frame FIR filter, stored as its frequency response over an
/// fft_size-point chunk (fft_size/2+1 symmetry-reduced taps).
///
/// Filtering a chunk is circular; the last P output samples equal linear
/// convolution exactly when effective_len <= fft_size - P + 1 (exact mode).
/// Longer filters (up to fft_size) wrap circularly.
struct FrameFilter {
  std::vector<std::complex<double>> taps;  // fft_size/2+1
  int fft_size = 0;
  int effective_len = 0;
};

/// Frequency response of time-domain taps zero-padded to fft_size.
FrameFilter make_fir_filter(std::span<const double> fir_taps, int fft_size);
/// Unit impulse: flat spectrum 1+0j.
FrameFilter identity_filter(int fft_size);
/// Pure delay of `delay` samples (delay < fft_size).
FrameFilter delay_filter(int delay, int fft_size);

/// Linear mapping from a long filter (length N) to 2P time-domain taps.
struct FilterShortener {
  RealMatrix mapping;  // N x 2P

  static FilterShortener truncation(std::size_t long_len, std::size_t short_len);
};

/// taps[c] = sum_r long_filter[r] * mapping[r][c].
std::vector<double> shorten_filters(std::span<const double> long_filter,
                                    const FilterShortener& shortener);

/// One overlap-discard step: FFT of the last fft_size input samples ending at
/// chunk_end (zero-padded below index 0), complex multiply with the filter
/// taps, inverse FFT, return the last `hop` samples.
std::vector<double> fbe_step(std::span<const double> input,
                             std::size_t chunk_end, const FrameFilter& filter,
                             int hop);

/// Emits one FrameFilter per hop from observations up to the chunk end.
class FilterPredictor {
 public:
  virtual ~FilterPredictor() = default;
  /// `available` spans input samples [0, chunk_end); the predictor must not
  /// assume anything beyond it.
  virtual FrameFilter predict(std::size_t hop_index,
                              std::span<const double> available) = 0;
  virtual bool is_identity() const { return false; }
};

class IdentityFilterPredictor : public FilterPredictor {
 public:
  explicit IdentityFilterPredictor(int fft_size);
  FrameFilter predict(std::size_t hop_index,
                      std::span<const double> available) override;
  bool is_identity() const override { return true; }

 private:
  FrameFilter filter_;
};

/// Time-invariant FIR applied every hop.
class FixedFirPredictor : public FilterPredictor {
 public:
  FixedFirPredictor(std::span<const double> fir_taps, int fft_size);
  FrameFilter predict(std::size_t hop_index,
                      std::span<const double> available) override;

 private:
  FrameFilter filter_;
};

/// Replays one filter per hop from a record file (sidecar role "filters",
/// fft_size/2+1 complex-interleaved float32 values per record), bit-exactly.
class FileFilterPredictor : public FilterPredictor {
 public:
  FileFilterPredictor(const std::string& path, int fft_size,
                      int effective_len = 0);
  FrameFilter predict(std::size_t hop_index,
                      std::span<const double> available) override;

 private:
  std::vector<FrameFilter> records_;
};

/// Zero-phase Wiener gains computed per chunk from an aligned clean
/// reference; stands in for the filter-predicting DNN at desk scale.
class OracleWienerFilterPredictor : public FilterPredictor {
 public:
  OracleWienerFilterPredictor(Signal clean, int fft_size);
  FrameFilter predict(std::size_t hop_index,
                      std::span<const double> available) override;

 private:
  struct Impl;
  Signal clean_;
  int fft_size_;
  std::shared_ptr<Impl> impl_;  // lazily built trig tables
};

/// FBE path: per hop the predictor emits a filter, fbe_step produces P output
/// samples, and the concatenation forms the output (same length as input).
/// Total latency is the hop: output chunk [kP, kP+P) depends only on input
/// samples below (k+1)P.
Signal run_fbe(const Signal& input, const StreamConfig& config,
               FilterPredictor& predictor);

}  // namespace lowlat

#endif  // LOWLAT_FBE_HPP_
