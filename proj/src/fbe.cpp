// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lowlat/fbe.hpp"

#include <cmath>
#include <map>
#include <numbers>

namespace lowlat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// cos/sin(2*pi*f*n/F) for f = 0..F/2, n = 0..F-1.
struct ChunkDft {
  int fft_size = 0;
  std::vector<double> cosv;
  std::vector<double> sinv;

  explicit ChunkDft(int f_size) : fft_size(f_size) {
    const std::size_t bins = std::size_t(f_size) / 2 + 1;
    cosv.resize(bins * std::size_t(f_size));
    sinv.resize(bins * std::size_t(f_size));
    for (std::size_t f = 0; f < bins; ++f) {
      for (int n = 0; n < f_size; ++n) {
        const double angle = kTwoPi * double(f) * n / f_size;
        cosv[f * std::size_t(f_size) + std::size_t(n)] = std::cos(angle);
        sinv[f * std::size_t(f_size) + std::size_t(n)] = std::sin(angle);
      }
    }
  }

  std::vector<std::complex<double>> forward(std::span<const double> chunk) const {
    const std::size_t bins = std::size_t(fft_size) / 2 + 1;
    std::vector<std::complex<double>> spec(bins);
    for (std::size_t f = 0; f < bins; ++f) {
      const double* c = &cosv[f * std::size_t(fft_size)];
      const double* s = &sinv[f * std::size_t(fft_size)];
      double re = 0.0, im = 0.0;
      for (int n = 0; n < fft_size; ++n) {
        re += chunk[std::size_t(n)] * c[n];
        im -= chunk[std::size_t(n)] * s[n];
      }
      spec[f] = {re, im};
    }
    return spec;
  }

  std::vector<double> inverse_tail(const std::vector<std::complex<double>>& spec,
                                   int count) const {
    std::vector<double> out(std::size_t(count), 0.0);
    for (int t = 0; t < count; ++t) {
      const std::size_t n = std::size_t(fft_size - count + t);
      double acc = 0.0;
      for (std::size_t f = 0; f < spec.size(); ++f) {
        const double weight = (f == 0 || int(f) == fft_size / 2) ? 1.0 : 2.0;
        acc += weight * (spec[f].real() * cosv[f * std::size_t(fft_size) + n] -
                         spec[f].imag() * sinv[f * std::size_t(fft_size) + n]);
      }
      out[std::size_t(t)] = acc / fft_size;
    }
    return out;
  }
};

void check_filter(const FrameFilter& filter, int hop) {
  if (filter.fft_size < 2 || filter.fft_size % 2 != 0)
    throw Error("filter FFT size must be even and at least 2");
  if (int(filter.taps.size()) != filter.fft_size / 2 + 1)
    throw Error("predictor emitted wrong filter geometry: " +
                std::to_string(filter.taps.size()) + " taps for FFT size " +
                std::to_string(filter.fft_size));
  if (filter.fft_size < hop) throw Error("filter FFT size smaller than hop");
}

std::vector<double> gather_chunk(std::span<const double> input,
                                 std::size_t chunk_end, int fft_size) {
  std::vector<double> chunk(std::size_t(fft_size), 0.0);
  for (int i = 0; i < fft_size; ++i) {
    const std::int64_t idx = std::int64_t(chunk_end) - fft_size + i;
    if (idx >= 0 && idx < std::int64_t(input.size()))
      chunk[std::size_t(i)] = input[std::size_t(idx)];
  }
  return chunk;
}

std::vector<double> fbe_step_with(const ChunkDft& dft,
                                  std::span<const double> input,
                                  std::size_t chunk_end,
                                  const FrameFilter& filter, int hop) {
  const auto chunk = gather_chunk(input, chunk_end, filter.fft_size);
  auto spec = dft.forward(chunk);
  for (std::size_t f = 0; f < spec.size(); ++f) spec[f] *= filter.taps[f];
  return dft.inverse_tail(spec, hop);
}

}  // namespace

FrameFilter make_fir_filter(std::span<const double> fir_taps, int fft_size) {
  if (fft_size < 2 || fft_size % 2 != 0)
    throw Error("filter FFT size must be even and at least 2");
  if (int(fir_taps.size()) > fft_size)
    throw Error("FIR taps exceed the filter FFT size");
  FrameFilter filter;
  filter.fft_size = fft_size;
  filter.effective_len = int(fir_taps.size());
  const int bins = fft_size / 2 + 1;
  filter.taps.resize(std::size_t(bins));
  for (int f = 0; f < bins; ++f) {
    double re = 0.0, im = 0.0;
    for (std::size_t l = 0; l < fir_taps.size(); ++l) {
      const double angle = kTwoPi * f * double(l) / fft_size;
      re += fir_taps[l] * std::cos(angle);
      im -= fir_taps[l] * std::sin(angle);
    }
    filter.taps[std::size_t(f)] = {re, im};
  }
  return filter;
}

FrameFilter identity_filter(int fft_size) {
  const double one = 1.0;
  return make_fir_filter(std::span<const double>(&one, 1), fft_size);
}

FrameFilter delay_filter(int delay, int fft_size) {
  if (delay < 0 || delay >= fft_size)
    throw Error("delay must be in [0, fft_size)");
  std::vector<double> taps(std::size_t(delay) + 1, 0.0);
  taps.back() = 1.0;
  return make_fir_filter(taps, fft_size);
}

FilterShortener FilterShortener::truncation(std::size_t long_len,
                                            std::size_t short_len) {
  FilterShortener shortener;
  shortener.mapping = RealMatrix(long_len, short_len);
  for (std::size_t i = 0; i < std::min(long_len, short_len); ++i)
    shortener.mapping.at(i, i) = 1.0;
  return shortener;
}

std::vector<double> shorten_filters(std::span<const double> long_filter,
                                    const FilterShortener& shortener) {
  const RealMatrix& m = shortener.mapping;
  if (long_filter.size() != m.rows)
    throw Error("long filter length does not match shortener rows");
  std::vector<double> taps(m.cols, 0.0);
  for (std::size_t r = 0; r < m.rows; ++r) {
    const double v = long_filter[r];
    const double* row = &m.data[r * m.cols];
    for (std::size_t c = 0; c < m.cols; ++c) taps[c] += v * row[c];
  }
  return taps;
}

std::vector<double> fbe_step(std::span<const double> input,
                             std::size_t chunk_end, const FrameFilter& filter,
                             int hop) {
  check_filter(filter, hop);
  if (chunk_end > input.size()) throw Error("chunk end exceeds available input");
  const ChunkDft dft(filter.fft_size);
  return fbe_step_with(dft, input, chunk_end, filter, hop);
}

IdentityFilterPredictor::IdentityFilterPredictor(int fft_size)
    : filter_(identity_filter(fft_size)) {}

FrameFilter IdentityFilterPredictor::predict(std::size_t, std::span<const double>) {
  return filter_;
}

FixedFirPredictor::FixedFirPredictor(std::span<const double> fir_taps, int fft_size)
    : filter_(make_fir_filter(fir_taps, fft_size)) {}

FrameFilter FixedFirPredictor::predict(std::size_t, std::span<const double>) {
  return filter_;
}

FileFilterPredictor::FileFilterPredictor(const std::string& path, int fft_size,
                                         int effective_len) {
  const int bins = fft_size / 2 + 1;
  const RealMatrix records = load_records(path, std::size_t(bins) * 2, "filters");
  records_.resize(records.rows);
  for (std::size_t k = 0; k < records.rows; ++k) {
    FrameFilter& filter = records_[k];
    filter.fft_size = fft_size;
    filter.effective_len = effective_len > 0 ? effective_len : fft_size;
    filter.taps.resize(std::size_t(bins));
    for (int f = 0; f < bins; ++f)
      filter.taps[std::size_t(f)] = {records.at(k, 2 * std::size_t(f)),
                                     records.at(k, 2 * std::size_t(f) + 1)};
  }
}

FrameFilter FileFilterPredictor::predict(std::size_t hop_index,
                                         std::span<const double>) {
  if (hop_index >= records_.size())
    throw Error("filter file has no record for hop " + std::to_string(hop_index));
  return records_[hop_index];
}

struct OracleWienerFilterPredictor::Impl {
  ChunkDft dft;
  explicit Impl(int fft_size) : dft(fft_size) {}
};

OracleWienerFilterPredictor::OracleWienerFilterPredictor(Signal clean, int fft_size)
    : clean_(std::move(clean)), fft_size_(fft_size) {
  if (fft_size_ < 2 || fft_size_ % 2 != 0)
    throw Error("filter FFT size must be even and at least 2");
}

FrameFilter OracleWienerFilterPredictor::predict(std::size_t,
                                                 std::span<const double> available) {
  if (!impl_) impl_ = std::make_shared<Impl>(fft_size_);
  const std::size_t chunk_end = available.size();
  const auto noisy = impl_->dft.forward(gather_chunk(available, chunk_end, fft_size_));
  const auto clean =
      impl_->dft.forward(gather_chunk(clean_.samples, chunk_end, fft_size_));

  FrameFilter filter;
  filter.fft_size = fft_size_;
  filter.effective_len = fft_size_;  // zero-phase gains use the full-length wrap
  filter.taps.resize(noisy.size());
  for (std::size_t f = 0; f < noisy.size(); ++f) {
    const double sp = std::norm(clean[f]);
    const double np = std::norm(noisy[f] - clean[f]);
    filter.taps[f] = {sp / (sp + np + 1e-12), 0.0};
  }
  return filter;
}

Signal run_fbe(const Signal& input, const StreamConfig& config,
               FilterPredictor& predictor) {
  require_valid(config);
  if (config.mode != Mode::Fbe) throw Error("run_fbe requires FBE mode");
  if (input.sample_rate != config.sample_rate)
    throw Error("signal sample rate does not match config");

  const std::size_t hop = std::size_t(config.hop);
  const std::size_t len = input.size();
  const std::size_t hops = (len + hop - 1) / hop;

  // The final partial hop reads virtual zeros past the end; output samples
  // below len never depend on them.
  std::vector<double> padded(input.samples);
  padded.resize(hops * hop, 0.0);

  std::map<int, ChunkDft> tables;
  Signal output;
  output.sample_rate = input.sample_rate;
  output.samples.assign(len, 0.0);
  for (std::size_t k = 0; k < hops; ++k) {
    const std::size_t chunk_end = (k + 1) * hop;
    const FrameFilter filter = predictor.predict(
        k, std::span<const double>(padded.data(), chunk_end));
    check_filter(filter, int(hop));
    auto it = tables.find(filter.fft_size);
    if (it == tables.end())
      it = tables.emplace(filter.fft_size, ChunkDft(filter.fft_size)).first;
    const auto segment = fbe_step_with(it->second, padded, chunk_end, filter, int(hop));
    for (std::size_t u = 0; u < hop && k * hop + u < len; ++u)
      output.samples[k * hop + u] = segment[u];
  }
  return output;
}

}  // namespace lowlat
