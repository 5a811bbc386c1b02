// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lowlat/enhance.hpp"

#include <cmath>

namespace lowlat {

namespace {

SpectralFrame zero_frame(std::size_t slot, std::size_t bins) {
  SpectralFrame f;
  f.index = std::int64_t(slot);
  f.bins.assign(bins, {0.0, 0.0});
  return f;
}

void check_bins(const SpectralFrame& frame, std::size_t bins) {
  if (frame.size() != bins) throw Error("enhancer output shape mismatch");
}

}  // namespace

void IdentityEnhancer::observe(std::size_t frame_index, const SpectralFrame& frame) {
  last_ = frame;
  last_.index = std::int64_t(frame_index);
}

SpectralFrame IdentityEnhancer::produce(std::size_t slot, std::size_t bins) {
  if (last_.bins.empty() || last_.index != std::int64_t(slot))
    throw Error("identity enhancer has not observed frame " + std::to_string(slot));
  check_bins(last_, bins);
  return last_;
}

SpectralFrame ZeroEnhancer::produce(std::size_t slot, std::size_t bins) {
  return zero_frame(slot, bins);
}

void RepeatLastEnhancer::observe(std::size_t frame_index, const SpectralFrame& frame) {
  last_ = frame;
  last_.index = std::int64_t(frame_index);
}

SpectralFrame RepeatLastEnhancer::produce(std::size_t slot, std::size_t bins) {
  if (last_.bins.empty()) return zero_frame(slot, bins);
  check_bins(last_, bins);
  SpectralFrame out = last_;
  out.index = std::int64_t(slot);
  return out;
}

SpectralFrame apply_deep_filter(std::span<const SpectralFrame> history,
                                const DeepFilterCoeffs& coeffs) {
  if (history.empty()) throw Error("deep filter needs at least the current frame");
  if (history.size() > 3) history = history.last(3);
  const std::size_t bins = history.back().size();
  if (coeffs.bins != bins) throw Error("deep filter coefficient shape mismatch");
  for (const SpectralFrame& f : history)
    if (f.size() != bins) throw Error("deep filter history shape mismatch");

  SpectralFrame out;
  out.index = history.back().index;
  out.bins.assign(bins, {0.0, 0.0});
  for (std::size_t f = 0; f < bins; ++f) {
    std::complex<double> acc{0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
      // i frames into the past; history is ordered oldest..current.
      const int h = int(history.size()) - 1 - i;
      if (h < 0) continue;
      const SpectralFrame& frame = history[std::size_t(h)];
      for (int j = -1; j <= 1; ++j) {
        const std::int64_t bin = std::int64_t(f) + j;
        if (bin < 0 || bin >= std::int64_t(bins)) continue;
        acc += coeffs.at(f, i, j) * frame.bins[std::size_t(bin)];
      }
    }
    out.bins[f] = acc;
  }
  return out;
}

namespace {

SpectralFrame power_map(const SpectralFrame& spec, double exponent) {
  SpectralFrame out = spec;
  for (auto& z : out.bins) {
    const double mag = std::abs(z);
    if (mag == 0.0) {
      z = {0.0, 0.0};
    } else {
      z *= std::pow(mag, exponent - 1.0);
    }
  }
  return out;
}

}  // namespace

SpectralFrame compress_spectrum(const SpectralFrame& spec, double c) {
  if (!(c > 0.0 && c <= 1.0)) throw Error("compression exponent must be in (0, 1]");
  return power_map(spec, c);
}

SpectralFrame decompress_spectrum(const SpectralFrame& spec, double c) {
  if (!(c > 0.0 && c <= 1.0)) throw Error("compression exponent must be in (0, 1]");
  return power_map(spec, 1.0 / c);
}

OracleWienerEnhancer::OracleWienerEnhancer(
    std::shared_ptr<const FrameAnalyzer> analyzer, Signal clean)
    : analyzer_(std::move(analyzer)), clean_(std::move(clean)) {
  if (!analyzer_) throw Error("oracle enhancer needs a frame analyzer");
  if (clean_.sample_rate != analyzer_->config().sample_rate)
    throw Error("clean reference sample rate does not match config");
}

void OracleWienerEnhancer::observe(std::size_t frame_index,
                                   const SpectralFrame& frame) {
  last_ = frame;
  last_.index = std::int64_t(frame_index);
}

SpectralFrame OracleWienerEnhancer::produce(std::size_t slot, std::size_t bins) {
  if (last_.bins.empty() || last_.index != std::int64_t(slot))
    throw Error("oracle wiener needs the current frame (filtering-based)");
  check_bins(last_, bins);
  const SpectralFrame clean = analyzer_->analyze_at(clean_, slot);

  SpectralFrame out;
  out.index = std::int64_t(slot);
  out.bins.resize(bins);
  for (std::size_t f = 0; f < bins; ++f) {
    const std::complex<double> x = last_.bins[f];
    const std::complex<double> s = clean.bins[f];
    const double sp = std::norm(s);
    const double np = std::norm(x - s);
    const double gain = sp / (sp + np + kEps);
    out.bins[f] = gain * x;
  }
  return out;
}

OracleDeepFilterEnhancer::OracleDeepFilterEnhancer(
    std::shared_ptr<const FrameAnalyzer> analyzer, Signal clean)
    : analyzer_(std::move(analyzer)), clean_(std::move(clean)) {
  if (!analyzer_) throw Error("oracle enhancer needs a frame analyzer");
  if (clean_.sample_rate != analyzer_->config().sample_rate)
    throw Error("clean reference sample rate does not match config");
}

void OracleDeepFilterEnhancer::observe(std::size_t frame_index,
                                       const SpectralFrame& frame) {
  history_.push_back(frame);
  history_.back().index = std::int64_t(frame_index);
  if (history_.size() > 3) history_.erase(history_.begin());
}

SpectralFrame OracleDeepFilterEnhancer::produce(std::size_t slot, std::size_t bins) {
  if (history_.empty() || history_.back().index != std::int64_t(slot))
    throw Error("oracle deep filter needs the current frame (filtering-based)");
  check_bins(history_.back(), bins);
  const SpectralFrame clean = analyzer_->analyze_at(clean_, slot);

  // Minimum-norm taps matching the clean bin from the causal 3x3 patch.
  DeepFilterCoeffs coeffs(bins);
  for (std::size_t f = 0; f < bins; ++f) {
    double patch_power = kEps;
    for (int i = 0; i < 3; ++i) {
      const int h = int(history_.size()) - 1 - i;
      if (h < 0) continue;
      for (int j = -1; j <= 1; ++j) {
        const std::int64_t bin = std::int64_t(f) + j;
        if (bin < 0 || bin >= std::int64_t(bins)) continue;
        patch_power += std::norm(history_[std::size_t(h)].bins[std::size_t(bin)]);
      }
    }
    const std::complex<double> target = clean.bins[f];
    for (int i = 0; i < 3; ++i) {
      const int h = int(history_.size()) - 1 - i;
      if (h < 0) continue;
      for (int j = -1; j <= 1; ++j) {
        const std::int64_t bin = std::int64_t(f) + j;
        if (bin < 0 || bin >= std::int64_t(bins)) continue;
        coeffs.at(f, i, j) =
            std::conj(history_[std::size_t(h)].bins[std::size_t(bin)]) * target /
            patch_power;
      }
    }
  }
  SpectralFrame out = apply_deep_filter(history_, coeffs);
  out.index = std::int64_t(slot);
  return out;
}

OracleMapEnhancer::OracleMapEnhancer(std::shared_ptr<const FrameAnalyzer> analyzer,
                                     Signal clean)
    : analyzer_(std::move(analyzer)), clean_(std::move(clean)) {
  if (!analyzer_) throw Error("oracle enhancer needs a frame analyzer");
  if (clean_.sample_rate != analyzer_->config().sample_rate)
    throw Error("clean reference sample rate does not match config");
}

SpectralFrame OracleMapEnhancer::produce(std::size_t slot, std::size_t bins) {
  SpectralFrame out = analyzer_->analyze_at(clean_, slot);
  check_bins(out, bins);
  out.index = std::int64_t(slot);
  return out;
}

MappingFileEnhancer::MappingFileEnhancer(const std::string& path, std::size_t bins,
                                         bool compressed, double compression)
    : compressed_(compressed), compression_(compression) {
  const RealMatrix records = load_records(path, bins * 2, "mapping");
  records_.resize(records.rows);
  for (std::size_t k = 0; k < records.rows; ++k) {
    records_[k].index = std::int64_t(k);
    records_[k].bins.resize(bins);
    for (std::size_t f = 0; f < bins; ++f) {
      records_[k].bins[f] = {records.at(k, 2 * f), records.at(k, 2 * f + 1)};
    }
  }
}

SpectralFrame MappingFileEnhancer::produce(std::size_t slot, std::size_t bins) {
  if (slot >= records_.size())
    throw Error("mapping file has no record for slot " + std::to_string(slot));
  check_bins(records_[slot], bins);
  if (compressed_) return decompress_spectrum(records_[slot], compression_);
  return records_[slot];
}

DeepFilterFileEnhancer::DeepFilterFileEnhancer(const std::string& path,
                                               std::size_t bins) {
  const RealMatrix records = load_records(path, bins * 9 * 2, "df_coeffs");
  records_.resize(records.rows);
  for (std::size_t k = 0; k < records.rows; ++k) {
    DeepFilterCoeffs coeffs(bins);
    for (std::size_t i = 0; i < bins * 9; ++i)
      coeffs.taps[i] = {records.at(k, 2 * i), records.at(k, 2 * i + 1)};
    records_[k] = std::move(coeffs);
  }
}

void DeepFilterFileEnhancer::observe(std::size_t frame_index,
                                     const SpectralFrame& frame) {
  history_.push_back(frame);
  history_.back().index = std::int64_t(frame_index);
  if (history_.size() > 3) history_.erase(history_.begin());
}

SpectralFrame DeepFilterFileEnhancer::produce(std::size_t slot, std::size_t bins) {
  if (history_.empty() || history_.back().index != std::int64_t(slot))
    throw Error("deep filter needs the current frame (filtering-based)");
  if (slot >= records_.size())
    throw Error("coefficient file has no record for slot " + std::to_string(slot));
  check_bins(history_.back(), bins);
  SpectralFrame out = apply_deep_filter(history_, records_[slot]);
  out.index = std::int64_t(slot);
  return out;
}

namespace {

class PredictWrapper : public Enhancer {
 public:
  PredictWrapper(std::unique_ptr<Enhancer> inner, int frames_ahead)
      : inner_(std::move(inner)), frames_ahead_(frames_ahead) {}

  void observe(std::size_t frame_index, const SpectralFrame& frame) override {
    inner_->observe(frame_index, frame);
  }
  SpectralFrame produce(std::size_t slot, std::size_t bins) override {
    return inner_->produce(slot, bins);
  }
  bool mapping_based() const override { return true; }
  int lookahead() const override { return frames_ahead_; }
  void reset() override { inner_->reset(); }

 private:
  std::unique_ptr<Enhancer> inner_;
  int frames_ahead_;
};

}  // namespace

std::unique_ptr<Enhancer> predict_wrapper(std::unique_ptr<Enhancer> inner,
                                          int frames_ahead) {
  if (!inner) throw Error("predict wrapper needs an enhancer");
  if (frames_ahead < 1)
    throw Error("predict mode requires at least one lookahead frame");
  if (!inner->mapping_based())
    throw Error(
        "future-frame prediction requires a mapping-based enhancer; "
        "filtering-based targets need the current frame");
  return std::make_unique<PredictWrapper>(std::move(inner), frames_ahead);
}

}  // namespace lowlat
