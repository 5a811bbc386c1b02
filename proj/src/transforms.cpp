// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lowlat/transforms.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

#include "lowlat/enhance.hpp"

namespace lowlat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_even(int transform_size) {
  if (transform_size < 2 || transform_size % 2 != 0)
    throw Error("transform size must be even and at least 2");
}

}  // namespace

TransformBasis TransformBasis::canonical() { return TransformBasis(); }

TransformBasis TransformBasis::learned(RealMatrix analysis, RealMatrix synthesis,
                                       bool rectify) {
  if (analysis.rows == 0 || synthesis.rows == 0)
    throw Error("learned basis matrices must be non-empty");
  if (analysis.rows != synthesis.rows)
    throw Error("analysis and synthesis bases disagree on feature count");
  TransformBasis basis;
  basis.canonical_ = false;
  basis.rectify_ = rectify;
  basis.analysis_ = std::move(analysis);
  basis.synthesis_ = std::move(synthesis);
  return basis;
}

const RealMatrix& TransformBasis::analysis_matrix() const {
  if (canonical_) throw Error("canonical basis has no explicit analysis matrix");
  return analysis_;
}

const RealMatrix& TransformBasis::synthesis_matrix() const {
  if (canonical_) throw Error("canonical basis has no explicit synthesis matrix");
  return synthesis_;
}

std::size_t TransformBasis::feature_count(int transform_size) const {
  if (canonical_) {
    check_even(transform_size);
    return std::size_t(transform_size) / 2 + 1;
  }
  return analysis_.rows;
}

SpectralFrame analyze_frame(std::span<const double> frame,
                            std::span<const double> analysis_window,
                            const TransformBasis& basis, int transform_size) {
  if (frame.size() != analysis_window.size())
    throw Error("frame length does not match analysis window");
  const int la = int(frame.size());

  std::vector<double> windowed(frame.size());
  for (std::size_t n = 0; n < frame.size(); ++n)
    windowed[n] = frame[n] * analysis_window[n];

  SpectralFrame out;
  if (basis.is_canonical()) {
    check_even(transform_size);
    if (transform_size < la) throw Error("analysis window exceeds transform size");
    const int n_full = transform_size;
    const int bins = n_full / 2 + 1;
    // Windowed frame sits at the tail of the transform buffer, so the
    // inverse stage's last L_s samples are the most recent ones.
    const int offset = n_full - la;
    out.bins.resize(std::size_t(bins));
    for (int f = 0; f < bins; ++f) {
      double re = 0.0, im = 0.0;
      for (int n = 0; n < la; ++n) {
        const double angle = kTwoPi * f * (n + offset) / n_full;
        re += windowed[std::size_t(n)] * std::cos(angle);
        im -= windowed[std::size_t(n)] * std::sin(angle);
      }
      out.bins[std::size_t(f)] = {re, im};
    }
  } else {
    const RealMatrix& m = basis.analysis_matrix();
    if (m.cols != frame.size())
      throw Error("analysis matrix columns do not match frame length");
    out.bins.resize(m.rows);
    for (std::size_t f = 0; f < m.rows; ++f) {
      double acc = 0.0;
      const double* row = &m.data[f * m.cols];
      for (std::size_t n = 0; n < m.cols; ++n) acc += row[n] * windowed[n];
      if (basis.rectify() && acc < 0.0) acc = 0.0;
      out.bins[f] = {acc, 0.0};
    }
  }
  return out;
}

std::vector<double> synthesize_frame(const SpectralFrame& spec,
                                     std::span<const double> synthesis_window,
                                     const TransformBasis& basis,
                                     int synthesis_len) {
  if (int(synthesis_window.size()) != synthesis_len)
    throw Error("synthesis window length does not match synthesis_len");

  std::vector<double> out(std::size_t(synthesis_len), 0.0);
  if (basis.is_canonical()) {
    const int n_full = 2 * (int(spec.size()) - 1);
    if (n_full < synthesis_len)
      throw Error("synthesis window exceeds transform size");
    for (int t = 0; t < synthesis_len; ++t) {
      const int n = n_full - synthesis_len + t;
      double acc = 0.0;
      for (int f = 0; f < int(spec.size()); ++f) {
        const double weight = (f == 0 || f == n_full / 2) ? 1.0 : 2.0;
        const double angle = kTwoPi * f * n / n_full;
        acc += weight * (spec.bins[std::size_t(f)].real() * std::cos(angle) -
                         spec.bins[std::size_t(f)].imag() * std::sin(angle));
      }
      out[std::size_t(t)] = acc / n_full;
    }
  } else {
    const RealMatrix& m = basis.synthesis_matrix();
    if (m.rows != spec.size())
      throw Error("frame length does not match synthesis matrix rows");
    if (int(m.cols) != synthesis_len)
      throw Error("synthesis matrix columns do not match synthesis_len");
    for (std::size_t f = 0; f < m.rows; ++f) {
      const double v = spec.bins[f].real();
      const double* row = &m.data[f * m.cols];
      for (std::size_t t = 0; t < m.cols; ++t) out[t] += v * row[t];
    }
  }
  for (int t = 0; t < synthesis_len; ++t)
    out[std::size_t(t)] *= synthesis_window[std::size_t(t)];
  return out;
}

FrameAnalyzer::FrameAnalyzer(const StreamConfig& config,
                             std::vector<double> analysis_window,
                             TransformBasis basis)
    : config_(config), window_(std::move(analysis_window)), basis_(std::move(basis)) {
  require_valid(config_);
  if (int(window_.size()) != config_.analysis_len)
    throw Error("analysis window length does not match config");
  bins_ = basis_.feature_count(config_.transform_size);
  if (basis_.is_canonical()) {
    const int n_full = config_.transform_size;
    const int la = config_.analysis_len;
    const int offset = n_full - la;
    fwd_cos_.resize(bins_ * std::size_t(la));
    fwd_sin_.resize(bins_ * std::size_t(la));
    for (std::size_t f = 0; f < bins_; ++f) {
      for (int n = 0; n < la; ++n) {
        const double angle = kTwoPi * double(f) * (n + offset) / n_full;
        fwd_cos_[f * std::size_t(la) + std::size_t(n)] = std::cos(angle);
        fwd_sin_[f * std::size_t(la) + std::size_t(n)] = std::sin(angle);
      }
    }
  } else {
    if (basis_.analysis_matrix().cols != std::size_t(config_.analysis_len))
      throw Error("analysis matrix columns do not match config");
    if (basis_.analysis_matrix().rows != std::size_t(config_.transform_size))
      throw Error("analysis matrix rows do not match transform size");
  }
}

SpectralFrame FrameAnalyzer::analyze(std::span<const double> frame,
                                     std::int64_t index) const {
  if (int(frame.size()) != config_.analysis_len)
    throw Error("frame length does not match analysis window");

  SpectralFrame out;
  out.index = index;
  const std::size_t la = frame.size();
  std::vector<double> windowed(la);
  for (std::size_t n = 0; n < la; ++n) windowed[n] = frame[n] * window_[n];

  if (basis_.is_canonical()) {
    out.bins.resize(bins_);
    for (std::size_t f = 0; f < bins_; ++f) {
      const double* c = &fwd_cos_[f * la];
      const double* s = &fwd_sin_[f * la];
      double re = 0.0, im = 0.0;
      for (std::size_t n = 0; n < la; ++n) {
        re += windowed[n] * c[n];
        im -= windowed[n] * s[n];
      }
      out.bins[f] = {re, im};
    }
  } else {
    const RealMatrix& m = basis_.analysis_matrix();
    out.bins.resize(m.rows);
    for (std::size_t f = 0; f < m.rows; ++f) {
      double acc = 0.0;
      const double* row = &m.data[f * m.cols];
      for (std::size_t n = 0; n < la; ++n) acc += row[n] * windowed[n];
      if (basis_.rectify() && acc < 0.0) acc = 0.0;
      out.bins[f] = {acc, 0.0};
    }
  }
  return out;
}

SpectralFrame FrameAnalyzer::analyze_at(const Signal& signal,
                                        std::size_t frame_index) const {
  const std::size_t start = frame_index * std::size_t(config_.hop);
  const std::size_t la = std::size_t(config_.analysis_len);
  if (start + la > signal.size())
    throw Error("frame " + std::to_string(frame_index) + " exceeds signal length");
  return analyze(std::span<const double>(signal.samples).subspan(start, la),
                 std::int64_t(frame_index));
}

StreamEngine::StreamEngine(const StreamConfig& config, const WindowPair& pair,
                           TransformBasis basis)
    : config_(config), pair_(pair), basis_(std::move(basis)) {
  require_valid(config_);
  if (config_.mode == Mode::Fbe)
    throw Error("stream engine handles overlap-add modes; use run_fbe for FBE");
  if (!pair_.normalized)
    throw Error("window pair is not normalized; call pr_normalize first");
  if (pair_.analysis_len() != config_.analysis_len ||
      pair_.synthesis_len() != config_.synthesis_len || pair_.hop != config_.hop)
    throw Error("window pair does not match config geometry");

  analyzer_ = std::make_shared<const FrameAnalyzer>(config_, pair_.analysis, basis_);

  if (basis_.is_canonical()) {
    const int n_full = config_.transform_size;
    const int ls = config_.synthesis_len;
    const std::size_t bins = analyzer_->bins();
    inv_cos_.resize(std::size_t(ls) * bins);
    inv_sin_.resize(std::size_t(ls) * bins);
    for (int t = 0; t < ls; ++t) {
      const int n = n_full - ls + t;
      for (std::size_t f = 0; f < bins; ++f) {
        const double weight = (f == 0 || int(f) == n_full / 2) ? 1.0 : 2.0;
        const double angle = kTwoPi * double(f) * n / n_full;
        inv_cos_[std::size_t(t) * bins + f] = weight * std::cos(angle) / n_full;
        inv_sin_[std::size_t(t) * bins + f] = weight * std::sin(angle) / n_full;
      }
    }
  } else {
    const RealMatrix& m = basis_.synthesis_matrix();
    if (m.rows != std::size_t(config_.transform_size))
      throw Error("synthesis matrix rows do not match transform size");
    if (m.cols != std::size_t(config_.synthesis_len))
      throw Error("synthesis matrix columns do not match config");
  }
}

std::vector<double> StreamEngine::synthesize(const SpectralFrame& spec) const {
  const int ls = config_.synthesis_len;
  std::vector<double> out(std::size_t(ls), 0.0);
  if (basis_.is_canonical()) {
    const std::size_t bins = analyzer_->bins();
    if (spec.size() != bins) throw Error("enhancer output shape mismatch");
    for (int t = 0; t < ls; ++t) {
      const double* c = &inv_cos_[std::size_t(t) * bins];
      const double* s = &inv_sin_[std::size_t(t) * bins];
      double acc = 0.0;
      for (std::size_t f = 0; f < bins; ++f) {
        acc += spec.bins[f].real() * c[f] - spec.bins[f].imag() * s[f];
      }
      out[std::size_t(t)] = acc * pair_.synthesis[std::size_t(t)];
    }
  } else {
    const RealMatrix& m = basis_.synthesis_matrix();
    if (spec.size() != m.rows) throw Error("enhancer output shape mismatch");
    for (std::size_t f = 0; f < m.rows; ++f) {
      const double v = spec.bins[f].real();
      const double* row = &m.data[f * m.cols];
      for (std::size_t t = 0; t < m.cols; ++t) out[t] += v * row[t];
    }
    for (int t = 0; t < ls; ++t)
      out[std::size_t(t)] *= pair_.synthesis[std::size_t(t)];
  }
  return out;
}

Signal StreamEngine::run(const Signal& input, Enhancer& enhancer) {
  if (input.sample_rate != config_.sample_rate)
    throw Error("signal sample rate does not match config");
  const int lookahead =
      config_.mode == Mode::PredictAhead ? config_.predict_frames : 0;
  if (lookahead > 0) {
    if (!enhancer.mapping_based())
      throw Error("future-frame prediction requires a mapping-based enhancer");
    if (enhancer.lookahead() != 0 && enhancer.lookahead() != lookahead)
      throw Error("predict wrapper lookahead disagrees with config");
  }

  const std::size_t len = input.size();
  const std::size_t slots = frame_count(len, config_);
  Signal output;
  output.sample_rate = input.sample_rate;
  output.samples.assign(len, 0.0);
  enhancer.reset();

  const std::size_t la = std::size_t(config_.analysis_len);
  const std::size_t ls = std::size_t(config_.synthesis_len);
  const std::size_t hop = std::size_t(config_.hop);
  std::size_t next_frame = 0;
  for (std::size_t slot = 0; slot < slots; ++slot) {
    // Feed exactly the frames the mode makes causally available.
    while (next_frame < slots &&
           std::int64_t(next_frame) <= std::int64_t(slot) - lookahead) {
      enhancer.observe(next_frame, analyzer_->analyze_at(input, next_frame));
      ++next_frame;
    }
    const SpectralFrame enhanced = enhancer.produce(slot, analyzer_->bins());
    const std::vector<double> segment = synthesize(enhanced);

    const std::size_t start = slot * hop + la - ls;
    for (std::size_t u = 0; u < ls && start + u < len; ++u)
      output.samples[start + u] += segment[u];
  }
  return output;
}

Signal stream_ola(const Signal& input, const StreamConfig& config,
                  const WindowPair& pair, const TransformBasis& basis,
                  Enhancer& enhancer) {
  StreamEngine engine(config, pair, basis);
  return engine.run(input, enhancer);
}

std::pair<RealMatrix, RealMatrix> make_dft_stacked_matrices(int transform_size,
                                                            int analysis_len,
                                                            int synthesis_len) {
  check_even(transform_size);
  if (analysis_len > transform_size || synthesis_len > transform_size)
    throw Error("window lengths exceed transform size");
  const int n_full = transform_size;
  const int half = n_full / 2;
  const int offset = n_full - analysis_len;

  // Features: [Re X_0 .. Re X_{N/2}, Im X_1 .. Im X_{N/2-1}], N rows total.
  RealMatrix analysis{std::size_t(n_full), std::size_t(analysis_len)};
  for (int f = 0; f <= half; ++f) {
    for (int n = 0; n < analysis_len; ++n) {
      const double angle = kTwoPi * f * (n + offset) / n_full;
      analysis.at(std::size_t(f), std::size_t(n)) = std::cos(angle);
    }
  }
  for (int g = 1; g < half; ++g) {
    for (int n = 0; n < analysis_len; ++n) {
      const double angle = kTwoPi * g * (n + offset) / n_full;
      analysis.at(std::size_t(half + g), std::size_t(n)) = -std::sin(angle);
    }
  }

  RealMatrix synthesis{std::size_t(n_full), std::size_t(synthesis_len)};
  for (int t = 0; t < synthesis_len; ++t) {
    const int n = n_full - synthesis_len + t;
    for (int f = 0; f <= half; ++f) {
      const double weight = (f == 0 || f == half) ? 1.0 : 2.0;
      const double angle = kTwoPi * f * n / n_full;
      synthesis.at(std::size_t(f), std::size_t(t)) =
          weight * std::cos(angle) / n_full;
    }
    for (int g = 1; g < half; ++g) {
      const double angle = kTwoPi * g * n / n_full;
      synthesis.at(std::size_t(half + g), std::size_t(t)) =
          -2.0 * std::sin(angle) / n_full;
    }
  }
  return std::make_pair(std::move(analysis), std::move(synthesis));
}

void save_matrix(const std::string& path, const RealMatrix& m,
                 const std::string& role) {
  nlohmann::json sidecar;
  sidecar["rows"] = m.rows;
  sidecar["cols"] = m.cols;
  sidecar["role"] = role;
  std::ofstream meta(path + ".json");
  if (!meta) throw Error("cannot open for writing: " + path + ".json");
  meta << sidecar.dump(2) << "\n";

  std::ofstream bin(path, std::ios::binary);
  if (!bin) throw Error("cannot open for writing: " + path);
  std::vector<float> floats(m.data.begin(), m.data.end());
  bin.write(reinterpret_cast<const char*>(floats.data()),
            std::streamsize(floats.size() * sizeof(float)));
}

namespace {

RealMatrix load_float_container(const std::string& path,
                                std::optional<std::size_t> expected_rows,
                                std::size_t expected_cols,
                                const std::string& expected_role) {
  std::ifstream meta(path + ".json");
  if (!meta) throw Error("missing sidecar file: " + path + ".json");
  nlohmann::json sidecar;
  try {
    meta >> sidecar;
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed sidecar " + path + ".json: " + e.what());
  }
  if (!sidecar.contains("rows") || !sidecar.contains("cols") ||
      !sidecar.contains("role"))
    throw Error("sidecar " + path + ".json lacks rows/cols/role");
  const auto rows = sidecar.at("rows").get<std::size_t>();
  const auto cols = sidecar.at("cols").get<std::size_t>();
  const auto role = sidecar.at("role").get<std::string>();
  if (role != expected_role)
    throw Error("sidecar role \"" + role + "\" does not match expected \"" +
                expected_role + "\"");
  if ((expected_rows && rows != *expected_rows) || cols != expected_cols) {
    const std::string want_rows =
        expected_rows ? std::to_string(*expected_rows) : std::string("*");
    throw Error("matrix is " + std::to_string(rows) + "x" + std::to_string(cols) +
                " but config expects " + want_rows + "x" +
                std::to_string(expected_cols));
  }

  std::ifstream bin(path, std::ios::binary);
  if (!bin) throw Error("cannot open: " + path);
  std::vector<float> floats(rows * cols);
  bin.read(reinterpret_cast<char*>(floats.data()),
           std::streamsize(floats.size() * sizeof(float)));
  if (std::size_t(bin.gcount()) != floats.size() * sizeof(float))
    throw Error("matrix file " + path + " is shorter than rows*cols floats");

  RealMatrix m(rows, cols);
  for (std::size_t i = 0; i < floats.size(); ++i) {
    if (!std::isfinite(floats[i]))
      throw Error("matrix file " + path + " contains a non-finite value");
    m.data[i] = double(floats[i]);
  }
  return m;
}

}  // namespace

RealMatrix load_matrix(const std::string& path, std::size_t expected_rows,
                       std::size_t expected_cols,
                       const std::string& expected_role) {
  return load_float_container(path, expected_rows, expected_cols, expected_role);
}

RealMatrix load_records(const std::string& path, std::size_t expected_cols,
                        const std::string& expected_role) {
  return load_float_container(path, std::nullopt, expected_cols, expected_role);
}

TransformBasis load_basis(const std::string& analysis_path,
                          const std::string& synthesis_path,
                          const StreamConfig& config, bool rectify) {
  require_valid(config);
  RealMatrix analysis =
      load_matrix(analysis_path, std::size_t(config.transform_size),
                  std::size_t(config.analysis_len), "analysis");
  RealMatrix synthesis =
      load_matrix(synthesis_path, std::size_t(config.transform_size),
                  std::size_t(config.synthesis_len), "synthesis");
  return TransformBasis::learned(std::move(analysis), std::move(synthesis), rectify);
}

}  // namespace lowlat
