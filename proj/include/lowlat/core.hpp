// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LOWLAT_CORE_HPP_
#define LOWLAT_CORE_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace lowlat {

/// Error type thrown by all lowlat operations.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Processing mode of a stream pipeline.
enum class Mode {
  OverlapAdd,    // windowed analysis/synthesis with overlap-add resynthesis
  Fbe,           // filterbank equalizer: per-hop FIR filtering, overlap-discard
  PredictAhead,  // overlap-add where frame k+a is predicted from frames <= k
};

std::string mode_name(Mode mode);
Mode mode_from_name(const std::string& name);

/// Frame/hop/transform geometry of one streaming pipeline.
///
/// All lengths are in samples. Frame indices are zero-based in code; the
/// first analysis frame covers input samples [0, analysis_len).
struct StreamConfig {
  int sample_rate = 16000;
  int analysis_len = 0;   // L_a
  int synthesis_len = 0;  // L_s
  int hop = 0;            // P
  int transform_size = 0; // N, full transform length before real-symmetry reduction
  Mode mode = Mode::OverlapAdd;
  int predict_frames = 0; // lookahead a, PredictAhead only

  bool operator==(const StreamConfig&) const = default;
};

/// Latency decomposition of a pipeline, in samples of its sample rate.
struct LatencySpec {
  int algorithmic = 0;
  int buffer = 0;
  int total = 0;
  int sample_rate = 16000;

  double total_ms() const { return total * 1000.0 / sample_rate; }
};

/// Mono sample sequence.
struct Signal {
  std::vector<double> samples;
  int sample_rate = 16000;

  std::size_t size() const { return samples.size(); }
  double duration_s() const { return double(samples.size()) / sample_rate; }
};

/// Returns the first violated config constraint, or nullopt if valid.
std::optional<std::string> validate_config(const StreamConfig& config);

/// Throws Error with the violation message if the config is invalid.
void require_valid(const StreamConfig& config);

/// Analytic latency model. OverlapAdd: L_s - P algorithmic; PredictAhead(a):
/// max(L_s - (1+a)P, 0); FBE: 0. Buffer latency is always one hop.
LatencySpec derive_latency(const StreamConfig& config);

/// Number of complete analysis frames in a signal of `signal_len` samples.
/// Signals shorter than the analysis window produce zero frames.
std::size_t frame_count(std::size_t signal_len, const StreamConfig& config);

/// JSON schema uses milliseconds (sample counts are derived). Conversions
/// must be exact at the configured sample rate; fractional results are
/// config errors. FBE configs may omit the window/transform fields.
StreamConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const StreamConfig& config);
StreamConfig load_config(const std::string& path);

}  // namespace lowlat

#endif  // LOWLAT_CORE_HPP_
