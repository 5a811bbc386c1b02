// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lowlat/core.hpp"

#include <cmath>
#include <fstream>

namespace lowlat {

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::OverlapAdd:
      return "overlap_add";
    case Mode::Fbe:
      return "fbe";
    case Mode::PredictAhead:
      return "predict_ahead";
  }
  throw Error("unknown mode");
}

Mode mode_from_name(const std::string& name) {
  if (name == "overlap_add") return Mode::OverlapAdd;
  if (name == "fbe") return Mode::Fbe;
  if (name == "predict_ahead") return Mode::PredictAhead;
  throw Error("unknown mode: \"" + name + "\"");
}

std::optional<std::string> validate_config(const StreamConfig& c) {
  if (c.sample_rate <= 0) return "sample rate must be positive";
  if (c.hop <= 0) return "hop must be positive";
  if (c.mode == Mode::Fbe) return std::nullopt;  // window geometry unused
  if (c.hop > c.synthesis_len) return "hop exceeds synthesis window";
  if (c.synthesis_len > c.analysis_len)
    return "synthesis window exceeds analysis window";
  if (c.analysis_len > c.transform_size)
    return "analysis window exceeds transform size";
  if (c.mode == Mode::PredictAhead) {
    if (c.predict_frames < 1)
      return "predict mode requires at least one lookahead frame";
    if (c.synthesis_len != 2 * c.hop)
      return "predict mode requires 50% overlap (synthesis length = 2*hop)";
  }
  return std::nullopt;
}

void require_valid(const StreamConfig& config) {
  if (auto err = validate_config(config)) throw Error(*err);
}

LatencySpec derive_latency(const StreamConfig& c) {
  require_valid(c);
  LatencySpec spec;
  spec.buffer = c.hop;
  spec.sample_rate = c.sample_rate;
  switch (c.mode) {
    case Mode::OverlapAdd:
      spec.algorithmic = c.synthesis_len - c.hop;
      break;
    case Mode::PredictAhead:
      spec.algorithmic =
          std::max(c.synthesis_len - (1 + c.predict_frames) * c.hop, 0);
      break;
    case Mode::Fbe:
      spec.algorithmic = 0;
      break;
  }
  spec.total = spec.algorithmic + spec.buffer;
  return spec;
}

std::size_t frame_count(std::size_t signal_len, const StreamConfig& c) {
  require_valid(c);
  const std::size_t frame_len =
      c.mode == Mode::Fbe ? std::size_t(c.hop) : std::size_t(c.analysis_len);
  if (signal_len < frame_len) return 0;
  return (signal_len - frame_len) / std::size_t(c.hop) + 1;
}

namespace {

int ms_to_samples(double ms, int sample_rate, const std::string& key) {
  const double exact = ms * sample_rate / 1000.0;
  const double rounded = std::round(exact);
  if (std::abs(exact - rounded) > 1e-9 * std::max(1.0, std::abs(exact))) {
    throw Error(key + " = " + std::to_string(ms) +
                " ms is not a whole number of samples at " +
                std::to_string(sample_rate) + " Hz");
  }
  return int(rounded);
}

double samples_to_ms(int samples, int sample_rate) {
  return samples * 1000.0 / sample_rate;
}

}  // namespace

StreamConfig config_from_json(const nlohmann::json& doc) {
  StreamConfig c;
  c.sample_rate = doc.value("sample_rate", 16000);
  if (c.sample_rate <= 0) throw Error("sample rate must be positive");
  c.mode = mode_from_name(doc.value("mode", std::string("overlap_add")));
  if (!doc.contains("hop_ms")) throw Error("config is missing hop_ms");
  c.hop = ms_to_samples(doc.at("hop_ms").get<double>(), c.sample_rate, "hop_ms");
  if (c.mode == Mode::Fbe) {
    // Window geometry is unused; keep the 2P chunk footprint for diagnostics.
    c.analysis_len = c.synthesis_len = 2 * c.hop;
    c.transform_size = 2 * c.hop;
  } else {
    if (!doc.contains("analysis_ms")) throw Error("config is missing analysis_ms");
    if (!doc.contains("synthesis_ms"))
      throw Error("config is missing synthesis_ms");
    c.analysis_len = ms_to_samples(doc.at("analysis_ms").get<double>(),
                                   c.sample_rate, "analysis_ms");
    c.synthesis_len = ms_to_samples(doc.at("synthesis_ms").get<double>(),
                                    c.sample_rate, "synthesis_ms");
    c.transform_size = doc.value("transform_size", c.analysis_len);
  }
  c.predict_frames = doc.value("predict_frames", 0);
  require_valid(c);
  return c;
}

nlohmann::json config_to_json(const StreamConfig& c) {
  nlohmann::json doc;
  doc["sample_rate"] = c.sample_rate;
  doc["analysis_ms"] = samples_to_ms(c.analysis_len, c.sample_rate);
  doc["synthesis_ms"] = samples_to_ms(c.synthesis_len, c.sample_rate);
  doc["hop_ms"] = samples_to_ms(c.hop, c.sample_rate);
  doc["transform_size"] = c.transform_size;
  doc["mode"] = mode_name(c.mode);
  doc["predict_frames"] = c.predict_frames;
  return doc;
}

StreamConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed config JSON in " + path + ": " + e.what());
  }
  return config_from_json(doc);
}

}  // namespace lowlat
