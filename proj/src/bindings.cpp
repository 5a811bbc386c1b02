// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Python bindings for the main operations: config/latency, window design,
// streaming enhancement, FBE, metrics, mixing, and WAV I/O.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "lowlat/audit.hpp"
#include "lowlat/enhance.hpp"
#include "lowlat/experiment.hpp"
#include "lowlat/fbe.hpp"
#include "lowlat/metrics.hpp"
#include "lowlat/mix.hpp"
#include "lowlat/transforms.hpp"
#include "lowlat/wav.hpp"
#include "lowlat/windows.hpp"

namespace py = pybind11;
using namespace lowlat;

namespace {

StreamConfig make_config(int sample_rate, int analysis_len, int synthesis_len,
                         int hop, int transform_size, const std::string& mode,
                         int predict_frames) {
  StreamConfig c;
  c.sample_rate = sample_rate;
  c.analysis_len = analysis_len;
  c.synthesis_len = synthesis_len;
  c.hop = hop;
  c.transform_size = transform_size;
  c.mode = mode_from_name(mode);
  c.predict_frames = predict_frames;
  require_valid(c);
  return c;
}

Signal make_signal(std::vector<double> samples, int sample_rate) {
  Signal s;
  s.samples = std::move(samples);
  s.sample_rate = sample_rate;
  return s;
}

WindowPair pair_for_kind(const StreamConfig& config, const std::string& kind) {
  if (kind == "asym")
    return pr_normalize(asym_pair(config.analysis_len, config.synthesis_len));
  if (kind == "sym") {
    if (config.analysis_len != config.synthesis_len)
      throw Error("sym window requires equal analysis/synthesis lengths");
    return pr_normalize(sym_pair(config.analysis_len));
  }
  throw Error("unknown window kind \"" + kind + "\"");
}

std::unique_ptr<Enhancer> enhancer_for_kind(const std::string& kind,
                                            const StreamEngine& engine,
                                            const Signal* clean) {
  std::unique_ptr<Enhancer> inner;
  if (kind == "identity") {
    inner = std::make_unique<IdentityEnhancer>();
  } else if (kind == "zero") {
    inner = std::make_unique<ZeroEnhancer>();
  } else if (kind == "repeat_last") {
    inner = std::make_unique<RepeatLastEnhancer>();
  } else if (kind == "oracle_wiener" || kind == "oracle_deep_filter" ||
             kind == "oracle_map" || kind == "oracle_predict") {
    if (!clean) throw Error("oracle enhancers need a clean reference");
    if (kind == "oracle_wiener")
      inner = std::make_unique<OracleWienerEnhancer>(engine.analyzer(), *clean);
    else if (kind == "oracle_deep_filter")
      inner = std::make_unique<OracleDeepFilterEnhancer>(engine.analyzer(), *clean);
    else
      inner = std::make_unique<OracleMapEnhancer>(engine.analyzer(), *clean);
  } else {
    throw Error("unknown enhancer kind \"" + kind + "\"");
  }
  return inner;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ultra-low latency speech enhancement pipelines";

  py::register_exception<Error>(m, "LowlatError");

  py::class_<StreamConfig>(m, "StreamConfig")
      .def(py::init(&make_config), py::arg("sample_rate") = 16000,
           py::arg("analysis_len") = 0, py::arg("synthesis_len") = 0,
           py::arg("hop") = 0, py::arg("transform_size") = 0,
           py::arg("mode") = "overlap_add", py::arg("predict_frames") = 0)
      .def_readonly("sample_rate", &StreamConfig::sample_rate)
      .def_readonly("analysis_len", &StreamConfig::analysis_len)
      .def_readonly("synthesis_len", &StreamConfig::synthesis_len)
      .def_readonly("hop", &StreamConfig::hop)
      .def_readonly("transform_size", &StreamConfig::transform_size)
      .def_readonly("predict_frames", &StreamConfig::predict_frames)
      .def_property_readonly(
          "mode", [](const StreamConfig& c) { return mode_name(c.mode); })
      .def("__repr__", [](const StreamConfig& c) {
        return "StreamConfig(" + config_to_json(c).dump() + ")";
      });

  py::class_<LatencySpec>(m, "LatencySpec")
      .def_readonly("algorithmic", &LatencySpec::algorithmic)
      .def_readonly("buffer", &LatencySpec::buffer)
      .def_readonly("total", &LatencySpec::total)
      .def_property_readonly("total_ms", &LatencySpec::total_ms);

  py::class_<LatencyAudit>(m, "LatencyAudit")
      .def_readonly("measured_total", &LatencyAudit::measured_total)
      .def_readonly("declared", &LatencyAudit::declared)
      .def_readonly("match", &LatencyAudit::match);

  py::class_<Signal>(m, "Signal")
      .def(py::init(&make_signal), py::arg("samples"),
           py::arg("sample_rate") = 16000)
      .def_readonly("samples", &Signal::samples)
      .def_readonly("sample_rate", &Signal::sample_rate)
      .def("__len__", [](const Signal& s) { return s.size(); });

  m.def("validate_config", [](const StreamConfig& c) {
    const auto err = validate_config(c);
    return err ? py::object(py::str(*err)) : py::object(py::none());
  });
  m.def("derive_latency", &derive_latency);
  m.def("measure_latency",
        py::overload_cast<const StreamConfig&>(&measure_latency));
  m.def("macs_estimate", &macs_estimate);
  m.def("config_from_json_str", [](const std::string& text) {
    return config_from_json(nlohmann::json::parse(text));
  });

  m.def("periodic_hann", &periodic_hann);
  m.def("sqrt_hann", &sqrt_hann);
  m.def("asym_windows", [](int analysis_len, int synthesis_len) {
    const WindowPair pair = pr_normalize(asym_pair(analysis_len, synthesis_len));
    return py::make_tuple(pair.analysis, pair.synthesis, pair.hop);
  });
  m.def("pr_error_for", [](const StreamConfig& config, const std::string& kind) {
    return pr_error(pair_for_kind(config, kind));
  });

  m.def(
      "enhance",
      [](const Signal& input, const StreamConfig& config,
         const std::string& window_kind, const std::string& enhancer_kind,
         const Signal* clean) {
        if (config.mode == Mode::Fbe) {
          std::unique_ptr<FilterPredictor> predictor;
          if (enhancer_kind == "identity") {
            predictor = std::make_unique<IdentityFilterPredictor>(2 * config.hop);
          } else if (enhancer_kind == "oracle_wiener") {
            if (!clean) throw Error("oracle enhancers need a clean reference");
            predictor = std::make_unique<OracleWienerFilterPredictor>(
                *clean, 2 * config.hop);
          } else {
            throw Error("FBE mode supports identity and oracle_wiener");
          }
          return run_fbe(input, config, *predictor);
        }
        StreamEngine engine(config, pair_for_kind(config, window_kind),
                            TransformBasis::canonical());
        auto enhancer = enhancer_for_kind(enhancer_kind, engine, clean);
        if (config.mode == Mode::PredictAhead && enhancer->mapping_based())
          enhancer = predict_wrapper(std::move(enhancer), config.predict_frames);
        return engine.run(input, *enhancer);
      },
      py::arg("input"), py::arg("config"), py::arg("window") = "sym",
      py::arg("enhancer") = "identity", py::arg("clean") = nullptr);

  m.def("si_sdr", &si_sdr);
  m.def("snr", &snr);
  m.def("log_spectral_distance", &log_spectral_distance);

  m.def("mix", [](const Signal& speech, const Signal& noise, double snr_db) {
    MixResult result = mix(speech, noise, snr_db);
    return py::make_tuple(result.mixture, result.scaled_noise, result.noise_gain);
  });
  m.def("synth_speech", &synth_speech, py::arg("seconds"),
        py::arg("sample_rate") = 16000, py::arg("seed") = 1);
  m.def("synth_noise", &synth_noise, py::arg("seconds"),
        py::arg("sample_rate") = 16000, py::arg("seed") = 1);

  m.def("wav_read", &wav_read);
  m.def(
      "wav_write",
      [](const std::string& path, const Signal& signal, const std::string& format) {
        wav_write(path, signal,
                  format == "pcm16" ? WavFormat::Pcm16 : WavFormat::Float32);
      },
      py::arg("path"), py::arg("signal"), py::arg("format") = "float32");

  m.def(
      "run_experiment",
      [](const std::string& matrix, const std::string& corpus,
         const std::string& out_dir, std::uint64_t seed) {
        ExperimentOptions options;
        options.seed = seed;
        const ExperimentResult result =
            run_experiment(matrix, corpus, out_dir, options);
        return py::make_tuple(result.csv_path.string(), result.latency_ok,
                              result.files, result.failures);
      },
      py::arg("matrix"), py::arg("corpus"), py::arg("out_dir"),
      py::arg("seed") = 1);
  m.def(
      "make_corpus",
      [](const std::string& dir, int files, double seconds, int sample_rate,
         std::uint64_t seed) { make_corpus(dir, files, seconds, sample_rate, seed); },
      py::arg("dir"), py::arg("files"), py::arg("seconds"),
      py::arg("sample_rate") = 16000, py::arg("seed") = 1);

  m.attr("__version__") = "0.1.0";
}
