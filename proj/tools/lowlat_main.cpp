// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Command-line front end: streaming enhancement pipelines, window export,
// perfect-reconstruction checks, latency audits, metrics, and the experiment
// matrix runner.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "lowlat/audit.hpp"
#include "lowlat/enhance.hpp"
#include "lowlat/experiment.hpp"
#include "lowlat/fbe.hpp"
#include "lowlat/metrics.hpp"
#include "lowlat/mix.hpp"
#include "lowlat/transforms.hpp"
#include "lowlat/wav.hpp"
#include "lowlat/windows.hpp"

namespace fs = std::filesystem;
using namespace lowlat;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string preset;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

// Table-style geometry presets at 16 kHz with N = 320.
struct Preset {
  StreamConfig config;
  std::string window_kind;
};

Preset preset_config(const std::string& name) {
  auto ola = [](int la, int ls, int hop) {
    StreamConfig c;
    c.analysis_len = la;
    c.synthesis_len = ls;
    c.hop = hop;
    c.transform_size = 320;
    c.mode = Mode::OverlapAdd;
    return c;
  };
  if (name == "A1") return {ola(320, 320, 160), "sym"};
  if (name == "A2") return {ola(160, 160, 80), "sym"};
  if (name == "A3") return {ola(80, 80, 40), "sym"};
  if (name == "A4") return {ola(48, 48, 24), "sym"};
  if (name == "B1") return {ola(320, 160, 80), "asym"};
  if (name == "B2") return {ola(320, 80, 40), "asym"};
  if (name == "B3") return {ola(320, 48, 24), "asym"};
  if (name == "C1") return {ola(320, 160, 80), "learned"};
  if (name == "C2") return {ola(320, 80, 40), "learned"};
  if (name == "C3") return {ola(320, 48, 24), "learned"};
  if (name == "G1") return {ola(320, 48, 24), "asym"};
  if (name == "G2") {
    StreamConfig c = ola(96, 96, 48);
    c.mode = Mode::PredictAhead;
    c.predict_frames = 1;
    return {c, "sym"};
  }
  if (name == "H1" || name == "H2" || name == "H3") {
    StreamConfig c;
    c.mode = Mode::Fbe;
    c.hop = name == "H1" ? 160 : name == "H2" ? 80 : 40;
    c.analysis_len = c.synthesis_len = c.transform_size = 2 * c.hop;
    return {c, "-"};
  }
  throw Error("unknown preset \"" + name + "\" (A1-A4, B1-B3, C1-C3, G1, G2, H1-H3)");
}

StreamConfig resolve_config(const CommonArgs& args, std::string* window_kind) {
  if (!args.preset.empty()) {
    Preset preset = preset_config(args.preset);
    if (window_kind && window_kind->empty()) *window_kind = preset.window_kind;
    return preset.config;
  }
  if (args.config_path.empty())
    throw Error("either --config or --preset is required");
  return load_config(args.config_path);
}

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config_path, "Pipeline config JSON file");
  sub->add_option("--preset", args.preset,
                  "Named geometry preset (A1-A4, B1-B3, C1-C3, G1, G2, H1-H3)");
  sub->add_option("--seed", args.seed, "RNG seed");
  sub->add_option("--out", args.out_dir, "Output directory");
}

WindowPair pair_for(const StreamConfig& config, const std::string& window_kind) {
  if (window_kind == "asym")
    return pr_normalize(asym_pair(config.analysis_len, config.synthesis_len));
  if (window_kind == "sym" || window_kind == "learned" || window_kind.empty()) {
    if (config.analysis_len != config.synthesis_len)
      throw Error("sym window requires equal analysis/synthesis lengths; "
                  "use --window asym");
    return pr_normalize(sym_pair(config.analysis_len));
  }
  throw Error("unknown window kind \"" + window_kind + "\"");
}

TransformBasis basis_for(const StreamConfig& config, const std::string& window_kind,
                         const std::string& analysis_path,
                         const std::string& synthesis_path, bool rectify) {
  if (!analysis_path.empty() || !synthesis_path.empty()) {
    if (analysis_path.empty() || synthesis_path.empty())
      throw Error("--basis-analysis and --basis-synthesis go together");
    return load_basis(analysis_path, synthesis_path, config, rectify);
  }
  if (window_kind == "learned") {
    auto [a, s] = make_dft_stacked_matrices(config.transform_size,
                                            config.analysis_len,
                                            config.synthesis_len);
    return TransformBasis::learned(std::move(a), std::move(s), rectify);
  }
  return TransformBasis::canonical();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lowlat: ultra-low latency speech enhancement pipelines"};
  app.require_subcommand(1);

  // enhance
  CommonArgs enh_args;
  std::string enh_in, enh_clean, enh_output, enh_window, enh_kind = "identity";
  std::string enh_basis_a, enh_basis_s;
  bool enh_rectify = false;
  auto* enh = app.add_subcommand("enhance", "Run one pipeline over a WAV file");
  add_common(enh, enh_args);
  enh->add_option("--in", enh_in, "Input (noisy) WAV")->required();
  enh->add_option("--clean", enh_clean, "Clean reference WAV (oracle enhancers)");
  enh->add_option("--output", enh_output, "Output WAV (default <out>/enhanced.wav)");
  enh->add_option("--window", enh_window, "Window kind: sym|asym|learned");
  enh->add_option("--enhancer", enh_kind,
                  "identity|zero|repeat_last|oracle_wiener|oracle_deep_filter|"
                  "oracle_map|oracle_predict");
  enh->add_option("--basis-analysis", enh_basis_a, "Learned analysis basis file");
  enh->add_option("--basis-synthesis", enh_basis_s, "Learned synthesis basis file");
  enh->add_flag("--rectify", enh_rectify, "ReLU on learned analysis features");

  // mix
  CommonArgs mix_args;
  std::string mix_clean, mix_noise;
  double mix_snr = 5.0;
  auto* mixer = app.add_subcommand("mix", "Mix clean speech and noise at an SNR");
  add_common(mixer, mix_args);
  mixer->add_option("--clean", mix_clean, "Clean speech WAV")->required();
  mixer->add_option("--noise", mix_noise, "Noise WAV")->required();
  mixer->add_option("--snr", mix_snr, "Target SNR in dB");

  // pr-check
  CommonArgs pr_args;
  std::string pr_window;
  auto* pr = app.add_subcommand("pr-check",
                                "Verify perfect reconstruction of a window pair");
  add_common(pr, pr_args);
  pr->add_option("--window", pr_window, "Window kind: sym|asym");

  // audit-latency
  CommonArgs audit_args;
  auto* audit_cmd =
      app.add_subcommand("audit-latency", "Declared vs measured latency as JSON");
  add_common(audit_cmd, audit_args);

  // metrics
  CommonArgs met_args;
  std::string met_est, met_ref;
  auto* met = app.add_subcommand("metrics", "SI-SDR / SNR / LSD of two WAV files");
  add_common(met, met_args);
  met->add_option("--est", met_est, "Estimate WAV")->required();
  met->add_option("--ref", met_ref, "Reference WAV")->required();

  // run-experiment
  CommonArgs exp_args;
  std::string exp_matrix, exp_corpus;
  auto* exp = app.add_subcommand("run-experiment",
                                 "Run an experiment matrix over a paired corpus");
  add_common(exp, exp_args);
  exp->add_option("--matrix", exp_matrix, "Matrix JSON file")->required();
  exp->add_option("--corpus", exp_corpus, "Corpus directory")->required();

  // make-windows
  CommonArgs win_args;
  std::string win_window;
  auto* win = app.add_subcommand("make-windows",
                                 "Export normalized window weights as CSV");
  add_common(win, win_args);
  win->add_option("--window", win_window, "Window kind: sym|asym");

  // make-corpus
  CommonArgs corpus_args;
  int corpus_files = 20;
  double corpus_seconds = 4.0;
  int corpus_rate = 16000;
  auto* corpus = app.add_subcommand(
      "make-corpus", "Write a synthetic paired desk corpus for experiments");
  add_common(corpus, corpus_args);
  corpus->add_option("--files", corpus_files, "Number of clean/noise pairs");
  corpus->add_option("--seconds", corpus_seconds, "Duration per file");
  corpus->add_option("--rate", corpus_rate, "Sample rate in Hz");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enh) {
      StreamConfig config = resolve_config(enh_args, &enh_window);
      const Signal input = wav_read(enh_in);
      Signal clean;
      const bool needs_clean = enh_kind.rfind("oracle", 0) == 0;
      if (needs_clean) {
        if (enh_clean.empty())
          throw Error("--clean is required for oracle enhancers");
        clean = wav_read(enh_clean);
      }

      Signal enhanced;
      if (config.mode == Mode::Fbe) {
        std::unique_ptr<FilterPredictor> predictor;
        if (enh_kind == "identity") {
          predictor = std::make_unique<IdentityFilterPredictor>(2 * config.hop);
        } else if (enh_kind == "oracle_wiener") {
          predictor =
              std::make_unique<OracleWienerFilterPredictor>(clean, 2 * config.hop);
        } else {
          throw Error("FBE mode supports identity and oracle_wiener");
        }
        enhanced = run_fbe(input, config, *predictor);
      } else {
        StreamEngine engine(config, pair_for(config, enh_window),
                            basis_for(config, enh_window, enh_basis_a,
                                      enh_basis_s, enh_rectify));
        std::unique_ptr<Enhancer> enhancer;
        if (enh_kind == "identity") {
          enhancer = std::make_unique<IdentityEnhancer>();
        } else if (enh_kind == "zero") {
          enhancer = std::make_unique<ZeroEnhancer>();
        } else if (enh_kind == "repeat_last") {
          enhancer = std::make_unique<RepeatLastEnhancer>();
        } else if (enh_kind == "oracle_wiener") {
          enhancer = std::make_unique<OracleWienerEnhancer>(engine.analyzer(), clean);
        } else if (enh_kind == "oracle_deep_filter") {
          enhancer =
              std::make_unique<OracleDeepFilterEnhancer>(engine.analyzer(), clean);
        } else if (enh_kind == "oracle_map" || enh_kind == "oracle_predict") {
          enhancer = std::make_unique<OracleMapEnhancer>(engine.analyzer(), clean);
        } else {
          throw Error("unknown enhancer kind \"" + enh_kind + "\"");
        }
        if (config.mode == Mode::PredictAhead && enhancer->mapping_based())
          enhancer = predict_wrapper(std::move(enhancer), config.predict_frames);
        enhanced = engine.run(input, *enhancer);
      }

      fs::create_directories(enh_args.out_dir);
      const std::string output = enh_output.empty()
                                     ? (fs::path(enh_args.out_dir) / "enhanced.wav").string()
                                     : enh_output;
      wav_write(output, enhanced);
      std::cout << output << "\n";
      return 0;
    }

    if (*mixer) {
      const Signal clean = wav_read(mix_clean);
      const Signal noise = wav_read(mix_noise);
      const MixResult result = mix(clean, noise, mix_snr);
      fs::create_directories(mix_args.out_dir);
      const fs::path out(mix_args.out_dir);
      wav_write((out / "mixture.wav").string(), result.mixture);
      wav_write((out / "noise_scaled.wav").string(), result.scaled_noise);
      std::printf("alpha=%.9g\n", result.noise_gain);
      return 0;
    }

    if (*pr) {
      const StreamConfig config = resolve_config(pr_args, &pr_window);
      if (config.mode == Mode::Fbe)
        throw Error("pr-check applies to overlap-add configs");
      const WindowPair pair = pair_for(config, pr_window);
      const double error = pr_error(pair);
      std::printf("pr_error=%.3e\n", error);
      return error <= 1e-6 ? 0 : 1;
    }

    if (*audit_cmd) {
      const StreamConfig config = resolve_config(audit_args, nullptr);
      const LatencyAudit audit = measure_latency(config);
      std::cout << audit_to_json(config, audit).dump(2) << "\n";
      return audit.match ? 0 : 1;
    }

    if (*met) {
      const Signal est = wav_read(met_est);
      const Signal ref = wav_read(met_ref);
      StreamConfig config;
      if (!met_args.config_path.empty() || !met_args.preset.empty()) {
        config = resolve_config(met_args, nullptr);
      } else {
        config = preset_config("A1").config;  // 20 ms / 10 ms diagnostic default
      }
      const MetricReport report = evaluate("cli", est, ref, config);
      std::printf("si_sdr_db=%.6f\nsnr_db=%.6f\nlsd_db=%.6f\n", report.si_sdr_db,
                  report.snr_db, report.lsd_db);
      return 0;
    }

    if (*exp) {
      ExperimentOptions options;
      options.seed = exp_args.seed;
      const ExperimentResult result =
          run_experiment(exp_matrix, exp_corpus, exp_args.out_dir, options);
      std::cout << result.csv_path.string() << "\n";
      std::cout << "files=" << result.files << " failures=" << result.failures
                << " latency_ok=" << (result.latency_ok ? "true" : "false")
                << "\n";
      return result.latency_ok ? 0 : 1;
    }

    if (*win) {
      const StreamConfig config = resolve_config(win_args, &win_window);
      const WindowPair pair = pair_for(config, win_window);
      fs::create_directories(win_args.out_dir);
      const fs::path out(win_args.out_dir);
      write_window_csv((out / "analysis.csv").string(), pair.analysis);
      write_window_csv((out / "synthesis.csv").string(), pair.synthesis);
      std::cout << (out / "analysis.csv").string() << "\n"
                << (out / "synthesis.csv").string() << "\n";
      return 0;
    }

    if (*corpus) {
      make_corpus(corpus_args.out_dir, corpus_files, corpus_seconds, corpus_rate,
                  corpus_args.seed);
      std::cout << corpus_args.out_dir << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
