// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lowlat/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <random>

#include "lowlat/audit.hpp"
#include "lowlat/enhance.hpp"
#include "lowlat/fbe.hpp"
#include "lowlat/metrics.hpp"
#include "lowlat/mix.hpp"
#include "lowlat/transforms.hpp"
#include "lowlat/wav.hpp"
#include "lowlat/windows.hpp"

namespace lowlat {

namespace {

namespace fs = std::filesystem;

std::string fmt(const char* spec, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, value);
  return buf;
}

WindowPair build_pair(const ExperimentRow& row) {
  const StreamConfig& c = row.config;
  if (row.window_kind == "sym" || (row.window_kind == "learned" &&
                                   c.analysis_len == c.synthesis_len)) {
    if (c.analysis_len != c.synthesis_len)
      throw Error("row " + row.id + ": sym window requires equal window lengths");
    if (c.hop * 2 != c.synthesis_len)
      throw Error("row " + row.id + ": sym window requires 50% overlap");
    return pr_normalize(sym_pair(c.analysis_len));
  }
  if (row.window_kind == "asym" || row.window_kind == "learned") {
    if (c.hop * 2 != c.synthesis_len)
      throw Error("row " + row.id + ": asym hop must be half the synthesis window");
    return pr_normalize(asym_pair(c.analysis_len, c.synthesis_len));
  }
  throw Error("row " + row.id + ": unknown window kind \"" + row.window_kind + "\"");
}

TransformBasis build_basis(const ExperimentRow& row) {
  if (row.window_kind == "learned") {
    auto [analysis, synthesis] = make_dft_stacked_matrices(
        row.config.transform_size, row.config.analysis_len,
        row.config.synthesis_len);
    return TransformBasis::learned(std::move(analysis), std::move(synthesis));
  }
  return TransformBasis::canonical();
}

std::unique_ptr<Enhancer> build_enhancer(const ExperimentRow& row,
                                         const StreamEngine& engine,
                                         const Signal& clean) {
  std::unique_ptr<Enhancer> inner;
  const std::string& kind = row.enhancer_kind;
  if (kind == "identity") {
    inner = std::make_unique<IdentityEnhancer>();
  } else if (kind == "zero") {
    inner = std::make_unique<ZeroEnhancer>();
  } else if (kind == "repeat_last") {
    inner = std::make_unique<RepeatLastEnhancer>();
  } else if (kind == "oracle_wiener") {
    inner = std::make_unique<OracleWienerEnhancer>(engine.analyzer(), clean);
  } else if (kind == "oracle_deep_filter") {
    inner = std::make_unique<OracleDeepFilterEnhancer>(engine.analyzer(), clean);
  } else if (kind == "oracle_map" || kind == "oracle_predict") {
    inner = std::make_unique<OracleMapEnhancer>(engine.analyzer(), clean);
  } else {
    throw Error("row " + row.id + ": unknown enhancer kind \"" + kind + "\"");
  }
  if (row.config.mode == Mode::PredictAhead && inner->mapping_based())
    return predict_wrapper(std::move(inner), row.config.predict_frames);
  return inner;
}

std::unique_ptr<FilterPredictor> build_predictor(const ExperimentRow& row,
                                                 const Signal& clean) {
  const int fft_size = 2 * row.config.hop;
  if (row.enhancer_kind == "identity")
    return std::make_unique<IdentityFilterPredictor>(fft_size);
  if (row.enhancer_kind == "oracle_wiener")
    return std::make_unique<OracleWienerFilterPredictor>(clean, fft_size);
  throw Error("row " + row.id + ": unknown FBE enhancer kind \"" +
              row.enhancer_kind + "\"");
}

Signal trimmed(const Signal& signal, std::size_t edge) {
  if (signal.size() <= 2 * edge)
    throw Error("signal too short for steady-state evaluation");
  Signal out;
  out.sample_rate = signal.sample_rate;
  out.samples.assign(signal.samples.begin() + std::ptrdiff_t(edge),
                     signal.samples.end() - std::ptrdiff_t(edge));
  return out;
}

}  // namespace

std::vector<ExperimentRow> load_matrix(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open matrix file: " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed matrix JSON in " + path.string() + ": " + e.what());
  }
  if (!doc.contains("rows") || !doc.at("rows").is_array())
    throw Error("matrix file lacks a rows array");

  std::vector<ExperimentRow> rows;
  for (const auto& entry : doc.at("rows")) {
    ExperimentRow row;
    row.id = entry.at("id").get<std::string>();
    row.window_kind = entry.value("window", std::string("sym"));
    row.enhancer_kind = entry.value("enhancer", std::string("oracle_wiener"));
    row.config = config_from_json(entry.at("config"));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error("matrix file has no rows");
  std::sort(rows.begin(), rows.end(),
            [](const ExperimentRow& a, const ExperimentRow& b) { return a.id < b.id; });
  return rows;
}

ExperimentResult run_experiment(const fs::path& matrix_path,
                                const fs::path& corpus_dir,
                                const fs::path& out_dir,
                                const ExperimentOptions& options) {
  const auto rows = load_matrix(matrix_path);

  // Paired corpus: <id>.clean.wav / <id>.noise.wav.
  std::vector<std::string> ids;
  if (fs::is_directory(corpus_dir)) {
    for (const auto& entry : fs::directory_iterator(corpus_dir)) {
      const std::string name = entry.path().filename().string();
      const std::string suffix = ".clean.wav";
      if (name.size() > suffix.size() &&
          name.substr(name.size() - suffix.size()) == suffix) {
        const std::string id = name.substr(0, name.size() - suffix.size());
        if (fs::exists(corpus_dir / (id + ".noise.wav"))) ids.push_back(id);
      }
    }
  }
  std::sort(ids.begin(), ids.end());
  if (ids.empty()) throw Error("no input pairs found in " + corpus_dir.string());

  // Per-file SNR draw, in sorted file order so runs are reproducible.
  std::mt19937_64 rng(options.seed);
  std::map<std::string, int> snr_by_file;
  for (const auto& id : ids) {
    std::uniform_int_distribution<std::size_t> pick(0, options.snr_choices_db.size() - 1);
    snr_by_file[id] = options.snr_choices_db[pick(rng)];
  }

  fs::create_directories(out_dir);
  const fs::path csv_path = out_dir / "report.csv";
  std::ofstream csv(csv_path);
  if (!csv) throw Error("cannot open for writing: " + csv_path.string());
  csv << "row,file,iWin_ms,oWin_ms,latency_ms_declared,latency_ms_measured,"
         "si_sdr_in,si_sdr_out,snr_out,lsd_out,macs_rel\n";

  ExperimentResult result;
  result.csv_path = csv_path;

  for (const auto& row : rows) {
    const StreamConfig& config = row.config;
    const bool fbe = config.mode == Mode::Fbe;
    const LatencyAudit audit = measure_latency(config);
    if (!audit.match) result.latency_ok = false;

    const double macs_rel = double(options.macs_reference_hop) / config.hop;
    const std::string iwin_ms =
        fbe ? "-" : fmt("%.6g", config.analysis_len * 1000.0 / config.sample_rate);
    const std::string owin_ms =
        fbe ? "-" : fmt("%.6g", config.synthesis_len * 1000.0 / config.sample_rate);

    std::unique_ptr<StreamEngine> engine;
    if (!fbe) {
      engine = std::make_unique<StreamEngine>(config, build_pair(row),
                                              build_basis(row));
    }

    for (const auto& id : ids) {
      try {
        const Signal clean = wav_read((corpus_dir / (id + ".clean.wav")).string());
        const Signal noise = wav_read((corpus_dir / (id + ".noise.wav")).string());
        if (clean.sample_rate != config.sample_rate)
          throw Error("corpus sample rate does not match row config");

        // Identity rows audit reconstruction: the pipeline input is the clean
        // signal itself, so si_sdr_out reports the PR limit.
        const bool identity_row = row.enhancer_kind == "identity";
        Signal input;
        if (identity_row) {
          input = clean;
        } else {
          input = mix(clean, noise, snr_by_file.at(id)).mixture;
        }

        Signal enhanced;
        if (fbe) {
          auto predictor = build_predictor(row, clean);
          enhanced = run_fbe(input, config, *predictor);
        } else {
          auto enhancer = build_enhancer(row, *engine, clean);
          enhanced = engine->run(input, *enhancer);
        }

        // Steady-state evaluation: drop one analysis window of warm-up on
        // both ends before computing metrics.
        const auto edge = std::size_t(config.analysis_len);
        const Signal clean_t = trimmed(clean, edge);
        const Signal input_t = trimmed(input, edge);
        const Signal enhanced_t = trimmed(enhanced, edge);

        const double si_in = si_sdr(input_t, clean_t);
        const double si_out = si_sdr(enhanced_t, clean_t);
        const double snr_out = snr(enhanced_t, clean_t);
        const double lsd_out = log_spectral_distance(enhanced_t, clean_t, config);

        csv << row.id << ',' << id << ',' << iwin_ms << ',' << owin_ms << ','
            << fmt("%.6g", audit.declared.total_ms()) << ','
            << fmt("%.6g", audit.measured_total * 1000.0 / config.sample_rate)
            << ',' << fmt("%.6f", si_in) << ',' << fmt("%.6f", si_out) << ','
            << fmt("%.6f", snr_out) << ',' << fmt("%.6f", lsd_out) << ','
            << fmt("%.6g", macs_rel) << '\n';
        ++result.files;
      } catch (const std::exception& e) {
        std::cerr << "row " << row.id << " file " << id << " failed: " << e.what()
                  << "\n";
        ++result.failures;
      }
    }
  }
  csv.flush();
  if (!csv) throw Error("write failed: " + csv_path.string());
  return result;
}

void make_corpus(const fs::path& dir, int files, double seconds, int sample_rate,
                 std::uint64_t seed) {
  if (files <= 0) throw Error("corpus needs at least one file");
  fs::create_directories(dir);
  for (int i = 0; i < files; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "desk%02d", i);
    const Signal speech =
        synth_speech(seconds, sample_rate, seed * 7919 + std::uint64_t(i) * 2);
    const Signal noise =
        synth_noise(seconds, sample_rate, seed * 7919 + std::uint64_t(i) * 2 + 1);
    wav_write((dir / (std::string(name) + ".clean.wav")).string(), speech);
    wav_write((dir / (std::string(name) + ".noise.wav")).string(), noise);
  }
}

}  // namespace lowlat
