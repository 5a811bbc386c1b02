// Copyright 2026 The lowlat Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LOWLAT_EXPERIMENT_HPP_
#define LOWLAT_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lowlat/core.hpp"

namespace lowlat {

/// One row of the experiment matrix: a named pipeline geometry plus the
/// window family and enhancer standing in for the model.
struct ExperimentRow {
  std::string id;
  std::string window_kind;    // "sym" | "asym" | "learned" | "-" (fbe)
  std::string enhancer_kind;  // identity | zero | oracle_wiener | oracle_deep_filter
                              // | oracle_map | oracle_predict | repeat_last
  StreamConfig config;
};

std::vector<ExperimentRow> load_matrix(const std::filesystem::path& path);

struct ExperimentOptions {
  std::uint64_t seed = 1;
  std::vector<int> snr_choices_db{0, 5, 10, 15};
  int macs_reference_hop = 160;  // 10 ms at 16 kHz, the 20 ms-window baseline
};

struct ExperimentResult {
  std::filesystem::path csv_path;
  bool latency_ok = true;
  int files = 0;
  int failures = 0;
};

/// Runs every row over every `<id>.clean.wav` / `<id>.noise.wav` pair in the
/// corpus directory, mixing at a per-file SNR drawn from the seeded choice
/// set. Writes report.csv (one line per row x file, sorted by row then file)
/// into the output directory. Per-file failures are logged and skipped;
/// latency audit mismatches clear latency_ok.
ExperimentResult run_experiment(const std::filesystem::path& matrix_path,
                                const std::filesystem::path& corpus_dir,
                                const std::filesystem::path& out_dir,
                                const ExperimentOptions& options = {});

/// Writes a synthetic paired corpus (`desk00.clean.wav` / `desk00.noise.wav`,
/// ...) for desk-scale runs without real recordings.
void make_corpus(const std::filesystem::path& dir, int files, double seconds,
                 int sample_rate, std::uint64_t seed);

}  // namespace lowlat

#endif  // LOWLAT_EXPERIMENT_HPP_
