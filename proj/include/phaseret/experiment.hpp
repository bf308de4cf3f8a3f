// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "phaseret/algorithms.hpp"
#include "phaseret/metrics.hpp"

namespace phaseret {

enum class OutputFormat { kCsv, kJson };

/// Batch reconstruction setup shared by all experiment commands.
struct ExperimentConfig {
  std::vector<std::filesystem::path> inputs;  // WAV files or directories
  std::vector<AlgorithmSpec> algorithms;
  int iterations = 100;
  double frame_ms = 32.0;
  double shift_ms = 8.0;
  std::uint64_t base_seed = 0;
  int runs_per_file = 3;  // seeds base_seed, base_seed + 1, ...
  int jobs = 1;
  std::filesystem::path out_dir = "out";
  OutputFormat format = OutputFormat::kCsv;
  bool record_wall_time = false;  // wall_time column is 0 otherwise
  bool write_audio = true;
  /// Iterations at which the delivered signal is re-analysed on the reference
  /// grid (frame_ms / reference_shift_ms). Empty disables the measurement.
  std::vector<int> checkpoints;
  double reference_shift_ms = 8.0;

  /// Throws Error(kInvalidArgument) describing the first problem found.
  void Validate() const;
  std::vector<std::uint64_t> Seeds() const;
};

/// Files named directly plus every *.wav (any case) inside named directories,
/// directories sorted by path. Throws Error(kFileNotFound) for missing paths.
std::vector<std::filesystem::path> ExpandInputs(
    const std::vector<std::filesystem::path>& inputs);

/// One (file, algorithm, seed) reconstruction.
struct RunOutcome {
  std::filesystem::path file;
  std::string algorithm;  // AlgorithmSpec::Label()
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;  // "<category>: <message>" when !ok
  double final_sc = 0.0;
  double si_sdr = 0.0;
  IterationTrace trace;
  /// SC of Istft(P_A(x)) re-analysed on the reference grid, one entry per
  /// config.checkpoints element that the run reached.
  std::vector<std::pair<int, double>> reference_sc;
};

struct AlgorithmSummary {
  std::string algorithm;
  int runs = 0;
  int failures = 0;
  double mean_sc = 0.0;
  double stderr_sc = 0.0;  // standard error of the mean over runs
  double mean_si_sdr = 0.0;
};

struct ReconstructReport {
  std::vector<RunOutcome> runs;  // file-major, then algorithm, then seed
  std::vector<AlgorithmSummary> summary;  // in config.algorithms order

  int failures() const;
};

/// Reads each input, keeps the STFT magnitude, and reconstructs it with every
/// algorithm and seed. Writes under config.out_dir:
///
///   runs/<NNN>-<stem>/<algorithm>/seed-<s>.csv   per-iteration trace
///   runs/<NNN>-<stem>/<algorithm>/seed-<s>.wav   reconstruction
///   summary.csv | summary.json
///
/// Per-file failures are recorded in the report rather than thrown.
ReconstructReport RunReconstruct(const ExperimentConfig& config);

struct OverlapRow {
  double shift_ms = 0.0;
  double overlap = 0.0;  // 1 - shift / frame
  std::string algorithm;
  int checkpoint = 0;
  int runs = 0;
  double mean_sc = 0.0;  // SC on the run's own STFT grid
  double stderr_sc = 0.0;
  double mean_reference_sc = 0.0;  // SC of the signal on the reference grid
};

struct OverlapReport {
  std::vector<OverlapRow> rows;
  int failures = 0;
};

/// RunReconstruct once per frame shift (into shift-<ms>ms/ subdirectories)
/// with max(checkpoints) iterations; tabulates the mean SC at each checkpoint.
///
/// SC on a run's own grid is not comparable across shifts (fewer frames make
/// consistency easier to satisfy), so each row also carries the SC of the
/// delivered signal measured on the common reference grid
/// (config.frame_ms / config.reference_shift_ms).
/// Writes overlap_sweep.csv | .json.
OverlapReport RunOverlapSweep(const ExperimentConfig& config,
                              const std::vector<double>& shifts_ms,
                              const std::vector<int>& checkpoints);

struct HybridRow {
  int m0 = 0;
  std::string algorithm;
  int runs = 0;
  double mean_sc = 0.0;
  double stderr_sc = 0.0;
};

struct HybridReport {
  std::vector<HybridRow> rows;
  int failures = 0;
};

/// One hybrid run per m0 with `total` iterations, using `base`'s first phase,
/// beta and alpha. Writes hybrid_sweep.csv | .json.
HybridReport RunHybridSweep(const ExperimentConfig& config,
                            const AlgorithmSpec& base,
                            const std::vector<int>& m0_values, int total);

/// Locale-independent shortest round-trip formatting.
std::string FormatDouble(double v);

/// Header plus one line per record.
std::string TraceCsv(const IterationTrace& trace, bool include_wall_time);

}  // namespace phaseret
