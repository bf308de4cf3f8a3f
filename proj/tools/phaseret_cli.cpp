// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

// phaseret: phase retrieval experiments on WAV corpora.
//
//   phaseret reconstruct   --input DIR --algorithm gla --algorithm dm:beta=0.8
//   phaseret overlap-sweep --input DIR --shifts-ms 16,8,4
//   phaseret hybrid-sweep  --input DIR --algorithm hybrid:first=dm,beta=1
//   phaseret synth         --out corpus --count 5

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phaseret/error.hpp"
#include "phaseret/experiment.hpp"
#include "phaseret/speechlike.hpp"
#include "phaseret/wav.hpp"

namespace fs = std::filesystem;
using namespace phaseret;

namespace {

constexpr int kExitRunFailures = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::vector<std::string> inputs;
  std::vector<std::string> algorithms;
  int iterations = 100;
  double frame_ms = 32.0;
  double shift_ms = 8.0;
  std::uint64_t seed = 0;
  int runs_per_file = 3;
  int jobs = 1;
  std::string out = "out";
  std::string format = "csv";
  bool wall_time = false;
  bool no_audio = false;
};

void AddCommonOptions(CLI::App* cmd, CommonOptions& o, bool with_algorithms) {
  cmd->add_option("-i,--input", o.inputs, "WAV file or directory (repeatable)")
      ->required();
  if (with_algorithms) {
    cmd->add_option("-a,--algorithm", o.algorithms,
                    "gla | fgla:alpha=A | raar:beta=B | dm:beta=B | admm | "
                    "hybrid:first=dm|raar,beta=B,m0=M (repeatable)");
  }
  cmd->add_option("-n,--iterations", o.iterations, "iterations per run")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--frame-ms", o.frame_ms, "frame length in ms")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--shift-ms", o.shift_ms, "frame shift in ms")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "first seed; runs use seed, seed+1, ...");
  cmd->add_option("--runs-per-file", o.runs_per_file, "random initializations per file")
      ->check(CLI::PositiveNumber);
  cmd->add_option("-j,--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("-o,--out", o.out, "output directory");
  cmd->add_option("--format", o.format, "summary format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--wall-time", o.wall_time,
                "fill the wall_time trace column (makes outputs non-reproducible)");
  cmd->add_flag("--no-audio", o.no_audio, "skip writing reconstructed WAVs");
}

ExperimentConfig ToConfig(const CommonOptions& o) {
  ExperimentConfig config;
  for (const auto& in : o.inputs) config.inputs.emplace_back(in);
  for (const auto& a : o.algorithms) config.algorithms.push_back(AlgorithmSpec::Parse(a));
  config.iterations = o.iterations;
  config.frame_ms = o.frame_ms;
  config.shift_ms = o.shift_ms;
  config.base_seed = o.seed;
  config.runs_per_file = o.runs_per_file;
  config.jobs = o.jobs;
  config.out_dir = o.out;
  config.format = o.format == "json" ? OutputFormat::kJson : OutputFormat::kCsv;
  config.record_wall_time = o.wall_time;
  config.write_audio = !o.no_audio;
  return config;
}

int ReportFailures(const std::vector<RunOutcome>& runs) {
  int failures = 0;
  for (const auto& run : runs) {
    if (run.ok) continue;
    ++failures;
    std::cerr << "error: " << run.file.string() << " [" << run.algorithm
              << ", seed " << run.seed << "]: " << run.error << "\n";
  }
  if (failures > 0) std::cerr << failures << " run(s) failed\n";
  return failures;
}

int CmdReconstruct(const CommonOptions& o) {
  ExperimentConfig config = ToConfig(o);
  if (config.algorithms.empty()) config.algorithms.push_back(AlgorithmSpec::Fgla());
  const ReconstructReport report = RunReconstruct(config);
  std::printf("%-40s %5s %12s %12s %10s\n", "algorithm", "runs", "mean_sc",
              "stderr_sc", "si_sdr_db");
  for (const auto& s : report.summary) {
    std::printf("%-40s %5d %12.6g %12.3g %10.3f\n", s.algorithm.c_str(), s.runs,
                s.mean_sc, s.stderr_sc, s.mean_si_sdr);
  }
  return ReportFailures(report.runs) > 0 ? kExitRunFailures : 0;
}

int CmdOverlapSweep(const CommonOptions& o, const std::vector<double>& shifts,
                    const std::vector<int>& checkpoints, double reference_shift) {
  ExperimentConfig config = ToConfig(o);
  if (config.algorithms.empty()) {
    for (const char* a : {"gla", "fgla:alpha=0.99", "raar:beta=0.9", "dm:beta=0.8"}) {
      config.algorithms.push_back(AlgorithmSpec::Parse(a));
    }
  }
  config.reference_shift_ms = reference_shift;
  const OverlapReport report = RunOverlapSweep(config, shifts, checkpoints);
  std::printf("%8s %8s %-28s %6s %12s %12s\n", "shift_ms", "overlap", "algorithm",
              "iter", "mean_sc", "ref_grid_sc");
  for (const auto& r : report.rows) {
    std::printf("%8g %7.1f%% %-28s %6d %12.6g %12.6g\n", r.shift_ms,
                100.0 * r.overlap, r.algorithm.c_str(), r.checkpoint, r.mean_sc,
                r.mean_reference_sc);
  }
  if (report.failures > 0) {
    std::cerr << report.failures << " run(s) failed; see per-shift summaries\n";
    return kExitRunFailures;
  }
  return 0;
}

int CmdHybridSweep(const CommonOptions& o, const std::vector<int>& m0_values,
                   int total) {
  ExperimentConfig config = ToConfig(o);
  AlgorithmSpec base = AlgorithmSpec::Hybrid(AlgorithmKind::kDm, 1.0, 0);
  if (config.algorithms.size() > 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "hybrid-sweep takes at most one --algorithm (a hybrid spec)");
  }
  if (!config.algorithms.empty()) base = config.algorithms.front();
  const HybridReport report = RunHybridSweep(config, base, m0_values, total);
  std::printf("%5s %5s %12s %12s\n", "m0", "runs", "mean_sc", "stderr_sc");
  for (const auto& r : report.rows) {
    std::printf("%5d %5d %12.6g %12.3g\n", r.m0, r.runs, r.mean_sc, r.stderr_sc);
  }
  if (report.failures > 0) {
    std::cerr << report.failures << " run(s) failed; see summary\n";
    return kExitRunFailures;
  }
  return 0;
}

int CmdSynth(const std::string& out, int count, double duration, int rate,
             std::uint64_t seed) {
  fs::create_directories(out);
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = seed + i;
    const fs::path path = fs::path(out) / ("speechlike-" + std::to_string(s) + ".wav");
    WriteWav(SpeechLike(s, duration, rate), path);
    std::cout << path.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase retrieval of STFT magnitudes by iterative projections"};
  app.set_config("--config", "", "read options from a TOML/INI file; flags win");
  app.require_subcommand(1);

  CommonOptions reconstruct_opts;
  auto* reconstruct = app.add_subcommand(
      "reconstruct", "reconstruct every input from its magnitude with each algorithm");
  AddCommonOptions(reconstruct, reconstruct_opts, true);

  CommonOptions overlap_opts;
  overlap_opts.iterations = 400;
  std::vector<double> shifts;
  std::vector<int> checkpoints = {20, 400};
  double reference_shift = 8.0;
  auto* overlap = app.add_subcommand(
      "overlap-sweep", "repeat the reconstruction for several frame shifts");
  AddCommonOptions(overlap, overlap_opts, true);
  overlap->add_option("--shifts-ms", shifts, "frame shifts in ms (comma separated)")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  overlap->add_option("--checkpoints", checkpoints,
                      "iterations at which SC is tabulated")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  overlap->add_option("--reference-shift-ms", reference_shift,
                      "shift of the common grid used for mean_reference_sc")
      ->check(CLI::PositiveNumber);

  CommonOptions hybrid_opts;
  std::vector<int> m0_values = {0, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  int total = 100;
  auto* hybrid = app.add_subcommand(
      "hybrid-sweep", "DM/RAAR for m0 iterations then FGLA, for several m0");
  AddCommonOptions(hybrid, hybrid_opts, true);
  hybrid->add_option("--m0", m0_values, "switch points (comma separated)")
      ->delimiter(',')
      ->check(CLI::NonNegativeNumber);
  hybrid->add_option("--total", total, "total iterations per run")
      ->check(CLI::NonNegativeNumber);

  std::string synth_out = "corpus";
  int synth_count = 5;
  double synth_duration = 1.0;
  int synth_rate = 16000;
  std::uint64_t synth_seed = 0;
  auto* synth = app.add_subcommand(
      "synth", "write synthetic speech-like WAV files for experiments");
  synth->add_option("-o,--out", synth_out, "output directory");
  synth->add_option("--count", synth_count, "number of files")
      ->check(CLI::PositiveNumber);
  synth->add_option("--duration", synth_duration, "seconds per file")
      ->check(CLI::PositiveNumber);
  synth->add_option("--rate", synth_rate, "sample rate in Hz")
      ->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_seed, "seed of the first file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*reconstruct) return CmdReconstruct(reconstruct_opts);
    if (*overlap) return CmdOverlapSweep(overlap_opts, shifts, checkpoints, reference_shift);
    if (*hybrid) {
      hybrid_opts.iterations = total;
      return CmdHybridSweep(hybrid_opts, m0_values, total);
    }
    if (*synth) {
      return CmdSynth(synth_out, synth_count, synth_duration, synth_rate, synth_seed);
    }
  } catch (const Error& e) {
    std::cerr << "error (" << ToString(e.kind()) << "): " << e.what() << "\n";
    return e.kind() == ErrorKind::kInvalidArgument ? kExitUsage : kExitRunFailures;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRunFailures;
  }
  return 0;
}
