// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "phaseret/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <thread>

#include <json.hpp>

#include "phaseret/error.hpp"
#include "phaseret/projections.hpp"
#include "phaseret/stft.hpp"
#include "phaseret/wav.hpp"

namespace phaseret {
namespace fs = std::filesystem;
namespace {

using Json = nlohmann::ordered_json;

struct PreparedFile {
  fs::path path;
  fs::path run_dir;
  Signal signal;
  MagnitudeSpectrogram magnitude;
  MagnitudeSpectrogram reference;  // empty unless checkpoints are requested
  std::string error;
};

struct Stats {
  int n = 0;
  double mean = 0.0;
  double stderr_mean = 0.0;
};

Stats Summarize(const std::vector<double>& values) {
  Stats s;
  s.n = static_cast<int>(values.size());
  if (s.n == 0) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / s.n;
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stderr_mean = std::sqrt(ss / (s.n - 1) / s.n);
  }
  return s;
}

std::string Slug(const std::string& label) {
  std::string out = label;
  for (char& c : out) {
    if (c == ':' || c == ',') c = '_';
    else if (c == '=') c = '-';
  }
  return out;
}

std::string ErrorText(const Error& e) {
  return std::string(ToString(e.kind())) + ": " + e.what();
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

Json NumberOrNull(double v) {
  return std::isfinite(v) ? Json(v) : Json(nullptr);
}

std::string ZeroPadded(std::size_t i) {
  std::string s = std::to_string(i);
  return std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

std::vector<PreparedFile> PrepareFiles(const ExperimentConfig& config,
                                       const std::vector<fs::path>& files) {
  std::vector<PreparedFile> prepared(files.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    PreparedFile& p = prepared[i];
    p.path = files[i];
    p.run_dir = config.out_dir / "runs" /
                (ZeroPadded(i) + "-" + files[i].stem().string());
    try {
      p.signal = ReadWav(files[i]);
      const StftConfig stft_config = StftConfig::FromMilliseconds(
          config.frame_ms, config.shift_ms, p.signal.sample_rate);
      p.magnitude = Magnitude(Stft(p.signal, stft_config));
      if (FrobeniusNorm(p.magnitude) == 0.0) {
        throw Error(ErrorKind::kUndefinedMetric,
                    "magnitude spectrogram is all zero (silent input); "
                    "spectral convergence is undefined");
      }
      if (!config.checkpoints.empty()) {
        const StftConfig ref_config = StftConfig::FromMilliseconds(
            config.frame_ms, config.reference_shift_ms, p.signal.sample_rate);
        p.reference = Magnitude(Stft(p.signal, ref_config));
      }
    } catch (const Error& e) {
      p.error = ErrorText(e);
    }
  }
  return prepared;
}

RunOutcome ExecuteRun(const ExperimentConfig& config, const PreparedFile& file,
                      const AlgorithmSpec& spec, std::uint64_t seed) {
  RunOutcome outcome;
  outcome.file = file.path;
  outcome.algorithm = spec.Label();
  outcome.seed = seed;
  if (!file.error.empty()) {
    outcome.error = file.error;
    return outcome;
  }
  try {
    const MagnitudeSpectrogram& a = file.magnitude;
    IterationObserver observer;
    if (!config.checkpoints.empty()) {
      observer = [&](int iteration, const Spectrogram& x) {
        if (std::find(config.checkpoints.begin(), config.checkpoints.end(),
                      iteration) == config.checkpoints.end()) {
          return;
        }
        const Signal y = Istft(ProjectMagnitude(x, a));
        const double sc =
            SpectralConvergence(Stft(y, file.reference.config()), file.reference);
        outcome.reference_sc.emplace_back(iteration, sc);
      };
    }
    RunResult result =
        Run(a, spec, PhaseInit::UniformRandom(seed), config.iterations, observer);
    outcome.final_sc = result.final_sc;
    outcome.si_sdr = SiSdr(file.signal, result.signal);
    outcome.trace = std::move(result.trace);

    const fs::path dir = file.run_dir / Slug(outcome.algorithm);
    const std::string stem = "seed-" + std::to_string(seed);
    WriteText(dir / (stem + ".csv"),
              TraceCsv(outcome.trace, config.record_wall_time));
    if (config.write_audio) WriteWav(result.signal, dir / (stem + ".wav"));
    outcome.ok = true;
  } catch (const Error& e) {
    outcome.error = ErrorText(e);
  }
  return outcome;
}

// Runs fn(i) for i in [0, count) on `jobs` threads. Each index is handled
// exactly once; callers store results by index.
template <typename Fn>
void ParallelFor(std::size_t count, int jobs, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(jobs, 1), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

std::string Quoted(const std::string& s) {
  return s.find(',') == std::string::npos ? s : "\"" + s + "\"";
}

void WriteSummary(const ExperimentConfig& config,
                  const std::vector<AlgorithmSummary>& summary) {
  if (config.format == OutputFormat::kJson) {
    Json rows = Json::array();
    for (const auto& s : summary) {
      rows.push_back({{"algorithm", s.algorithm},
                      {"runs", s.runs},
                      {"failures", s.failures},
                      {"mean_sc", NumberOrNull(s.mean_sc)},
                      {"stderr_sc", NumberOrNull(s.stderr_sc)},
                      {"mean_si_sdr", NumberOrNull(s.mean_si_sdr)}});
    }
    WriteText(config.out_dir / "summary.json", rows.dump(2) + "\n");
    return;
  }
  std::string csv = "algorithm,runs,failures,mean_sc,stderr_sc,mean_si_sdr\n";
  for (const auto& s : summary) {
    csv += Quoted(s.algorithm) + "," + std::to_string(s.runs) + "," +
           std::to_string(s.failures) + "," + FormatDouble(s.mean_sc) + "," + FormatDouble(s.stderr_sc) +
           "," + FormatDouble(s.mean_si_sdr) + "\n";
  }
  WriteText(config.out_dir / "summary.csv", csv);
}

}  // namespace

void ExperimentConfig::Validate() const {
  auto fail = [](const std::string& why) {
    throw Error(ErrorKind::kInvalidArgument, why);
  };
  if (inputs.empty()) fail("at least one input is required");
  if (algorithms.empty()) fail("at least one algorithm is required");
  if (runs_per_file < 1) fail("runs per file must be at least 1");
  if (iterations < 0) fail("iterations must be nonnegative");
  if (jobs < 1) fail("jobs must be at least 1");
  if (!(frame_ms > 0.0) || !(shift_ms > 0.0) || shift_ms > frame_ms) {
    fail("need 0 < shift <= frame length");
  }
  for (const auto& spec : algorithms) spec.Validate(iterations);
  for (int c : checkpoints) {
    if (c < 1 || c > iterations) {
      fail("checkpoint " + std::to_string(c) + " outside 1.." +
           std::to_string(iterations));
    }
  }
  if (!checkpoints.empty() &&
      (!(reference_shift_ms > 0.0) || reference_shift_ms > frame_ms)) {
    fail("need 0 < reference shift <= frame length");
  }
}

std::vector<std::uint64_t> ExperimentConfig::Seeds() const {
  std::vector<std::uint64_t> seeds;
  for (int k = 0; k < runs_per_file; ++k) seeds.push_back(base_seed + k);
  return seeds;
}

std::vector<fs::path> ExpandInputs(const std::vector<fs::path>& inputs) {
  std::vector<fs::path> files;
  for (const auto& input : inputs) {
    std::error_code ec;
    if (!fs::is_directory(input, ec)) {
      // Missing files surface later as per-file read errors.
      files.push_back(input);
      continue;
    }
    std::vector<fs::path> found;
    for (const auto& entry : fs::directory_iterator(input)) {
      std::string ext = entry.path().extension().string();
      std::transform(ext.begin(), ext.end(), ext.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      if (entry.is_regular_file() && ext == ".wav") found.push_back(entry.path());
    }
    std::sort(found.begin(), found.end());
    files.insert(files.end(), found.begin(), found.end());
  }
  return files;
}

int ReconstructReport::failures() const {
  return static_cast<int>(
      std::count_if(runs.begin(), runs.end(), [](const auto& r) { return !r.ok; }));
}

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string TraceCsv(const IterationTrace& trace, bool include_wall_time) {
  std::string csv = "iteration,sc,cumulative_projections,wall_time\n";
  for (const auto& r : trace.records) {
    csv += std::to_string(r.iteration) + "," +
           FormatDouble(r.spectral_convergence) + "," +
           std::to_string(r.cumulative_projections) + "," +
           (include_wall_time ? FormatDouble(r.wall_time) : "0") + "\n";
  }
  return csv;
}

ReconstructReport RunReconstruct(const ExperimentConfig& config) {
  config.Validate();
  const std::vector<fs::path> files = ExpandInputs(config.inputs);
  if (files.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "no WAV files found in the inputs");
  }
  const std::vector<std::uint64_t> seeds = config.Seeds();
  const std::vector<PreparedFile> prepared = PrepareFiles(config, files);

  fs::create_directories(config.out_dir);
  for (const auto& file : prepared) {
    if (!file.error.empty()) continue;
    for (const auto& spec : config.algorithms) {
      fs::create_directories(file.run_dir / Slug(spec.Label()));
    }
  }

  const std::size_t per_file = config.algorithms.size() * seeds.size();
  ReconstructReport report;
  report.runs.resize(prepared.size() * per_file);
  ParallelFor(report.runs.size(), config.jobs, [&](std::size_t i) {
    const std::size_t f = i / per_file;
    const std::size_t j = (i % per_file) / seeds.size();
    const std::size_t k = i % seeds.size();
    report.runs[i] = ExecuteRun(config, prepared[f], config.algorithms[j], seeds[k]);
  });

  for (const auto& spec : config.algorithms) {
    const std::string label = spec.Label();
    AlgorithmSummary summary;
    summary.algorithm = label;
    std::vector<double> sc;
    std::vector<double> sdr;
    for (const auto& run : report.runs) {
      if (run.algorithm != label) continue;
      if (!run.ok) {
        ++summary.failures;
        continue;
      }
      sc.push_back(run.final_sc);
      sdr.push_back(run.si_sdr);
    }
    const Stats stats = Summarize(sc);
    summary.runs = stats.n;
    summary.mean_sc = stats.mean;
    summary.stderr_sc = stats.stderr_mean;
    summary.mean_si_sdr = Summarize(sdr).mean;
    // Duplicate labels in the config would be summarized twice; keep one.
    if (std::none_of(report.summary.begin(), report.summary.end(),
                     [&](const auto& s) { return s.algorithm == label; })) {
      report.summary.push_back(summary);
    }
  }
  WriteSummary(config, report.summary);
  return report;
}

OverlapReport RunOverlapSweep(const ExperimentConfig& config,
                              const std::vector<double>& shifts_ms,
                              const std::vector<int>& checkpoints) {
  if (shifts_ms.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "at least one frame shift is required");
  }
  if (checkpoints.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "at least one checkpoint is required");
  }
  for (double shift : shifts_ms) {
    if (!(shift > 0.0) || shift > config.frame_ms) {
      throw Error(ErrorKind::kInvalidArgument,
                  "frame shift " + FormatDouble(shift) +
                      " ms is not in (0, frame length]");
    }
  }

  OverlapReport report;
  for (double shift : shifts_ms) {
    ExperimentConfig sub = config;
    sub.shift_ms = shift;
    sub.iterations = *std::max_element(checkpoints.begin(), checkpoints.end());
    sub.checkpoints = checkpoints;
    sub.out_dir = config.out_dir / ("shift-" + FormatDouble(shift) + "ms");
    const ReconstructReport runs = RunReconstruct(sub);
    report.failures += runs.failures();

    for (const auto& spec : config.algorithms) {
      const std::string label = spec.Label();
      for (int checkpoint : checkpoints) {
        std::vector<double> sc;
        std::vector<double> reference_sc;
        for (const auto& run : runs.runs) {
          if (!run.ok || run.algorithm != label) continue;
          sc.push_back(run.trace.records.at(checkpoint - 1).spectral_convergence);
          for (const auto& [it, value] : run.reference_sc) {
            if (it == checkpoint) reference_sc.push_back(value);
          }
        }
        const Stats stats = Summarize(sc);
        OverlapRow row;
        row.shift_ms = shift;
        row.overlap = 1.0 - shift / config.frame_ms;
        row.algorithm = label;
        row.checkpoint = checkpoint;
        row.runs = stats.n;
        row.mean_sc = stats.mean;
        row.stderr_sc = stats.stderr_mean;
        row.mean_reference_sc = Summarize(reference_sc).mean;
        report.rows.push_back(row);
      }
    }
  }

  if (config.format == OutputFormat::kJson) {
    Json rows = Json::array();
    for (const auto& r : report.rows) {
      rows.push_back({{"shift_ms", r.shift_ms},
                      {"overlap", r.overlap},
                      {"algorithm", r.algorithm},
                      {"checkpoint", r.checkpoint},
                      {"runs", r.runs},
                      {"mean_sc", r.mean_sc},
                      {"stderr_sc", r.stderr_sc},
                      {"mean_reference_sc", r.mean_reference_sc}});
    }
    WriteText(config.out_dir / "overlap_sweep.json", rows.dump(2) + "\n");
  } else {
    std::string csv =
        "shift_ms,overlap,algorithm,checkpoint,runs,mean_sc,stderr_sc,"
        "mean_reference_sc\n";
    for (const auto& r : report.rows) {
      csv += FormatDouble(r.shift_ms) + "," + FormatDouble(r.overlap) + "," +
             Quoted(r.algorithm) + "," + std::to_string(r.checkpoint) + "," +
             std::to_string(r.runs) + "," + FormatDouble(r.mean_sc) + "," +
             FormatDouble(r.stderr_sc) + "," + FormatDouble(r.mean_reference_sc) +
             "\n";
    }
    WriteText(config.out_dir / "overlap_sweep.csv", csv);
  }
  return report;
}

HybridReport RunHybridSweep(const ExperimentConfig& config,
                            const AlgorithmSpec& base,
                            const std::vector<int>& m0_values, int total) {
  if (base.kind != AlgorithmKind::kHybrid) {
    throw Error(ErrorKind::kInvalidArgument, "hybrid sweep needs a hybrid spec");
  }
  if (m0_values.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "at least one m0 value is required");
  }
  ExperimentConfig sub = config;
  sub.iterations = total;
  sub.algorithms.clear();
  for (int m0 : m0_values) {
    AlgorithmSpec spec = base;
    spec.m0 = m0;
    spec.Validate(total);
    sub.algorithms.push_back(spec);
  }
  const ReconstructReport runs = RunReconstruct(sub);

  HybridReport report;
  report.failures = runs.failures();
  for (std::size_t i = 0; i < m0_values.size(); ++i) {
    const auto it = std::find_if(
        runs.summary.begin(), runs.summary.end(),
        [&](const auto& s) { return s.algorithm == sub.algorithms[i].Label(); });
    HybridRow row;
    row.m0 = m0_values[i];
    row.algorithm = it->algorithm;
    row.runs = it->runs;
    row.mean_sc = it->mean_sc;
    row.stderr_sc = it->stderr_sc;
    report.rows.push_back(row);
  }

  if (config.format == OutputFormat::kJson) {
    Json rows = Json::array();
    for (const auto& r : report.rows) {
      rows.push_back({{"m0", r.m0},
                      {"algorithm", r.algorithm},
                      {"runs", r.runs},
                      {"mean_sc", r.mean_sc},
                      {"stderr_sc", r.stderr_sc}});
    }
    WriteText(config.out_dir / "hybrid_sweep.json", rows.dump(2) + "\n");
  } else {
    std::string csv = "m0,algorithm,runs,mean_sc,stderr_sc\n";
    for (const auto& r : report.rows) {
      csv += std::to_string(r.m0) + "," + Quoted(r.algorithm) + "," +
             std::to_string(r.runs) + "," + FormatDouble(r.mean_sc) + "," +
             FormatDouble(r.stderr_sc) + "\n";
    }
    WriteText(config.out_dir / "hybrid_sweep.csv", csv);
  }
  return report;
}

}  // namespace phaseret
