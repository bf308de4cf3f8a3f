// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <json.hpp>

#include "phaseret/error.hpp"
#include "phaseret/experiment.hpp"
#include "phaseret/speechlike.hpp"
#include "phaseret/stft.hpp"
#include "phaseret/wav.hpp"

using namespace phaseret;
namespace fs = std::filesystem;

namespace {

fs::path Scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "phaseret_test_experiment" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Every CSV below `root`, keyed by relative path.
std::map<std::string, std::string> CsvFiles(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.path().extension() == ".csv") {
      files[fs::relative(e.path(), root).string()] = Slurp(e.path());
    }
  }
  return files;
}

fs::path MakeCorpus(const fs::path& dir, int count, double seconds) {
  fs::create_directories(dir);
  for (int i = 0; i < count; ++i) {
    WriteWav(SpeechLike(i, seconds), dir / ("utt" + std::to_string(i) + ".wav"));
  }
  return dir;
}

ExperimentConfig BaseConfig(const fs::path& corpus, const fs::path& out) {
  ExperimentConfig config;
  config.inputs = {corpus};
  config.algorithms = {AlgorithmSpec::Gla()};
  config.iterations = 5;
  config.runs_per_file = 2;
  config.out_dir = out;
  return config;
}

}  // namespace

TEST_CASE("config validation") {
  ExperimentConfig config;
  CHECK_THROWS_AS(config.Validate(), Error);
  config.inputs = {"x.wav"};
  CHECK_THROWS_AS(config.Validate(), Error);
  config.algorithms = {AlgorithmSpec::Gla()};
  CHECK_NOTHROW(config.Validate());
  config.runs_per_file = 0;
  CHECK_THROWS_AS(config.Validate(), Error);
  config.runs_per_file = 3;
  config.shift_ms = 40;
  CHECK_THROWS_AS(config.Validate(), Error);
  config.shift_ms = 8;
  config.algorithms = {AlgorithmSpec::Hybrid(AlgorithmKind::kDm, 1, 200)};
  CHECK_THROWS_AS(config.Validate(), Error);

  config.base_seed = 10;
  CHECK(config.Seeds() == std::vector<std::uint64_t>{10, 11, 12});
}

TEST_CASE("input expansion") {
  const fs::path dir = Scratch("expand");
  MakeCorpus(dir, 2, 0.05);
  std::ofstream(dir / "notes.txt") << "ignored";
  std::ofstream(dir / "LOUD.WAV") << "picked up";
  const auto files = ExpandInputs({dir, dir / "missing.wav"});
  REQUIRE(files.size() == 4);
  CHECK(files[0].filename() == "LOUD.WAV");
  CHECK(files[1].filename() == "utt0.wav");
  CHECK(files[3].filename() == "missing.wav");
}

TEST_CASE("reconstruct writes traces, audio and a summary") {
  const fs::path root = Scratch("reconstruct");
  const fs::path corpus = MakeCorpus(root / "corpus", 2, 0.2);
  ExperimentConfig config = BaseConfig(corpus, root / "out");
  config.algorithms = {AlgorithmSpec::Gla(), AlgorithmSpec::Dm(0.8)};
  const ReconstructReport report = RunReconstruct(config);

  CHECK(report.failures() == 0);
  REQUIRE(report.runs.size() == 2 * 2 * 2);
  REQUIRE(report.summary.size() == 2);
  CHECK(report.summary[0].algorithm == "gla");
  CHECK(report.summary[0].runs == 4);

  const fs::path run_dir = root / "out" / "runs" / "000-utt0" / "dm_beta-0.8";
  CHECK(fs::exists(run_dir / "seed-0.wav"));
  CHECK(fs::exists(run_dir / "seed-1.wav"));
  const std::string trace = Slurp(run_dir / "seed-1.csv");
  std::istringstream lines(trace);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "iteration,sc,cumulative_projections,wall_time");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(line.rfind(std::to_string(rows) + ",", 0) == 0);
    CHECK(line.substr(line.size() - 2) == ",0");
  }
  CHECK(rows == 5);

  const std::string summary = Slurp(root / "out" / "summary.csv");
  CHECK(summary.rfind("algorithm,runs,failures,mean_sc,stderr_sc,mean_si_sdr\ngla,4,0,", 0) == 0);

  // The reconstructed WAV decodes to the input length.
  CHECK(ReadWav(run_dir / "seed-0.wav").size() == ReadWav(corpus / "utt0.wav").size());
}

TEST_CASE("identical seeds share the initial phase across algorithms") {
  // FGLA with alpha = 0 is GLA; with the same seed the traces must agree.
  const fs::path root = Scratch("shared-init");
  const fs::path corpus = MakeCorpus(root / "corpus", 1, 0.2);
  ExperimentConfig config = BaseConfig(corpus, root / "out");
  config.algorithms = {AlgorithmSpec::Gla(), AlgorithmSpec::Fgla(0.0)};
  const ReconstructReport report = RunReconstruct(config);
  REQUIRE(report.runs.size() == 4);
  for (int k = 0; k < 2; ++k) {
    const auto& gla = report.runs[k].trace.records;
    const auto& fgla = report.runs[2 + k].trace.records;
    for (std::size_t m = 0; m < gla.size(); ++m) {
      CHECK(std::abs(gla[m].spectral_convergence - fgla[m].spectral_convergence) < 1e-12);
    }
  }
}

TEST_CASE("reruns are byte-identical, with any number of jobs") {
  const fs::path root = Scratch("determinism");
  const fs::path corpus = MakeCorpus(root / "corpus", 2, 0.2);
  ExperimentConfig config = BaseConfig(corpus, root / "a");
  config.algorithms = {AlgorithmSpec::Gla(), AlgorithmSpec::Raar(0.9)};
  config.iterations = 10;
  config.base_seed = 7;
  RunReconstruct(config);
  config.out_dir = root / "b";
  config.jobs = 3;
  RunReconstruct(config);
  const auto a = CsvFiles(root / "a");
  CHECK(a.size() == 2 * 2 * 2 + 1);
  CHECK(a == CsvFiles(root / "b"));
}

TEST_CASE("a silent file fails on its own") {
  const fs::path root = Scratch("silent");
  const fs::path corpus = MakeCorpus(root / "corpus", 1, 0.2);
  WriteWav(Signal{std::vector<double>(3200, 0.0), 16000}, corpus / "silence.wav");
  ExperimentConfig config = BaseConfig(corpus, root / "out");
  const ReconstructReport report = RunReconstruct(config);
  CHECK(report.failures() == 2);
  for (const auto& run : report.runs) {
    if (run.file.filename() == "silence.wav") {
      CHECK(!run.ok);
      CHECK(run.error.rfind("undefined-metric:", 0) == 0);
    } else {
      CHECK(run.ok);
    }
  }
  CHECK(report.summary[0].runs == 2);
  CHECK(report.summary[0].failures == 2);
}

TEST_CASE("unreadable inputs are reported per file") {
  const fs::path root = Scratch("unreadable");
  MakeCorpus(root / "corpus", 1, 0.2);
  ExperimentConfig config = BaseConfig(root / "corpus", root / "out");
  config.inputs.push_back(root / "nope.wav");
  const ReconstructReport report = RunReconstruct(config);
  CHECK(report.failures() == 2);
  CHECK(report.runs.back().error.rfind("file-not-found:", 0) == 0);
}

TEST_CASE("JSON summary") {
  const fs::path root = Scratch("json");
  const fs::path corpus = MakeCorpus(root / "corpus", 1, 0.2);
  ExperimentConfig config = BaseConfig(corpus, root / "out");
  config.format = OutputFormat::kJson;
  config.write_audio = false;
  RunReconstruct(config);
  const auto json = nlohmann::json::parse(Slurp(root / "out" / "summary.json"));
  REQUIRE(json.size() == 1);
  CHECK(json[0]["algorithm"] == "gla");
  CHECK(json[0]["runs"] == 2);
  CHECK(!fs::exists(root / "out" / "runs" / "000-utt0" / "gla" / "seed-0.wav"));
}

TEST_CASE("overlap sweep") {
  const fs::path root = Scratch("overlap");
  const fs::path corpus = MakeCorpus(root / "corpus", 1, 0.2);
  ExperimentConfig config = BaseConfig(corpus, root / "out");
  config.runs_per_file = 1;
  const OverlapReport report = RunOverlapSweep(config, {16, 8, 4}, {2, 4});
  CHECK(report.failures == 0);
  REQUIRE(report.rows.size() == 3 * 2);
  CHECK(report.rows[0].overlap == 0.5);
  CHECK(report.rows[2].overlap == 0.75);
  CHECK(report.rows[4].overlap == 0.875);
  CHECK(report.rows[1].checkpoint == 4);
  CHECK(report.rows[0].mean_reference_sc > 0.0);
  CHECK(fs::exists(root / "out" / "overlap_sweep.csv"));
  CHECK(fs::exists(root / "out" / "shift-16ms" / "summary.csv"));

  CHECK_THROWS_AS(RunOverlapSweep(config, {}, {2}), Error);
  CHECK_THROWS_AS(RunOverlapSweep(config, {64}, {2}), Error);
}

TEST_CASE("hybrid sweep edges equal the pure algorithms") {
  const fs::path root = Scratch("hybrid");
  const fs::path corpus = MakeCorpus(root / "corpus", 1, 0.2);
  ExperimentConfig config = BaseConfig(corpus, root / "sweep");
  const int total = 6;
  const HybridReport sweep = RunHybridSweep(
      config, AlgorithmSpec::Hybrid(AlgorithmKind::kDm, 1.0, 0), {0, 3, total}, total);
  REQUIRE(sweep.rows.size() == 3);
  CHECK(sweep.rows[1].m0 == 3);

  config.out_dir = root / "pure";
  config.iterations = total;
  config.algorithms = {AlgorithmSpec::Fgla(), AlgorithmSpec::Dm(1.0)};
  const ReconstructReport pure = RunReconstruct(config);
  CHECK(sweep.rows[0].mean_sc == pure.summary[0].mean_sc);
  CHECK(sweep.rows[2].mean_sc == pure.summary[1].mean_sc);

  const fs::path s = root / "sweep" / "runs" / "000-utt0";
  const fs::path p = root / "pure" / "runs" / "000-utt0";
  CHECK(Slurp(s / "hybrid_first-dm_beta-1_m0-0_alpha-0.99" / "seed-1.csv") ==
        Slurp(p / "fgla_alpha-0.99" / "seed-1.csv"));
  CHECK(Slurp(s / "hybrid_first-dm_beta-1_m0-6_alpha-0.99" / "seed-1.csv") ==
        Slurp(p / "dm_beta-1" / "seed-1.csv"));

  CHECK_THROWS_AS(RunHybridSweep(config, AlgorithmSpec::Hybrid(AlgorithmKind::kDm, 1, 0),
                                 {0, 7}, total),
                  Error);
  CHECK_THROWS_AS(RunHybridSweep(config, AlgorithmSpec::Gla(), {0}, total), Error);
}

TEST_CASE("number formatting is locale independent and round-trips") {
  CHECK(FormatDouble(0.5) == "0.5");
  CHECK(FormatDouble(1e-20) == "1e-20");
  CHECK(FormatDouble(std::numeric_limits<double>::infinity()) == "inf");
  const double v = 0.1234567890123456789;
  CHECK(std::stod(FormatDouble(v)) == v);

  IterationTrace trace;
  trace.records.push_back({1, 0.25, 2, 1.5});
  CHECK(TraceCsv(trace, false) == "iteration,sc,cumulative_projections,wall_time\n1,0.25,2,0\n");
  CHECK(TraceCsv(trace, true) == "iteration,sc,cumulative_projections,wall_time\n1,0.25,2,1.5\n");
}
