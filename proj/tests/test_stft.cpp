// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "phaseret/error.hpp"
#include "phaseret/fft.hpp"
#include "phaseret/stft.hpp"

using namespace phaseret;
using namespace phaseret::testing;

namespace {

double MaxAbsDiff(const Signal& a, const Signal& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a.samples[i] - b.samples[i]));
  }
  return m;
}

StftConfig Config(int frame, int shift, int fft, WindowType w = WindowType::kSqrtHann) {
  return StftConfig{frame, shift, fft, w};
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(Config(512, 128, 512).Validate());
  CHECK_THROWS_AS(Config(512, 0, 512).Validate(), Error);
  CHECK_THROWS_AS(Config(512, 513, 1024).Validate(), Error);
  CHECK_THROWS_AS(Config(512, 128, 256).Validate(), Error);

  const StftConfig ms = StftConfig::FromMilliseconds(32, 8, 16000);
  CHECK(ms.frame_length == 512);
  CHECK(ms.frame_shift == 128);
  CHECK(ms.fft_size == 512);
  CHECK(ms.window == WindowType::kSqrtHann);
  // 32 ms at 22.05 kHz is 705.6 samples.
  CHECK(StftConfig::FromMilliseconds(32, 8, 22050).frame_length == 706);
}

TEST_CASE("frame count follows the padding rule") {
  const StftConfig c = Config(8, 2, 8);
  // 10 samples + 2 * 6 padding = 22, (22 - 8) / 2 + 1 = 8 frames.
  CHECK(NumFrames(10, c) == 8);
  // 11 + 12 = 23 -> extended to 24 -> 9 frames.
  CHECK(NumFrames(11, c) == 9);
  CHECK_THROWS_AS(NumFrames(1, c), Error);
}

TEST_CASE("signals shorter than one shift are rejected") {
  try {
    Stft(Signal{{0.1}, 16000}, Config(8, 2, 8));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInvalidArgument);
  }
}

TEST_CASE("all-zero signal gives an all-zero spectrogram") {
  const Spectrogram x = Stft(Signal{std::vector<double>(1024, 0.0), 16000}, Config(64, 16, 64));
  for (const auto& v : x.values()) CHECK(v == Complex(0.0, 0.0));
  CHECK(x.original_length() == 1024);
}

TEST_CASE("constant signal with a rectangular window") {
  const StftConfig c = Config(8, 2, 8, WindowType::kRectangular);
  const Spectrogram x = Stft(Signal{std::vector<double>(32, 1.0), 16000}, c);
  // Frames starting at padded index f*2 are interior when they lie fully in
  // [6, 38): f in 3..15.
  int interior = 0;
  for (int f = 0; f < x.num_frames(); ++f) {
    const int start = f * 2 - 6;
    if (start < 0 || start + 8 > 32) continue;
    ++interior;
    CHECK(x(f, 0).real() == doctest::Approx(8.0));
    for (int k = 1; k <= 4; ++k) CHECK(std::abs(x(f, k)) < 1e-12);
  }
  CHECK(interior == 13);
}

TEST_CASE("forward transform matches a naive DFT per frame") {
  const Signal s = RandomSignal(3, 256);
  for (int fft : {32, 48}) {
    const Spectrogram x = Stft(s, Config(32, 8, fft));
    int frames = 0;
    const auto oracle = NaiveStft(s.samples, 32, 8, fft, OracleSqrtHann(32), &frames);
    REQUIRE(frames == x.num_frames());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      num += std::norm(x.values()[i] - oracle[i]);
      den += std::norm(oracle[i]);
    }
    CHECK(std::sqrt(num / den) < 1e-9);
  }
}

TEST_CASE("perfect reconstruction for COLA configurations") {
  for (int shift : {256, 128, 64}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Signal s = RandomSignal(seed, 3000 + 17 * seed);
      const Signal r = Istft(Stft(s, Config(512, shift, 512)));
      CHECK(r.size() == s.size());
      CHECK(MaxAbsDiff(r, s) < 1e-10);
    }
  }
  // Zero-padded frames and odd sizes.
  const Signal s = RandomSignal(9, 999);
  CHECK(MaxAbsDiff(Istft(Stft(s, Config(100, 25, 160))), s) < 1e-10);
  CHECK(MaxAbsDiff(Istft(Stft(s, Config(99, 33, 99, WindowType::kHann))), s) < 1e-10);
}

TEST_CASE("inverse edge cases") {
  const StftConfig c = Config(64, 16, 64);
  const Spectrogram zero(NumFrames(500, c), c, 500);
  const Signal out = Istft(zero);
  CHECK(out.size() == 500);
  for (double v : out.samples) CHECK(v == 0.0);

  Spectrogram bad = zero;
  bad(0, 0) = {std::numeric_limits<double>::infinity(), 0.0};
  CHECK_THROWS_AS(Istft(bad), Error);
}

TEST_CASE("random-phase sine still inverts to the original length") {
  Signal sine{{}, 16000};
  for (int n = 0; n < 4000; ++n) {
    sine.samples.push_back(std::sin(2.0 * std::numbers::pi * 440.0 * n / 16000));
  }
  Spectrogram x = Stft(sine, StftConfig::FromMilliseconds(32, 8, 16000));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  for (auto& v : x.values()) v = std::polar(std::abs(v), phase(rng));
  CHECK(Istft(x).size() == 4000);
}

TEST_CASE("magnitude") {
  const StftConfig c = Config(2, 1, 2);
  Spectrogram x(1, c, 1);
  x(0, 0) = {3.0, 4.0};
  CHECK(Magnitude(x)(0, 0) == 5.0);

  const Spectrogram r = RandomSpectrogram(4, 20, Config(32, 8, 32), 100);
  const MagnitudeSpectrogram m = Magnitude(r);
  CHECK(m.SameShape(r));
  for (std::size_t i = 0; i < r.size(); ++i) {
    const auto v = r.values()[i];
    CHECK(std::abs(m.values()[i] - std::sqrt(v.real() * v.real() + v.imag() * v.imag())) <
          1e-12);
  }
  const MagnitudeSpectrogram zero = Magnitude(Spectrogram(3, c, 4));
  for (double v : zero.values()) CHECK(v == 0.0);
}

TEST_CASE("linearity") {
  const StftConfig c = Config(64, 16, 64);
  const Signal s1 = RandomSignal(1, 700), s2 = RandomSignal(2, 700);
  Signal mix{std::vector<double>(700), 16000};
  for (int i = 0; i < 700; ++i) mix.samples[i] = 0.7 * s1.samples[i] - 1.3 * s2.samples[i];
  const Spectrogram expected = 0.7 * Stft(s1, c) - 1.3 * Stft(s2, c);
  const Spectrogram actual = Stft(mix, c);
  double max_err = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    max_err = std::max(max_err, std::abs(actual.values()[i] - expected.values()[i]));
  }
  CHECK(max_err < 1e-10);
}

TEST_CASE("Parseval with one-sided bins") {
  for (int n : {64, 63}) {
    RealFft fft(n);
    const auto frame = RandomSamples(n, n);
    std::vector<Complex> bins(fft.num_bins());
    fft.Forward(frame, bins);
    double time_energy = 0.0;
    for (double v : frame) time_energy += v * v;
    double freq_energy = std::norm(bins[0]);
    for (int k = 1; k < fft.num_bins(); ++k) {
      const bool nyquist = n % 2 == 0 && k == n / 2;
      freq_energy += (nyquist ? 1.0 : 2.0) * std::norm(bins[k]);
    }
    CHECK(std::abs(freq_energy / n - time_energy) / time_energy < 1e-9);

    std::vector<double> back(n);
    fft.Inverse(bins, back);
    for (int i = 0; i < n; ++i) CHECK(std::abs(back[i] - frame[i]) < 1e-12);
  }
}
