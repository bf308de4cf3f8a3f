// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "phaseret/error.hpp"
#include "phaseret/projections.hpp"
#include "phaseret/stft.hpp"

using namespace phaseret;
using namespace phaseret::testing;

namespace {

const StftConfig kToy{32, 8, 32, WindowType::kSqrtHann};

Spectrogram Single(Complex v) {
  Spectrogram x(1, StftConfig{2, 1, 2}, 1);
  x(0, 0) = v;
  x(0, 1) = 0.0;
  return x;
}

MagnitudeSpectrogram SingleMag(double v) {
  MagnitudeSpectrogram a(1, StftConfig{2, 1, 2}, 1);
  a(0, 0) = v;
  return a;
}

Spectrogram RandomToy(std::uint64_t seed, std::size_t length = 200) {
  return RandomSpectrogram(seed, NumFrames(length, kToy), kToy, length);
}

MagnitudeSpectrogram RandomMagnitude(std::uint64_t seed, std::size_t length = 200) {
  return Magnitude(RandomToy(seed + 1000, length));
}

}  // namespace

TEST_CASE("magnitude projection on single bins") {
  CHECK(ProjectMagnitude(Single({2, 0}), SingleMag(5))(0, 0) == Complex(5, 0));
  CHECK(ProjectMagnitude(Single({0, 0}), SingleMag(5))(0, 0) == Complex(0, 0));
  const Complex v = ProjectMagnitude(Single({3, 4}), SingleMag(10))(0, 0);
  CHECK(v.real() == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(v.imag() == doctest::Approx(8.0).epsilon(1e-15));
}

TEST_CASE("magnitude reflection on single bins") {
  CHECK(ReflectMagnitude(Single({5, 0}), SingleMag(5))(0, 0) == Complex(5, 0));
  CHECK(ReflectMagnitude(Single({1, 0}), SingleMag(3))(0, 0) == Complex(5, 0));
}

TEST_CASE("shape mismatches are reported") {
  const Spectrogram x = RandomToy(1);
  const MagnitudeSpectrogram other = RandomMagnitude(2, 300);
  try {
    ProjectMagnitude(x, other);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kShapeMismatch);
  }
  CHECK_THROWS_AS(ReflectMagnitude(x, other), Error);
  // Frame count inconsistent with the recorded length.
  CHECK_THROWS_AS(ProjectConsistency(Spectrogram(3, kToy, 200)), Error);
}

TEST_CASE("magnitude projection properties") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Spectrogram x = RandomToy(seed);
    const MagnitudeSpectrogram a = RandomMagnitude(seed);
    const Spectrogram p = ProjectMagnitude(x, a);
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(std::abs(std::abs(p.values()[i]) - a.values()[i]) <=
            1e-12 * a.values()[i]);
      // Phase is preserved.
      CHECK(std::abs(std::arg(p.values()[i] / x.values()[i])) < 1e-12);
    }
    CHECK(RelativeDistance(ProjectMagnitude(p, a), p) < 1e-15);
    // R_A undoes itself on bins where |x| <= 2A.
    const Spectrogram rr = ReflectMagnitude(ReflectMagnitude(x, a), a);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::abs(x.values()[i]) <= 2.0 * a.values()[i]) {
        CHECK(std::abs(rr.values()[i] - x.values()[i]) <= 1e-12 * (1.0 + a.values()[i]));
      }
    }
  }
}

TEST_CASE("tiny bins below the relative threshold are left alone") {
  Spectrogram x = Single({1e-20, 0});
  MagnitudeSpectrogram a = SingleMag(1.0);
  CHECK(ProjectMagnitude(x, a)(0, 0) == Complex(1e-20, 0));
}

TEST_CASE("consistent spectrograms are fixed points of P_C and R_C") {
  const Signal s = RandomSignal(7, 300);
  const Spectrogram x = Stft(s, kToy);
  CHECK(RelativeDistance(ProjectConsistency(x), x) < 1e-9);
  CHECK(RelativeDistance(ReflectConsistency(x), x) < 1e-9);

  const Spectrogram zero(x.num_frames(), kToy, 300);
  CHECK(FrobeniusNorm(ProjectConsistency(zero)) == 0.0);
  CHECK(FrobeniusNorm(ReflectConsistency(zero)) == 0.0);
}

TEST_CASE("consistency projection is an idempotent linear projection") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Spectrogram x = RandomToy(seed);
    const Spectrogram y = RandomToy(seed + 50);
    const Spectrogram px = ProjectConsistency(x);
    CHECK(px.SameShape(x));
    CHECK(RelativeDistance(ProjectConsistency(px), px) < 1e-9);
    CHECK(RelativeDistance(ProjectConsistency(0.3 * x - 2.0 * y),
                           0.3 * px - 2.0 * ProjectConsistency(y)) < 1e-9);
    CHECK(RelativeDistance(ReflectConsistency(ReflectConsistency(x)), x) < 1e-9);
  }
}
