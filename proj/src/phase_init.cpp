// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "phaseret/phase_init.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "phaseret/error.hpp"

namespace phaseret {

std::vector<double> UniformPhases(std::uint64_t seed, std::size_t count) {
  constexpr double kPi = std::numbers::pi;
  constexpr double kUnit = 1.0 / 9007199254740992.0;  // 2^-53
  std::mt19937_64 engine(seed);
  std::vector<double> phases(count);
  for (auto& phase : phases) {
    const double t = static_cast<double>(engine() >> 11) * kUnit;
    phase = -kPi + 2.0 * kPi * t;
    if (phase >= kPi) phase = -kPi;
  }
  return phases;
}

Spectrogram InitialSpectrogram(const MagnitudeSpectrogram& a,
                               const PhaseInit& init) {
  Spectrogram x(a.num_frames(), a.config(), a.original_length(), a.sample_rate());
  auto mags = a.values();
  auto out = x.values();
  switch (init.method) {
    case InitMethod::kZeroPhase:
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = {mags[i], 0.0};
      break;
    case InitMethod::kUniformRandom:
    case InitMethod::kProvided: {
      const std::vector<double> drawn =
          init.method == InitMethod::kUniformRandom
              ? UniformPhases(init.seed, out.size())
              : std::vector<double>{};
      const std::vector<double>& phases =
          init.method == InitMethod::kProvided ? init.phases : drawn;
      if (phases.size() != out.size()) {
        throw Error(ErrorKind::kShapeMismatch,
                    "provided phases do not match the spectrogram size");
      }
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::polar(mags[i], phases[i]);
      }
      break;
    }
  }
  return x;
}

}  // namespace phaseret
