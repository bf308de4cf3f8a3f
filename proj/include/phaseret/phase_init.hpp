// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <vector>

#include "phaseret/spectrogram.hpp"

namespace phaseret {

enum class InitMethod { kUniformRandom, kZeroPhase, kProvided };

struct PhaseInit {
  InitMethod method = InitMethod::kUniformRandom;
  std::uint64_t seed = 0;
  std::vector<double> phases;  // row-major frames x bins, kProvided only

  static PhaseInit UniformRandom(std::uint64_t seed) {
    return {InitMethod::kUniformRandom, seed, {}};
  }
  static PhaseInit ZeroPhase() { return {InitMethod::kZeroPhase, 0, {}}; }
  static PhaseInit Provided(std::vector<double> phases) {
    return {InitMethod::kProvided, 0, std::move(phases)};
  }
};

/// Draws `count` phases i.i.d. uniform on [-pi, pi).
///
/// Stream definition: std::mt19937_64 seeded with `seed`; each 64-bit output
/// u yields (u >> 11) * 2^-53, a uniform double in [0, 1), which is mapped
/// to -pi + 2*pi*t. A result that rounds up to +pi is replaced by -pi. Phases
/// are drawn in row-major (frame, bin) order. mt19937_64 is fully specified
/// by the standard, so the stream is identical on every platform.
std::vector<double> UniformPhases(std::uint64_t seed, std::size_t count);

/// X0 = A * exp(j * phi0).
Spectrogram InitialSpectrogram(const MagnitudeSpectrogram& a,
                               const PhaseInit& init);

}  // namespace phaseret
