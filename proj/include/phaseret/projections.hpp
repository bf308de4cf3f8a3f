// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include "phaseret/spectrogram.hpp"

namespace phaseret {

/// Bins whose modulus is below this fraction of max(A) are treated as zero by
/// ProjectMagnitude and left untouched.
inline constexpr double kZeroBinRelativeThreshold = 1e-15;

/// A * X / |X| on nonzero bins; zero bins pass through unchanged.
Spectrogram ProjectMagnitude(const Spectrogram& x, const MagnitudeSpectrogram& a);

/// Stft(Istft(X)).
Spectrogram ProjectConsistency(const Spectrogram& x);

/// 2 * ProjectMagnitude(X, A) - X
Spectrogram ReflectMagnitude(const Spectrogram& x, const MagnitudeSpectrogram& a);

/// 2 * ProjectConsistency(X) - X
Spectrogram ReflectConsistency(const Spectrogram& x);

}  // namespace phaseret
