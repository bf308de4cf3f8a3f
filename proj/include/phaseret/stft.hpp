// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include "phaseret/signal.hpp"
#include "phaseret/spectrogram.hpp"

namespace phaseret {

/// Number of frames Stft() produces for a signal of `length` samples.
int NumFrames(std::size_t length, const StftConfig& config);

/// Forward STFT.
///
/// The signal is zero-padded by (frame_length - frame_shift) samples on both
/// sides, then on the right until the last frame is complete. Each frame is
/// windowed, zero-padded to fft_size and transformed; the fft_size/2 + 1
/// one-sided bins are kept.
///
/// Throws Error(kInvalidArgument) if the signal is shorter than one frame
/// shift or the config is invalid.
Spectrogram Stft(const Signal& signal, const StftConfig& config);

/// Least-squares inverse STFT: windowed overlap-add divided by the summed
/// squared window, then trimmed to original_length. Stft(Istft(X)) is the
/// orthogonal projection onto consistent spectrograms.
///
/// Throws Error(kNonFinite) if any bin is not finite.
Signal Istft(const Spectrogram& spec);

/// Elementwise modulus.
MagnitudeSpectrogram Magnitude(const Spectrogram& spec);

}  // namespace phaseret
