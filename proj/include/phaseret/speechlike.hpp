// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>

#include "phaseret/signal.hpp"

namespace phaseret {

/// Deterministic synthetic utterance for experiments without a speech corpus.
///
/// A sequence of voiced syllables (harmonic source with a gliding pitch,
/// shaped by three moving formants), unvoiced noise bursts and short pauses,
/// over a low noise floor. Different seeds give different "speakers" (base
/// pitch) and syllable sequences. Peak amplitude is 0.5. The output depends
/// only on the arguments.
Signal SpeechLike(std::uint64_t seed, double duration_seconds = 1.0,
                  int sample_rate = 16000);

}  // namespace phaseret
