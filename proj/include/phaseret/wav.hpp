// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <filesystem>

#include "phaseret/signal.hpp"

namespace phaseret {

/// Reads a RIFF/WAVE file holding PCM integer (8/16/24/32 bit) or IEEE float
/// (32 bit) samples. Integer PCM is divided by 2^(bits-1); 8-bit data is
/// unsigned and recentred first. Multichannel frames are averaged to mono.
/// The sample rate is taken from the header as-is.
///
/// Throws Error with kFileNotFound, kIo, kMalformedFile or kUnsupportedFormat.
Signal ReadWav(const std::filesystem::path& path);

/// Writes 16-bit PCM mono. Samples outside [-1, 1] are clipped. Throws on
/// empty or non-finite input (kInvalidArgument / kNonFinite) and on I/O
/// failure (kIo).
void WriteWav(const Signal& signal, const std::filesystem::path& path);

}  // namespace phaseret
