// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "phaseret/stft.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phaseret/error.hpp"
#include "phaseret/fft.hpp"

namespace phaseret {
namespace {

constexpr double kWindowSumFloor = 1e-12;

// Zeros added before the first sample; every original sample then lies under
// frame_length / frame_shift windows.
std::size_t EdgePadding(const StftConfig& config) {
  return static_cast<std::size_t>(config.frame_length - config.frame_shift);
}

std::size_t PaddedLength(int num_frames, const StftConfig& config) {
  return static_cast<std::size_t>(num_frames - 1) * config.frame_shift +
         config.frame_length;
}

}  // namespace

int NumFrames(std::size_t length, const StftConfig& config) {
  config.Validate();
  if (length < static_cast<std::size_t>(config.frame_shift)) {
    throw Error(ErrorKind::kInvalidArgument,
                "signal of " + std::to_string(length) +
                    " samples is shorter than one frame shift");
  }
  const std::size_t base = length + 2 * EdgePadding(config);
  const std::size_t shift = config.frame_shift;
  const std::size_t span = base - config.frame_length;
  return static_cast<int>((span + shift - 1) / shift) + 1;
}

Spectrogram Stft(const Signal& signal, const StftConfig& config) {
  const int num_frames = NumFrames(signal.size(), config);
  const std::size_t pad = EdgePadding(config);
  const std::vector<double> window = MakeWindow(config.window, config.frame_length);

  Spectrogram spec(num_frames, config, signal.size(), signal.sample_rate);
  RealFft& fft = ThreadLocalFft(config.fft_size);
  std::vector<double> buffer(config.fft_size);
  const auto n = static_cast<std::ptrdiff_t>(signal.size());
  for (int f = 0; f < num_frames; ++f) {
    std::fill(buffer.begin(), buffer.end(), 0.0);
    // Sample index in the unpadded signal of the frame's first sample.
    const std::ptrdiff_t start =
        static_cast<std::ptrdiff_t>(f) * config.frame_shift -
        static_cast<std::ptrdiff_t>(pad);
    for (int i = 0; i < config.frame_length; ++i) {
      const std::ptrdiff_t t = start + i;
      if (t >= 0 && t < n) buffer[i] = signal.samples[t] * window[i];
    }
    fft.Forward(buffer, spec.frame(f));
  }
  return spec;
}

Signal Istft(const Spectrogram& spec) {
  if (!AllFinite(spec)) {
    throw Error(ErrorKind::kNonFinite, "non-finite spectrogram bin");
  }
  const StftConfig& config = spec.config();
  config.Validate();
  const std::vector<double> window = MakeWindow(config.window, config.frame_length);
  const std::size_t padded = PaddedLength(spec.num_frames(), config);

  std::vector<double> overlap(padded, 0.0);
  std::vector<double> weight(padded, 0.0);
  RealFft& fft = ThreadLocalFft(config.fft_size);
  std::vector<double> frame(config.fft_size);
  for (int f = 0; f < spec.num_frames(); ++f) {
    fft.Inverse(spec.frame(f), frame);
    const std::size_t start = static_cast<std::size_t>(f) * config.frame_shift;
    for (int i = 0; i < config.frame_length; ++i) {
      overlap[start + i] += window[i] * frame[i];
      weight[start + i] += window[i] * window[i];
    }
  }

  Signal out;
  out.sample_rate = spec.sample_rate();
  out.samples.assign(spec.original_length(), 0.0);
  const std::size_t pad = EdgePadding(config);
  for (std::size_t t = 0; t < out.samples.size() && pad + t < padded; ++t) {
    out.samples[t] = overlap[pad + t] / std::max(weight[pad + t], kWindowSumFloor);
  }
  return out;
}

MagnitudeSpectrogram Magnitude(const Spectrogram& spec) {
  MagnitudeSpectrogram mags(spec.num_frames(), spec.config(),
                            spec.original_length(), spec.sample_rate());
  auto in = spec.values();
  auto out = mags.values();
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = std::abs(in[i]);
  return mags;
}

}  // namespace phaseret
