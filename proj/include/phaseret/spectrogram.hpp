// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace phaseret {

using Complex = std::complex<double>;

enum class WindowType { kSqrtHann, kHann, kRectangular };

/// Frame geometry of the transform pair. All sizes are in samples.
struct StftConfig {
  int frame_length = 512;
  int frame_shift = 128;
  int fft_size = 512;
  WindowType window = WindowType::kSqrtHann;

  int num_bins() const { return fft_size / 2 + 1; }

  /// Throws Error(kInvalidArgument) unless 0 < shift <= length <= fft_size.
  void Validate() const;

  /// Config from durations, rounding to the nearest sample. fft_size equals
  /// the frame length.
  static StftConfig FromMilliseconds(double frame_ms, double shift_ms,
                                     int sample_rate,
                                     WindowType window = WindowType::kSqrtHann);

  friend bool operator==(const StftConfig&, const StftConfig&) = default;
};

/// Periodic window of the given length (w[0] is the first sample of the
/// period, so Hann-family windows start at zero).
std::vector<double> MakeWindow(WindowType type, int length);

/// Dense row-major frames x bins matrix with the transform metadata needed to
/// invert it. Used for both complex spectrograms and magnitudes.
template <typename T>
class TimeFrequencyMatrix {
 public:
  TimeFrequencyMatrix() = default;
  TimeFrequencyMatrix(int num_frames, const StftConfig& config,
                      std::size_t original_length, int sample_rate = 16000)
      : num_frames_(num_frames),
        config_(config),
        original_length_(original_length),
        sample_rate_(sample_rate),
        data_(static_cast<std::size_t>(num_frames) * config.num_bins()) {}

  int num_frames() const { return num_frames_; }
  int num_bins() const { return config_.num_bins(); }
  std::size_t size() const { return data_.size(); }
  const StftConfig& config() const { return config_; }
  std::size_t original_length() const { return original_length_; }
  int sample_rate() const { return sample_rate_; }

  T& operator()(int frame, int bin) {
    return data_[static_cast<std::size_t>(frame) * num_bins() + bin];
  }
  const T& operator()(int frame, int bin) const {
    return data_[static_cast<std::size_t>(frame) * num_bins() + bin];
  }

  std::span<T> frame(int f) {
    return {data_.data() + static_cast<std::size_t>(f) * num_bins(),
            static_cast<std::size_t>(num_bins())};
  }
  std::span<const T> frame(int f) const {
    return {data_.data() + static_cast<std::size_t>(f) * num_bins(),
            static_cast<std::size_t>(num_bins())};
  }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }

  /// Same frame count, config and original length. The sample rate is
  /// bookkeeping only and is not compared.
  template <typename U>
  bool SameShape(const TimeFrequencyMatrix<U>& other) const {
    return num_frames_ == other.num_frames() && config_ == other.config() &&
           original_length_ == other.original_length();
  }

 private:
  int num_frames_ = 0;
  StftConfig config_;
  std::size_t original_length_ = 0;
  int sample_rate_ = 16000;
  std::vector<T> data_;
};

using Spectrogram = TimeFrequencyMatrix<Complex>;
using MagnitudeSpectrogram = TimeFrequencyMatrix<double>;

// Elementwise arithmetic. Binary operations throw Error(kShapeMismatch) when
// the operands do not share a shape.
Spectrogram operator+(const Spectrogram& a, const Spectrogram& b);
Spectrogram operator-(const Spectrogram& a, const Spectrogram& b);
Spectrogram operator*(double s, const Spectrogram& a);
Spectrogram operator*(Complex s, const Spectrogram& a);

void RequireSameShape(const Spectrogram& a, const Spectrogram& b);
void RequireSameShape(const Spectrogram& x, const MagnitudeSpectrogram& a);

/// Frobenius norm over the stored one-sided bins.
double FrobeniusNorm(const Spectrogram& x);
double FrobeniusNorm(const MagnitudeSpectrogram& a);
/// ||a - b||_F
double FrobeniusDistance(const Spectrogram& a, const Spectrogram& b);

bool AllFinite(const Spectrogram& x);

}  // namespace phaseret
