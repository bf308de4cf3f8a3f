// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "phaseret/spectrogram.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "phaseret/error.hpp"

namespace phaseret {

void StftConfig::Validate() const {
  if (frame_shift <= 0 || frame_shift > frame_length || frame_length > fft_size) {
    throw Error(ErrorKind::kInvalidArgument,
                "invalid STFT config: need 0 < shift (" +
                    std::to_string(frame_shift) + ") <= frame length (" +
                    std::to_string(frame_length) + ") <= fft size (" +
                    std::to_string(fft_size) + ")");
  }
}

StftConfig StftConfig::FromMilliseconds(double frame_ms, double shift_ms,
                                        int sample_rate, WindowType window) {
  if (sample_rate <= 0 || !(frame_ms > 0) || !(shift_ms > 0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "frame/shift durations and sample rate must be positive");
  }
  StftConfig config;
  config.frame_length = static_cast<int>(std::lround(frame_ms * sample_rate / 1000.0));
  config.frame_shift = static_cast<int>(std::lround(shift_ms * sample_rate / 1000.0));
  config.fft_size = config.frame_length;
  config.window = window;
  config.Validate();
  return config;
}

std::vector<double> MakeWindow(WindowType type, int length) {
  std::vector<double> w(length, 1.0);
  if (type == WindowType::kRectangular) return w;
  for (int n = 0; n < length; ++n) {
    double hann = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / length);
    w[n] = type == WindowType::kSqrtHann ? std::sqrt(hann) : hann;
  }
  return w;
}

void RequireSameShape(const Spectrogram& a, const Spectrogram& b) {
  if (!a.SameShape(b)) {
    throw Error(ErrorKind::kShapeMismatch, "spectrogram shapes differ");
  }
}

void RequireSameShape(const Spectrogram& x, const MagnitudeSpectrogram& a) {
  if (!x.SameShape(a)) {
    throw Error(ErrorKind::kShapeMismatch,
                "spectrogram and magnitude shapes differ");
  }
}

Spectrogram operator+(const Spectrogram& a, const Spectrogram& b) {
  RequireSameShape(a, b);
  Spectrogram out = a;
  auto o = out.values();
  auto v = b.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] += v[i];
  return out;
}

Spectrogram operator-(const Spectrogram& a, const Spectrogram& b) {
  RequireSameShape(a, b);
  Spectrogram out = a;
  auto o = out.values();
  auto v = b.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] -= v[i];
  return out;
}

Spectrogram operator*(double s, const Spectrogram& a) {
  Spectrogram out = a;
  for (auto& v : out.values()) v *= s;
  return out;
}

Spectrogram operator*(Complex s, const Spectrogram& a) {
  Spectrogram out = a;
  for (auto& v : out.values()) v *= s;
  return out;
}

double FrobeniusNorm(const Spectrogram& x) {
  double sum = 0.0;
  for (const auto& v : x.values()) sum += std::norm(v);
  return std::sqrt(sum);
}

double FrobeniusNorm(const MagnitudeSpectrogram& a) {
  double sum = 0.0;
  for (double v : a.values()) sum += v * v;
  return std::sqrt(sum);
}

double FrobeniusDistance(const Spectrogram& a, const Spectrogram& b) {
  RequireSameShape(a, b);
  auto u = a.values();
  auto v = b.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += std::norm(u[i] - v[i]);
  return std::sqrt(sum);
}

bool AllFinite(const Spectrogram& x) {
  for (const auto& v : x.values()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

}  // namespace phaseret
