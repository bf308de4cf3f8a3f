// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "phaseret/speechlike.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "phaseret/error.hpp"

namespace phaseret {
namespace {

constexpr double kPi = std::numbers::pi;

class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [lo, hi), platform independent.
  double Uniform(double lo, double hi) {
    const double t = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * t;
  }

  // Box-Muller, so the stream does not depend on the standard library.
  double Normal() {
    const double u1 = Uniform(0x1.0p-53, 1.0);
    const double u2 = Uniform(0.0, 1.0);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

struct Vowel {
  std::array<double, 3> formants;
};

// Rough adult formant targets (Hz).
constexpr std::array<Vowel, 6> kVowels = {{
    {{730, 1090, 2440}},  // a
    {{270, 2290, 3010}},  // i
    {{300, 870, 2240}},   // u
    {{530, 1840, 2480}},  // e
    {{570, 840, 2410}},   // o
    {{660, 1720, 2410}},  // ae
}};
constexpr std::array<double, 3> kBandwidths = {90, 110, 170};
constexpr std::array<double, 3> kFormantGains = {1.0, 0.5, 0.25};

double Envelope(double f, const std::array<double, 3>& formants) {
  double g = 0.02;
  for (int i = 0; i < 3; ++i) {
    const double d = (f - formants[i]) / kBandwidths[i];
    g += kFormantGains[i] / (1.0 + d * d);
  }
  return g;
}

// Raised-cosine onset and offset of `ramp` samples.
double Taper(std::size_t i, std::size_t length, std::size_t ramp) {
  ramp = std::min(ramp, length / 2);
  if (ramp == 0) return 1.0;
  if (i < ramp) return 0.5 - 0.5 * std::cos(kPi * i / ramp);
  if (i >= length - ramp) return 0.5 - 0.5 * std::cos(kPi * (length - 1 - i) / ramp);
  return 1.0;
}

void AddVoiced(std::vector<double>& out, std::size_t start, std::size_t length,
               int rate, double f0_start, double f0_end, const Vowel& from,
               const Vowel& to, double level) {
  const double nyquist = 0.45 * rate;
  const int max_harmonics = static_cast<int>(nyquist / std::min(f0_start, f0_end));
  std::vector<double> phase(max_harmonics + 1, 0.0);
  for (std::size_t i = 0; i < length && start + i < out.size(); ++i) {
    const double t = static_cast<double>(i) / length;
    const double f0 = f0_start + (f0_end - f0_start) * t;
    std::array<double, 3> formants;
    for (int k = 0; k < 3; ++k) {
      formants[k] = from.formants[k] + (to.formants[k] - from.formants[k]) * t;
    }
    double sample = 0.0;
    for (int h = 1; h <= max_harmonics; ++h) {
      const double f = h * f0;
      if (f >= nyquist) break;
      phase[h] += 2.0 * kPi * f / rate;
      sample += Envelope(f, formants) / std::sqrt(h) * std::sin(phase[h]);
    }
    out[start + i] += level * Taper(i, length, rate / 100) * sample;
  }
}

void AddFricative(std::vector<double>& out, std::size_t start,
                  std::size_t length, int rate, double level, Random& rng) {
  // First difference of white noise tilts the spectrum towards high bands.
  double previous = 0.0;
  for (std::size_t i = 0; i < length && start + i < out.size(); ++i) {
    const double n = rng.Normal();
    out[start + i] += level * Taper(i, length, rate / 200) * (n - previous);
    previous = n;
  }
}

}  // namespace

Signal SpeechLike(std::uint64_t seed, double duration_seconds, int sample_rate) {
  if (!(duration_seconds > 0.0) || sample_rate <= 0) {
    throw Error(ErrorKind::kInvalidArgument,
                "duration and sample rate must be positive");
  }
  Random rng(seed * 0x9E3779B97F4A7C15ULL + 1);
  const std::size_t total =
      static_cast<std::size_t>(std::llround(duration_seconds * sample_rate));

  Signal signal;
  signal.sample_rate = sample_rate;
  signal.samples.assign(total, 0.0);

  const double base_f0 = rng.Uniform(95.0, 230.0);
  std::size_t pos = static_cast<std::size_t>(rng.Uniform(0.02, 0.06) * sample_rate);
  auto vowel = static_cast<std::size_t>(rng.Uniform(0.0, kVowels.size()));
  while (pos < total) {
    if (rng.Uniform(0.0, 1.0) < 0.35) {
      const auto len = static_cast<std::size_t>(rng.Uniform(0.04, 0.09) * sample_rate);
      AddFricative(signal.samples, pos, len, sample_rate, rng.Uniform(0.02, 0.06), rng);
      pos += len;
    }
    const auto len = static_cast<std::size_t>(rng.Uniform(0.12, 0.28) * sample_rate);
    const auto next = static_cast<std::size_t>(rng.Uniform(0.0, kVowels.size()));
    const double f0_start = base_f0 * rng.Uniform(0.85, 1.15);
    const double f0_end = base_f0 * rng.Uniform(0.8, 1.1);
    AddVoiced(signal.samples, pos, len, sample_rate, f0_start, f0_end,
              kVowels[vowel], kVowels[next], rng.Uniform(0.5, 1.0));
    vowel = next;
    pos += len + static_cast<std::size_t>(rng.Uniform(0.02, 0.07) * sample_rate);
  }

  double peak = 0.0;
  for (double s : signal.samples) peak = std::max(peak, std::abs(s));
  const double gain = peak > 0.0 ? 0.5 / peak : 1.0;
  for (double& s : signal.samples) s = s * gain + 1e-4 * rng.Normal();
  return signal;
}

}  // namespace phaseret
