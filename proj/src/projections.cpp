// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "phaseret/projections.hpp"

#include <algorithm>
#include <cmath>

#include "phaseret/error.hpp"
#include "phaseret/stft.hpp"

namespace phaseret {

Spectrogram ProjectMagnitude(const Spectrogram& x, const MagnitudeSpectrogram& a) {
  RequireSameShape(x, a);
  auto mags = a.values();
  const double max_a =
      mags.empty() ? 0.0 : *std::max_element(mags.begin(), mags.end());
  const double threshold = kZeroBinRelativeThreshold * max_a;

  Spectrogram out = x;
  auto v = out.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = std::abs(v[i]);
    if (r > threshold && r > 0.0) v[i] *= mags[i] / r;
  }
  return out;
}

Spectrogram ProjectConsistency(const Spectrogram& x) {
  if (x.num_frames() != NumFrames(x.original_length(), x.config())) {
    throw Error(ErrorKind::kShapeMismatch,
                "frame count does not match the recorded signal length");
  }
  return Stft(Istft(x), x.config());
}

Spectrogram ReflectMagnitude(const Spectrogram& x, const MagnitudeSpectrogram& a) {
  return 2.0 * ProjectMagnitude(x, a) - x;
}

Spectrogram ReflectConsistency(const Spectrogram& x) {
  return 2.0 * ProjectConsistency(x) - x;
}

}  // namespace phaseret
