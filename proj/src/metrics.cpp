// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "phaseret/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phaseret/error.hpp"
#include "phaseret/projections.hpp"

namespace phaseret {

double SpectralConvergence(const Spectrogram& x, const MagnitudeSpectrogram& a) {
  RequireSameShape(x, a);
  const double norm_a = FrobeniusNorm(a);
  if (norm_a == 0.0) {
    throw Error(ErrorKind::kUndefinedMetric,
                "spectral convergence is undefined for all-zero magnitudes");
  }
  const Spectrogram consistent = ProjectConsistency(x);
  auto c = consistent.values();
  auto m = a.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double d = m[i] - std::abs(c[i]);
    sum += d * d;
  }
  return std::sqrt(sum) / norm_a;
}

double AlternatingProjectionResidual(const Spectrogram& x,
                                     const MagnitudeSpectrogram& a) {
  const Spectrogram pa = ProjectMagnitude(x, a);
  return FrobeniusDistance(pa, ProjectConsistency(pa));
}

double SiSdr(const Signal& reference, const Signal& estimate) {
  const std::size_t n = std::min(reference.size(), estimate.size());
  double ref_energy = 0.0;
  double dot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ref_energy += reference.samples[i] * reference.samples[i];
    dot += reference.samples[i] * estimate.samples[i];
  }
  if (ref_energy == 0.0) {
    throw Error(ErrorKind::kUndefinedMetric, "SI-SDR needs a nonzero reference");
  }
  const double scale = dot / ref_energy;
  double target_energy = 0.0;
  double residual_energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double target = scale * reference.samples[i];
    const double residual = estimate.samples[i] - target;
    target_energy += target * target;
    residual_energy += residual * residual;
  }
  if (target_energy == 0.0) return -std::numeric_limits<double>::infinity();
  if (residual_energy == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(target_energy / residual_energy);
}

}  // namespace phaseret
