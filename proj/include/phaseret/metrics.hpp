// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <vector>

#include "phaseret/signal.hpp"
#include "phaseret/spectrogram.hpp"

namespace phaseret {

struct IterationRecord {
  int iteration = 0;  // 1-based
  double spectral_convergence = 0.0;
  long cumulative_projections = 0;
  double wall_time = 0.0;  // seconds since the run started
};

struct IterationTrace {
  std::vector<IterationRecord> records;

  bool empty() const { return records.empty(); }
  std::size_t size() const { return records.size(); }
  const IterationRecord& back() const { return records.back(); }
};

/// ||A - |P_C(X)|||_F / ||A||_F.
///
/// Throws Error(kUndefinedMetric) when A is all zero and
/// Error(kShapeMismatch) when the shapes differ.
double SpectralConvergence(const Spectrogram& x, const MagnitudeSpectrogram& a);

/// ||P_A(X) - P_C(P_A(X))||_F, the quantity Griffin-Lim never increases.
double AlternatingProjectionResidual(const Spectrogram& x,
                                     const MagnitudeSpectrogram& a);

/// Scale-invariant SDR in dB. Both signals are truncated to the shorter
/// length. Returns +infinity when the estimate is an exact multiple of the
/// reference, -infinity when the estimate is orthogonal to it.
///
/// Throws Error(kUndefinedMetric) for a zero-energy reference.
double SiSdr(const Signal& reference, const Signal& estimate);

}  // namespace phaseret
