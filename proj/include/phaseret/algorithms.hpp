// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "phaseret/metrics.hpp"
#include "phaseret/phase_init.hpp"
#include "phaseret/signal.hpp"
#include "phaseret/spectrogram.hpp"

namespace phaseret {

enum class AlgorithmKind { kGla, kFgla, kRaar, kDm, kAdmm, kHybrid };

/// Algorithm choice plus its parameters.
///
///   alpha  FGLA momentum (also the FGLA phase of a hybrid run)
///   beta   RAAR / DM relaxation (for a hybrid run, of the first phase)
///   m0     hybrid switch point: the first m0 steps use `first`, then FGLA
struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::kGla;
  double alpha = 0.99;
  double beta = 1.0;
  int m0 = 0;
  AlgorithmKind first = AlgorithmKind::kDm;

  static AlgorithmSpec Gla() { return {}; }
  static AlgorithmSpec Fgla(double alpha = 0.99) {
    return {AlgorithmKind::kFgla, alpha};
  }
  static AlgorithmSpec Raar(double beta = 0.9) {
    return {AlgorithmKind::kRaar, 0.99, beta};
  }
  static AlgorithmSpec Dm(double beta) {
    return {AlgorithmKind::kDm, 0.99, beta};
  }
  static AlgorithmSpec Admm() { return {AlgorithmKind::kAdmm}; }
  static AlgorithmSpec Hybrid(AlgorithmKind first, double beta, int m0,
                              double alpha = 0.99) {
    return {AlgorithmKind::kHybrid, alpha, beta, m0, first};
  }

  /// Parameter checks independent of the run length.
  void Validate() const;
  /// Validate() plus m0 <= iterations for hybrid runs.
  void Validate(int iterations) const;

  /// Canonical text form, e.g. "dm:beta=0.8" or "hybrid:first=dm,beta=1,m0=60".
  /// Parse(Label()) reproduces the spec.
  std::string Label() const;

  /// Parses gla | fgla[:alpha=A] | raar[:beta=B] | dm:beta=B | admm |
  /// hybrid[:first=dm|raar,beta=B,m0=M,alpha=A]. Unspecified parameters take
  /// the defaults alpha=0.99, RAAR beta=0.9, DM beta=1, first=dm, m0=0.
  static AlgorithmSpec Parse(std::string_view text);

  friend bool operator==(const AlgorithmSpec&, const AlgorithmSpec&) = default;
};

/// Iterate plus whatever auxiliary variables the algorithm carries.
///
/// `x` is always the iterate on which metrics are measured. For ADMM it is the
/// consistent variable Z = P_C(W) once at least one step has run (before that
/// it is X0). `y` exists for FGLA and hybrid runs, `w` only for ADMM.
struct AlgorithmState {
  Spectrogram x;
  std::optional<Spectrogram> y;
  std::optional<Spectrogram> w;
  int iteration = 0;
  long projections = 0;  // P_A and P_C evaluations so far
};

/// X0 = A exp(j phi0), with y = X0 / w = X0 where the kind needs them.
/// The phases depend only on `init` and the shape of `a`.
AlgorithmState Initialize(const MagnitudeSpectrogram& a, const PhaseInit& init,
                          const AlgorithmSpec& spec);

// Single steps. Each consumes the state and returns the next one.

/// x' = P_C(P_A(x))
AlgorithmState StepGla(AlgorithmState state, const MagnitudeSpectrogram& a);

/// x' = P_C(P_A(y)), y' = x' + alpha (x' - x)
AlgorithmState StepFgla(AlgorithmState state, const MagnitudeSpectrogram& a,
                        double alpha);

/// x' = beta/2 [x + R_C(R_A(x))] + (1 - beta) P_A(x), 0 < beta <= 1
AlgorithmState StepRaar(AlgorithmState state, const MagnitudeSpectrogram& a,
                        double beta);

/// x' = x + beta [P_C(f_A(x)) - P_A(f_C(x))] with
/// f_A = P_A + (P_A - id)/beta and f_C = P_C - (P_C - id)/beta.
/// |beta| = 1 uses the equivalent two-projection form.
AlgorithmState StepDm(AlgorithmState state, const MagnitudeSpectrogram& a,
                      double beta);

/// w' = w + P_A(2 P_C(w) - w) - P_C(w); x' = P_C(w').
AlgorithmState StepAdmm(AlgorithmState state, const MagnitudeSpectrogram& a);

/// First algorithm while iteration < m0, FGLA afterwards. At the switch the
/// FGLA auxiliary restarts from y = x.
AlgorithmState StepHybrid(AlgorithmState state, const MagnitudeSpectrogram& a,
                          const AlgorithmSpec& spec, int total_iterations);

/// Dispatches on spec.kind.
AlgorithmState Step(AlgorithmState state, const MagnitudeSpectrogram& a,
                    const AlgorithmSpec& spec, int total_iterations);

/// Called after every step with the 1-based iteration and the metric iterate.
/// Exceptions thrown by the observer abort the run.
using IterationObserver =
    std::function<void(int iteration, const Spectrogram& iterate)>;

struct RunResult {
  Signal signal;           // Istft(P_A(final iterate))
  IterationTrace trace;    // one record per step
  Spectrogram iterate;     // final metric iterate
  double final_sc = 0.0;   // SC of the final iterate (of X0 if no steps ran)
};

/// Full reconstruction from magnitudes: Initialize, `iterations` steps, then
/// the delivered signal Istft(P_A(x)).
///
/// Throws Error(kUndefinedMetric) for all-zero magnitudes and
/// Error(kInvalidArgument) for invalid specs.
RunResult Run(const MagnitudeSpectrogram& a, const AlgorithmSpec& spec,
              const PhaseInit& init, int iterations,
              const IterationObserver& observer = {});

std::string_view ToString(AlgorithmKind kind);

}  // namespace phaseret
