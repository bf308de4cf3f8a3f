// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "phaseret/algorithms.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <string>

#include "phaseret/error.hpp"
#include "phaseret/projections.hpp"
#include "phaseret/stft.hpp"

namespace phaseret {
namespace {

Error InvalidSpec(const std::string& why) {
  return Error(ErrorKind::kInvalidArgument, "invalid algorithm spec: " + why);
}

std::string FormatNumber(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double ParseNumber(std::string_view text, std::string_view key) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw InvalidSpec("bad value for " + std::string(key) + ": '" +
                      std::string(text) + "'");
  }
  return v;
}

AlgorithmKind ParseKind(std::string_view name) {
  if (name == "gla") return AlgorithmKind::kGla;
  if (name == "fgla") return AlgorithmKind::kFgla;
  if (name == "raar") return AlgorithmKind::kRaar;
  if (name == "dm") return AlgorithmKind::kDm;
  if (name == "admm") return AlgorithmKind::kAdmm;
  if (name == "hybrid") return AlgorithmKind::kHybrid;
  throw InvalidSpec("unknown algorithm '" + std::string(name) + "'");
}

void ValidateRaarBeta(double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw InvalidSpec("RAAR needs 0 < beta <= 1, got " + FormatNumber(beta));
  }
}

void ValidateDmBeta(double beta) {
  if (beta == 0.0 || !std::isfinite(beta)) {
    throw InvalidSpec("DM needs a finite nonzero beta, got " + FormatNumber(beta));
  }
}

void ValidateAlpha(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw InvalidSpec("FGLA needs alpha >= 0, got " + FormatNumber(alpha));
  }
}

}  // namespace

std::string_view ToString(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::kGla: return "gla";
    case AlgorithmKind::kFgla: return "fgla";
    case AlgorithmKind::kRaar: return "raar";
    case AlgorithmKind::kDm: return "dm";
    case AlgorithmKind::kAdmm: return "admm";
    case AlgorithmKind::kHybrid: return "hybrid";
  }
  return "unknown";
}

void AlgorithmSpec::Validate() const {
  switch (kind) {
    case AlgorithmKind::kGla:
    case AlgorithmKind::kAdmm:
      break;
    case AlgorithmKind::kFgla:
      ValidateAlpha(alpha);
      break;
    case AlgorithmKind::kRaar:
      ValidateRaarBeta(beta);
      break;
    case AlgorithmKind::kDm:
      ValidateDmBeta(beta);
      break;
    case AlgorithmKind::kHybrid:
      ValidateAlpha(alpha);
      if (first == AlgorithmKind::kDm) {
        ValidateDmBeta(beta);
      } else if (first == AlgorithmKind::kRaar) {
        ValidateRaarBeta(beta);
      } else {
        throw InvalidSpec("hybrid first phase must be dm or raar");
      }
      if (m0 < 0) throw InvalidSpec("m0 must be nonnegative");
      break;
  }
}

void AlgorithmSpec::Validate(int iterations) const {
  Validate();
  if (iterations < 0) throw InvalidSpec("iteration count must be nonnegative");
  if (kind == AlgorithmKind::kHybrid && m0 > iterations) {
    throw InvalidSpec("m0 = " + std::to_string(m0) + " exceeds the " +
                      std::to_string(iterations) + " iterations of the run");
  }
}

std::string AlgorithmSpec::Label() const {
  std::string label(ToString(kind));
  switch (kind) {
    case AlgorithmKind::kGla:
    case AlgorithmKind::kAdmm:
      break;
    case AlgorithmKind::kFgla:
      label += ":alpha=" + FormatNumber(alpha);
      break;
    case AlgorithmKind::kRaar:
    case AlgorithmKind::kDm:
      label += ":beta=" + FormatNumber(beta);
      break;
    case AlgorithmKind::kHybrid:
      label += ":first=" + std::string(ToString(first)) +
               ",beta=" + FormatNumber(beta) + ",m0=" + std::to_string(m0) +
               ",alpha=" + FormatNumber(alpha);
      break;
  }
  return label;
}

AlgorithmSpec AlgorithmSpec::Parse(std::string_view text) {
  const auto colon = text.find(':');
  AlgorithmSpec spec;
  spec.kind = ParseKind(text.substr(0, colon));
  if (spec.kind == AlgorithmKind::kRaar) spec.beta = 0.9;

  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{}
                                             : rest.substr(comma + 1);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw InvalidSpec("expected key=value, got '" + std::string(item) + "'");
      }
      const std::string_view key = item.substr(0, eq);
      const std::string_view value = item.substr(eq + 1);
      const bool hybrid = spec.kind == AlgorithmKind::kHybrid;
      if (key == "alpha" && (spec.kind == AlgorithmKind::kFgla || hybrid)) {
        spec.alpha = ParseNumber(value, key);
      } else if (key == "beta" && (spec.kind == AlgorithmKind::kRaar ||
                                   spec.kind == AlgorithmKind::kDm || hybrid)) {
        spec.beta = ParseNumber(value, key);
      } else if (key == "m0" && hybrid) {
        const double m0 = ParseNumber(value, key);
        if (m0 != std::floor(m0) || m0 < 0 || m0 > 1e9) {
          throw InvalidSpec("m0 must be a nonnegative integer");
        }
        spec.m0 = static_cast<int>(m0);
      } else if (key == "first" && hybrid) {
        spec.first = ParseKind(value);
      } else {
        throw InvalidSpec("unexpected parameter '" + std::string(key) +
                          "' for " + std::string(ToString(spec.kind)));
      }
    }
  }
  spec.Validate();
  return spec;
}

AlgorithmState Initialize(const MagnitudeSpectrogram& a, const PhaseInit& init,
                          const AlgorithmSpec& spec) {
  AlgorithmState state;
  state.x = InitialSpectrogram(a, init);
  if (spec.kind == AlgorithmKind::kFgla || spec.kind == AlgorithmKind::kHybrid) {
    state.y = state.x;
  }
  if (spec.kind == AlgorithmKind::kAdmm) state.w = state.x;
  return state;
}

AlgorithmState StepGla(AlgorithmState state, const MagnitudeSpectrogram& a) {
  state.x = ProjectConsistency(ProjectMagnitude(state.x, a));
  state.projections += 2;
  ++state.iteration;
  return state;
}

AlgorithmState StepFgla(AlgorithmState state, const MagnitudeSpectrogram& a,
                        double alpha) {
  ValidateAlpha(alpha);
  if (!state.y) state.y = state.x;
  Spectrogram next = ProjectConsistency(ProjectMagnitude(*state.y, a));
  state.y = next + alpha * (next - state.x);
  state.x = std::move(next);
  state.projections += 2;
  ++state.iteration;
  return state;
}

AlgorithmState StepRaar(AlgorithmState state, const MagnitudeSpectrogram& a,
                        double beta) {
  ValidateRaarBeta(beta);
  const Spectrogram& x = state.x;
  const Spectrogram pa = ProjectMagnitude(x, a);
  const Spectrogram ra = 2.0 * pa - x;
  const Spectrogram rc_ra = 2.0 * ProjectConsistency(ra) - ra;
  state.x = (0.5 * beta) * (x + rc_ra) + (1.0 - beta) * pa;
  state.projections += 2;
  ++state.iteration;
  return state;
}

AlgorithmState StepDm(AlgorithmState state, const MagnitudeSpectrogram& a,
                      double beta) {
  ValidateDmBeta(beta);
  const Spectrogram& x = state.x;
  if (beta == 1.0) {
    // f_A = 2 P_A - id, f_C = id.
    const Spectrogram pa = ProjectMagnitude(x, a);
    const Spectrogram pc_fa = ProjectConsistency(2.0 * pa - x);
    state.x = x + (pc_fa - pa);
    state.projections += 2;
  } else if (beta == -1.0) {
    // f_A = id, f_C = 2 P_C - id.
    const Spectrogram pc = ProjectConsistency(x);
    const Spectrogram pa_fc = ProjectMagnitude(2.0 * pc - x, a);
    state.x = x - (pc - pa_fc);
    state.projections += 2;
  } else {
    const Spectrogram pa = ProjectMagnitude(x, a);
    const Spectrogram pc = ProjectConsistency(x);
    const Spectrogram fa = pa + (1.0 / beta) * (pa - x);
    const Spectrogram fc = pc - (1.0 / beta) * (pc - x);
    state.x = x + beta * (ProjectConsistency(fa) - ProjectMagnitude(fc, a));
    state.projections += 4;
  }
  ++state.iteration;
  return state;
}

AlgorithmState StepAdmm(AlgorithmState state, const MagnitudeSpectrogram& a) {
  if (!state.w) state.w = state.x;
  const Spectrogram& w = *state.w;
  // After the first step x already holds P_C(w).
  Spectrogram pc_w;
  if (state.iteration == 0) {
    pc_w = ProjectConsistency(w);
    ++state.projections;
  } else {
    pc_w = std::move(state.x);
  }
  Spectrogram next_w = w + (ProjectMagnitude(2.0 * pc_w - w, a) - pc_w);
  state.x = ProjectConsistency(next_w);
  state.w = std::move(next_w);
  state.projections += 2;
  ++state.iteration;
  return state;
}

AlgorithmState StepHybrid(AlgorithmState state, const MagnitudeSpectrogram& a,
                          const AlgorithmSpec& spec, int total_iterations) {
  spec.Validate(total_iterations);
  if (state.iteration < spec.m0) {
    return spec.first == AlgorithmKind::kDm
               ? StepDm(std::move(state), a, spec.beta)
               : StepRaar(std::move(state), a, spec.beta);
  }
  if (state.iteration == spec.m0) state.y = state.x;
  return StepFgla(std::move(state), a, spec.alpha);
}

AlgorithmState Step(AlgorithmState state, const MagnitudeSpectrogram& a,
                    const AlgorithmSpec& spec, int total_iterations) {
  switch (spec.kind) {
    case AlgorithmKind::kGla: return StepGla(std::move(state), a);
    case AlgorithmKind::kFgla: return StepFgla(std::move(state), a, spec.alpha);
    case AlgorithmKind::kRaar: return StepRaar(std::move(state), a, spec.beta);
    case AlgorithmKind::kDm: return StepDm(std::move(state), a, spec.beta);
    case AlgorithmKind::kAdmm: return StepAdmm(std::move(state), a);
    case AlgorithmKind::kHybrid:
      return StepHybrid(std::move(state), a, spec, total_iterations);
  }
  throw InvalidSpec("unknown algorithm kind");
}

RunResult Run(const MagnitudeSpectrogram& a, const AlgorithmSpec& spec,
              const PhaseInit& init, int iterations,
              const IterationObserver& observer) {
  spec.Validate(iterations);
  if (FrobeniusNorm(a) == 0.0) {
    throw Error(ErrorKind::kUndefinedMetric,
                "magnitude spectrogram is all zero; spectral convergence is undefined");
  }

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  AlgorithmState state = Initialize(a, init, spec);
  RunResult result;
  result.trace.records.reserve(iterations);
  for (int m = 1; m <= iterations; ++m) {
    state = Step(std::move(state), a, spec, iterations);
    IterationRecord record;
    record.iteration = m;
    record.spectral_convergence = SpectralConvergence(state.x, a);
    record.cumulative_projections = state.projections;
    record.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
    result.trace.records.push_back(record);
    if (observer) observer(m, state.x);
  }

  result.final_sc = result.trace.empty() ? SpectralConvergence(state.x, a)
                                         : result.trace.back().spectral_convergence;
  result.signal = Istft(ProjectMagnitude(state.x, a));
  result.iterate = std::move(state.x);
  return result;
}

}  // namespace phaseret
