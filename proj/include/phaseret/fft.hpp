// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <complex>
#include <span>

namespace phaseret {

/// Unnormalized real-input FFT of fixed size n backed by FFTW.
///
/// Forward() maps n real samples to n/2+1 one-sided bins. Inverse() maps
/// n/2+1 bins back to n real samples and scales by 1/n, so Inverse(Forward(x))
/// reproduces x. The imaginary parts of the DC and (even n) Nyquist bins are
/// ignored by Inverse(), which is the Hermitian projection for real signals.
///
/// Plans are created with FFTW_ESTIMATE so results are bit-reproducible from
/// run to run. Plan creation is serialized internally; a RealFft instance is
/// not itself thread-safe, use one per thread.
class RealFft {
 public:
  explicit RealFft(int n);
  ~RealFft();

  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;
  RealFft(RealFft&& other) noexcept;
  RealFft& operator=(RealFft&& other) noexcept;

  int size() const { return n_; }
  int num_bins() const { return n_ / 2 + 1; }

  void Forward(std::span<const double> in, std::span<std::complex<double>> out);
  void Inverse(std::span<const std::complex<double>> in, std::span<double> out);

 private:
  void Release();

  int n_ = 0;
  double* real_ = nullptr;
  void* complex_ = nullptr;  // fftw_complex*
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

/// Thread-local RealFft cache keyed by size.
RealFft& ThreadLocalFft(int n);

}  // namespace phaseret
