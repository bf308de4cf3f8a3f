// Copyright 2026 phaseret authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "phaseret/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

#include "phaseret/error.hpp"

namespace phaseret {
namespace {

// The FFTW planner is not thread-safe; execution of distinct plans is.
std::mutex planner_mutex;

}  // namespace

RealFft::RealFft(int n) : n_(n) {
  if (n <= 0) throw Error(ErrorKind::kInvalidArgument, "FFT size must be positive");
  std::lock_guard lock(planner_mutex);
  real_ = fftw_alloc_real(n);
  auto* spectrum = fftw_alloc_complex(n / 2 + 1);
  complex_ = spectrum;
  forward_plan_ = fftw_plan_dft_r2c_1d(n, real_, spectrum, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_1d(n, spectrum, real_, FFTW_ESTIMATE);
}

RealFft::~RealFft() { Release(); }

RealFft::RealFft(RealFft&& other) noexcept
    : n_(std::exchange(other.n_, 0)),
      real_(std::exchange(other.real_, nullptr)),
      complex_(std::exchange(other.complex_, nullptr)),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      inverse_plan_(std::exchange(other.inverse_plan_, nullptr)) {}

RealFft& RealFft::operator=(RealFft&& other) noexcept {
  if (this != &other) {
    Release();
    n_ = std::exchange(other.n_, 0);
    real_ = std::exchange(other.real_, nullptr);
    complex_ = std::exchange(other.complex_, nullptr);
    forward_plan_ = std::exchange(other.forward_plan_, nullptr);
    inverse_plan_ = std::exchange(other.inverse_plan_, nullptr);
  }
  return *this;
}

void RealFft::Release() {
  if (!real_ && !complex_) return;
  std::lock_guard lock(planner_mutex);
  if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (inverse_plan_) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  fftw_free(real_);
  fftw_free(complex_);
  real_ = nullptr;
  complex_ = nullptr;
  forward_plan_ = inverse_plan_ = nullptr;
}

void RealFft::Forward(std::span<const double> in,
                      std::span<std::complex<double>> out) {
  std::copy(in.begin(), in.begin() + n_, real_);
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  auto* spectrum = static_cast<fftw_complex*>(complex_);
  for (int k = 0; k < num_bins(); ++k) {
    out[k] = {spectrum[k][0], spectrum[k][1]};
  }
}

void RealFft::Inverse(std::span<const std::complex<double>> in,
                      std::span<double> out) {
  auto* spectrum = static_cast<fftw_complex*>(complex_);
  for (int k = 0; k < num_bins(); ++k) {
    spectrum[k][0] = in[k].real();
    spectrum[k][1] = in[k].imag();
  }
  // c2r would otherwise see whatever imaginary part these bins carry.
  spectrum[0][1] = 0.0;
  if (n_ % 2 == 0) spectrum[n_ / 2][1] = 0.0;
  fftw_execute(static_cast<fftw_plan>(inverse_plan_));
  const double scale = 1.0 / n_;
  for (int i = 0; i < n_; ++i) out[i] = real_[i] * scale;
}

RealFft& ThreadLocalFft(int n) {
  thread_local std::map<int, RealFft> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, RealFft(n)).first;
  return it->second;
}

}  // namespace phaseret
