#pragma once

// Thin wrapper around FFTW's 1-d real transforms. Plans and work buffers are
// cached per thread and per grid size; the FFTW planner itself is not
// thread-safe, so plan creation is serialized behind a mutex. Execution on a
// thread's own cached plan needs no locking.

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace biham::detail {

class FftWorkspace {
 public:
  explicit FftWorkspace(std::size_t n) : n_(n) {
    real_ = fftw_alloc_real(n);
    cplx_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real_, cplx_, FFTW_ESTIMATE);
    inv_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), cplx_, real_, FFTW_ESTIMATE);
  }

  ~FftWorkspace() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(inv_);
    fftw_free(real_);
    fftw_free(cplx_);
  }

  FftWorkspace(const FftWorkspace&) = delete;
  FftWorkspace& operator=(const FftWorkspace&) = delete;

  // Forward transform, normalized so that coeffs[n] is the coefficient of
  // e^{i n x} in the trigonometric interpolant (n = 0 .. N/2).
  std::vector<std::complex<double>> forward(const std::vector<double>& samples) {
    for (std::size_t j = 0; j < n_; ++j) real_[j] = samples[j];
    fftw_execute(fwd_);
    std::vector<std::complex<double>> coeffs(n_ / 2 + 1);
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t k = 0; k <= n_ / 2; ++k)
      coeffs[k] = std::complex<double>(cplx_[k][0] * scale, cplx_[k][1] * scale);
    return coeffs;
  }

  std::vector<double> inverse(const std::vector<std::complex<double>>& coeffs) {
    for (std::size_t k = 0; k <= n_ / 2; ++k) {
      cplx_[k][0] = coeffs[k].real();
      cplx_[k][1] = coeffs[k].imag();
    }
    fftw_execute(inv_);
    return std::vector<double>(real_, real_ + n_);
  }

  static FftWorkspace& get(std::size_t n) {
    thread_local std::map<std::size_t, std::unique_ptr<FftWorkspace>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<FftWorkspace>(n)).first;
    return *it->second;
  }

 private:
  static std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
  }

  std::size_t n_;
  double* real_;
  fftw_complex* cplx_;
  fftw_plan fwd_;
  fftw_plan inv_;
};

inline std::vector<std::complex<double>> fft_forward(const std::vector<double>& samples) {
  return FftWorkspace::get(samples.size()).forward(samples);
}

inline std::vector<double> fft_inverse(const std::vector<std::complex<double>>& coeffs,
                                       std::size_t n) {
  return FftWorkspace::get(n).inverse(coeffs);
}

}  // namespace biham::detail
