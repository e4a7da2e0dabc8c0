#pragma once

// Internal FFTW helpers. FFTW's planner is not thread-safe; all plan
// creation/destruction goes through the shared mutex below.

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <mutex>
#include <vector>

namespace fowler::detail {

std::mutex& fftw_planner_mutex();

/// Smallest 5-smooth integer >= n (sizes FFTW handles at O(n log n)).
std::size_t fft_friendly_size(std::size_t n);

/// Fixed-size real<->half-complex transform pair on owned buffers.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  std::size_t spectrum_size() const { return n_ / 2 + 1; }

  /// in: n reals (zero-padded by caller) -> out: n/2+1 complex bins.
  void forward(const std::vector<double>& in, std::vector<std::complex<double>>& out);
  /// Inverse of forward, including the 1/n normalization.
  void backward(const std::vector<std::complex<double>>& in, std::vector<double>& out);

 private:
  std::size_t n_;
  double* real_buf_;
  fftw_complex* cplx_buf_;
  fftw_plan fwd_;
  fftw_plan bwd_;
};

}  // namespace fowler::detail
