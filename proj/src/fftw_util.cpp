#include "fftw_util.hpp"

#include <cstring>
#include <stdexcept>

namespace fowler::detail {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

std::size_t fft_friendly_size(std::size_t n) {
  if (n < 2) return 2;
  for (std::size_t c = n;; ++c) {
    std::size_t r = c;
    while (r % 2 == 0) r /= 2;
    while (r % 3 == 0) r /= 3;
    while (r % 5 == 0) r /= 5;
    if (r == 1) return c;
  }
}

RealFft::RealFft(std::size_t n) : n_(n) {
  real_buf_ = fftw_alloc_real(n_);
  cplx_buf_ = fftw_alloc_complex(n_ / 2 + 1);
  if (!real_buf_ || !cplx_buf_) throw std::bad_alloc();
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(n_), real_buf_, cplx_buf_, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft_c2r_1d(static_cast<int>(n_), cplx_buf_, real_buf_, FFTW_ESTIMATE);
  if (!fwd_ || !bwd_) throw std::runtime_error("fftw plan creation failed");
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  fftw_destroy_plan(fwd_);
  fftw_destroy_plan(bwd_);
  fftw_free(real_buf_);
  fftw_free(cplx_buf_);
}

void RealFft::forward(const std::vector<double>& in, std::vector<std::complex<double>>& out) {
  std::memset(real_buf_, 0, n_ * sizeof(double));
  std::memcpy(real_buf_, in.data(), std::min(in.size(), n_) * sizeof(double));
  fftw_execute(fwd_);
  out.resize(spectrum_size());
  for (std::size_t i = 0; i < spectrum_size(); ++i)
    out[i] = {cplx_buf_[i][0], cplx_buf_[i][1]};
}

void RealFft::backward(const std::vector<std::complex<double>>& in, std::vector<double>& out) {
  if (in.size() != spectrum_size()) throw std::invalid_argument("RealFft: spectrum size mismatch");
  for (std::size_t i = 0; i < spectrum_size(); ++i) {
    cplx_buf_[i][0] = in[i].real();
    cplx_buf_[i][1] = in[i].imag();
  }
  fftw_execute(bwd_);
  out.resize(n_);
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = real_buf_[i] * scale;
}

}  // namespace fowler::detail
