#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "fowler/coefficients.hpp"
#include "fowler/field.hpp"

namespace fowler {

/// Apply a nonlocal stencil table by direct summation. Causal mode extends the
/// field by zero on both sides (u_j = 0 for j < 0 and j >= n); periodic mode
/// wraps indices (the stencil is folded when longer than the grid).
Field apply_nonlocal_naive(const CoefficientTable& table, const Field& field,
                           BoundaryKind boundary = BoundaryKind::Causal);

/// Same operator via FFT convolution: zero-padded linear convolution in causal
/// mode, circular convolution in periodic mode. Matches the naive path to
/// rounding (1e-12 relative).
Field apply_nonlocal_fft(const CoefficientTable& table, const Field& field,
                         BoundaryKind boundary = BoundaryKind::Causal);

/// Reusable linear convolution engine: out_j = sum_m kernel[m] * u_{j - (m + min_shift)}.
/// Built once per (kernel, field length, boundary); apply() is reentrant.
class StencilConvolver {
 public:
  StencilConvolver(std::vector<double> kernel, std::int64_t min_shift, std::size_t field_len,
                   BoundaryKind boundary);
  ~StencilConvolver();
  StencilConvolver(StencilConvolver&&) noexcept;
  StencilConvolver& operator=(StencilConvolver&&) noexcept;

  void apply(const std::vector<double>& in, std::vector<double>& out) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// A twice-differentiable test function handed to the continuous-operator
/// oracle, with a declared tail behaviour so the quadrature can close the
/// unbounded integral:
///   Decaying  - value/derivatives negligible beyond tail_radius of the origin
///   Sinusoid  - pure sinusoid of angular wavenumber tail_wavenumber
///   Affine    - exactly affine for large negative arguments
struct SmoothFunction {
  std::function<double(double)> value;
  std::function<double(double)> slope;
  std::function<double(double)> curvature;

  enum class Tail { Decaying, Sinusoid, Affine };
  Tail tail = Tail::Decaying;
  double tail_radius = 40.0;
  double tail_wavenumber = 0.0;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // achieved absolute error estimate
  bool converged = false;
};

/// Which of the two equivalent integral representations to integrate:
///   SecondDerivative - singular kernel xi^{-1/3} against phi''
///   Increment        - |z|^{-7/3} against phi(x+z) - phi(x) - phi'(x) z
enum class NonlocalForm { SecondDerivative, Increment };

/// High-accuracy continuous-operator oracle I[phi](x) by adaptive quadrature,
/// splitting off the endpoint singularity with a cubic substitution.
QuadratureResult continuous_nonlocal_reference(const SmoothFunction& phi, double x, double tol,
                                               NonlocalForm form = NonlocalForm::SecondDerivative);

/// Adaptive Gauss-Kronrod integration on [a, b] (used by the oracle; exposed
/// for test-side oracles).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol);

}  // namespace fowler
