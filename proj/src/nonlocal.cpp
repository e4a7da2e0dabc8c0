#include "fowler/nonlocal.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <stdexcept>

#include "fftw_util.hpp"

namespace fowler {

namespace {

std::vector<double> table_kernel(const CoefficientTable& t) {
  // kernel[i] = weight of shift (i - 1); index 0 is u_{j+1}
  std::vector<double> k(t.weights.size() + 1);
  k[0] = t.up_coeff;
  std::copy(t.weights.begin(), t.weights.end(), k.begin() + 1);
  return k;
}

}  // namespace

Field apply_nonlocal_naive(const CoefficientTable& table, const Field& field,
                           BoundaryKind boundary) {
  const std::int64_t n = static_cast<std::int64_t>(field.size());
  if (n < 2) throw std::invalid_argument("apply_nonlocal_naive: field length must be >= 2");
  Field out = field;
  const std::int64_t mmax = table.max_shift();
  const double scale = table.dx_scale;

  if (boundary == BoundaryKind::Causal) {
    for (std::int64_t j = 0; j < n; ++j) {
      double acc = 0.0;
      if (j + 1 < n) acc += table.up_coeff * field.values[static_cast<std::size_t>(j + 1)];
      const std::int64_t mhi = std::min(mmax, j);
      for (std::int64_t m = 0; m <= mhi; ++m)
        acc += table.weights[static_cast<std::size_t>(m)] *
               field.values[static_cast<std::size_t>(j - m)];
      out.values[static_cast<std::size_t>(j)] = scale * acc;
    }
  } else {
    // fold the kernel modulo the grid, then apply circularly
    std::vector<double> folded(static_cast<std::size_t>(n), 0.0);
    folded[static_cast<std::size_t>(((-1 % n) + n) % n)] += table.up_coeff;
    std::int64_t r = 0;
    for (std::int64_t m = 0; m <= mmax; ++m) {
      folded[static_cast<std::size_t>(r)] += table.weights[static_cast<std::size_t>(m)];
      if (++r == n) r = 0;
    }
    for (std::int64_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::int64_t m = 0; m < n; ++m) {
        std::int64_t idx = j - m;
        if (idx < 0) idx += n;
        acc += folded[static_cast<std::size_t>(m)] * field.values[static_cast<std::size_t>(idx)];
      }
      out.values[static_cast<std::size_t>(j)] = scale * acc;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// FFT convolution
// ---------------------------------------------------------------------------

struct StencilConvolver::Impl {
  std::int64_t min_shift = 0;
  std::size_t field_len = 0;
  BoundaryKind boundary = BoundaryKind::Causal;
  std::unique_ptr<detail::RealFft> fft;
  std::vector<std::complex<double>> kernel_hat;
  mutable std::vector<std::complex<double>> work_hat;
  mutable std::vector<double> work;
};

StencilConvolver::StencilConvolver(std::vector<double> kernel, std::int64_t min_shift,
                                   std::size_t field_len, BoundaryKind boundary)
    : impl_(std::make_unique<Impl>()) {
  impl_->min_shift = min_shift;
  impl_->field_len = field_len;
  impl_->boundary = boundary;

  if (boundary == BoundaryKind::Causal) {
    // linear convolution; pad so the shifted output window never wraps
    const std::size_t need = field_len + kernel.size();
    impl_->fft = std::make_unique<detail::RealFft>(detail::fft_friendly_size(need));
    std::vector<double> padded(impl_->fft->size(), 0.0);
    std::copy(kernel.begin(), kernel.end(), padded.begin());
    impl_->fft->forward(padded, impl_->kernel_hat);
  } else {
    const std::int64_t n = static_cast<std::int64_t>(field_len);
    impl_->fft = std::make_unique<detail::RealFft>(field_len);
    std::vector<double> folded(field_len, 0.0);
    for (std::size_t i = 0; i < kernel.size(); ++i) {
      std::int64_t shift = min_shift + static_cast<std::int64_t>(i);
      std::int64_t r = ((shift % n) + n) % n;
      folded[static_cast<std::size_t>(r)] += kernel[i];
    }
    impl_->fft->forward(folded, impl_->kernel_hat);
  }
}

StencilConvolver::~StencilConvolver() = default;
StencilConvolver::StencilConvolver(StencilConvolver&&) noexcept = default;
StencilConvolver& StencilConvolver::operator=(StencilConvolver&&) noexcept = default;

void StencilConvolver::apply(const std::vector<double>& in, std::vector<double>& out) const {
  if (in.size() != impl_->field_len)
    throw std::invalid_argument("StencilConvolver: field length mismatch");
  auto& fft = *impl_->fft;
  fft.forward(in, impl_->work_hat);
  for (std::size_t i = 0; i < impl_->work_hat.size(); ++i)
    impl_->work_hat[i] *= impl_->kernel_hat[i];
  fft.backward(impl_->work_hat, impl_->work);

  out.resize(impl_->field_len);
  if (impl_->boundary == BoundaryKind::Causal) {
    // kernel index i holds shift (min_shift + i), so out_j = conv[j - min_shift]
    const std::int64_t off = -impl_->min_shift;
    for (std::size_t j = 0; j < impl_->field_len; ++j)
      out[j] = impl_->work[j + static_cast<std::size_t>(off)];
  } else {
    std::copy(impl_->work.begin(), impl_->work.end(), out.begin());
  }
}

Field apply_nonlocal_fft(const CoefficientTable& table, const Field& field,
                         BoundaryKind boundary) {
  const std::int64_t n = static_cast<std::int64_t>(field.size());
  if (n < 2) throw std::invalid_argument("apply_nonlocal_fft: field length must be >= 2");
  StencilConvolver conv(table_kernel(table), -1, field.size(), boundary);
  Field out = field;
  conv.apply(field.values, out.values);
  for (double& v : out.values) v *= table.dx_scale;
  return out;
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod quadrature (15-point Kronrod, 7-point Gauss embedded)
// ---------------------------------------------------------------------------

namespace {

const double kXgk[8] = {0.991455371120812639206854697526329,
                        0.949107912342758524526189684047851,
                        0.864864423359769072789712788640926,
                        0.741531185599394439863864773280788,
                        0.586087235467691130294144838258730,
                        0.405845151377397166906606412076961,
                        0.207784955007898467600689403773245,
                        0.000000000000000000000000000000000};
const double kWgk[8] = {0.022935322010529224963732008058970,
                        0.063092092629978553290700663189204,
                        0.104790010322250183839876322541518,
                        0.140653259715525918745189590510238,
                        0.169004726639267902826583426598550,
                        0.190350578064785409913256402421014,
                        0.204432940075298892414161999234649,
                        0.209482141084727828012999174891714};
const double kWg[4] = {0.129484966168869693270611432679082,
                       0.279705391489276667901467771423780,
                       0.381830050505118944950369775488975,
                       0.417959183673469387755102040816327};

struct PanelResult {
  double integral;
  double error;
};

PanelResult gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fc = f(c);
  double result_g = fc * kWg[3];
  double result_k = fc * kWgk[7];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    result_k += kWgk[i] * (f1 + f2);
    if (i % 2 == 1) result_g += kWg[i / 2] * (f1 + f2);
  }
  result_g *= h;
  result_k *= h;
  return {result_k, std::fabs(result_k - result_g)};
}

struct Interval {
  double a, b, integral, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol) {
  QuadratureResult r;
  if (a == b) {
    r.converged = true;
    return r;
  }
  std::priority_queue<Interval> heap;
  auto first = gauss_kronrod(f, a, b);
  heap.push({a, b, first.integral, first.error});
  double total = first.integral;
  double total_err = first.error;
  const int max_panels = 4000;
  int panels = 1;
  while (total_err > tol && panels < max_panels) {
    Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval exhausted by rounding
      heap.push(worst);
      break;
    }
    auto left = gauss_kronrod(f, worst.a, mid);
    auto right = gauss_kronrod(f, mid, worst.b);
    total += left.integral + right.integral - worst.integral;
    total_err += left.error + right.error - worst.error;
    heap.push({worst.a, mid, left.integral, left.error});
    heap.push({mid, worst.b, right.integral, right.error});
    panels += 1;
  }
  r.value = total;
  r.error = total_err;
  r.converged = total_err <= tol;
  return r;
}

// ---------------------------------------------------------------------------
// Continuous-operator oracle
// ---------------------------------------------------------------------------

namespace {

// Asymptotic tail integral C(mu, k, R) = int_R^inf xi^{-mu} e^{-i k xi} dxi by
// repeated integration by parts; valid for k R >> mu. Returns the sum and an
// error estimate (first omitted term).
std::complex<double> oscillatory_tail(double mu, double k, double r, double* err) {
  const std::complex<double> ik(0.0, k);
  const std::complex<double> phase = std::polar(1.0, -k * r);
  std::complex<double> sum = 0.0;
  double coef = 1.0;                 // (mu)_j
  double rp = std::pow(r, -mu);      // R^{-mu-j}
  std::complex<double> ik_pow = ik;  // (ik)^{j+1}
  double sign = 1.0;
  double last_mag = 1e300;
  *err = 0.0;
  for (int j = 0; j < 24; ++j) {
    const std::complex<double> term = sign * coef * rp / ik_pow * phase;
    const double mag = std::abs(term);
    if (mag > last_mag) {  // asymptotic series started diverging
      *err = mag;
      break;
    }
    sum += term;
    last_mag = mag;
    *err = mag * (mu + j) / (k * r);  // next-term estimate
    if (*err < 1e-18) break;
    coef *= (mu + j);
    rp /= r;
    ik_pow *= ik;
    sign = -sign;
  }
  return sum;
}

// complex envelope Z e^{iky} of a sinusoid recovered from point values
std::complex<double> sinusoid_envelope(const SmoothFunction& phi, double y, double k) {
  return {phi.value(y), -phi.slope(y) / k};
}

double cut_radius(const SmoothFunction& phi, double x) {
  switch (phi.tail) {
    case SmoothFunction::Tail::Decaying:
      return std::max(1.0, std::fabs(x) + phi.tail_radius);
    case SmoothFunction::Tail::Sinusoid:
      return std::max({1.0, std::fabs(x) + 1.0, 100.0 / phi.tail_wavenumber});
    case SmoothFunction::Tail::Affine:
      return std::max(1.0, std::fabs(x) + 2.0);
  }
  return 1.0;
}

}  // namespace

QuadratureResult continuous_nonlocal_reference(const SmoothFunction& phi, double x, double tol,
                                               NonlocalForm form) {
  if (!(tol > 0.0)) throw std::invalid_argument("continuous_nonlocal_reference: tol must be > 0");
  if (phi.tail == SmoothFunction::Tail::Sinusoid && !(phi.tail_wavenumber > 0.0))
    throw std::invalid_argument("continuous_nonlocal_reference: sinusoid needs a wavenumber");

  const double r = cut_radius(phi, x);
  QuadratureResult out;

  if (form == NonlocalForm::SecondDerivative) {
    // int_0^inf xi^{-1/3} phi''(x - xi) dxi ; head via xi = s^3
    auto head = integrate_adaptive([&](double s) { return 3.0 * s * phi.curvature(x - s * s * s); },
                                   0.0, 1.0, tol / 4.0);
    auto mid = integrate_adaptive(
        [&](double xi) { return std::cbrt(1.0 / xi) * phi.curvature(x - xi); }, 1.0, r, tol / 4.0);
    double tail = 0.0;
    double tail_err = 0.0;
    if (phi.tail == SmoothFunction::Tail::Sinusoid) {
      const double k = phi.tail_wavenumber;
      const std::complex<double> env =
          sinusoid_envelope(phi, x - r, k) * std::polar(1.0, k * r);  // Z e^{ikx}
      const std::complex<double> c = oscillatory_tail(1.0 / 3.0, k, r, &tail_err);
      tail = -k * k * (env * c).real();
      tail_err *= k * k * std::abs(env);
    }
    out.value = head.value + mid.value + tail;
    out.error = head.error + mid.error + tail_err;
    out.converged = head.converged && mid.converged && out.error <= tol;
    return out;
  }

  // Increment form, scaled by 4/9:
  //   int_0^1 split with the exact inner kernel (t = s^3 substitution),
  //   adaptive middle, closed-form tail plus the declared phi tail.
  auto head = integrate_adaptive(
      [&](double s) {
        const double s2 = s * s;
        const double s5 = s2 * s2 * s;
        return phi.curvature(x - s * s2) * (6.75 * s - 9.0 * s2 + 2.25 * s5);
      },
      0.0, 1.0, tol);
  const double phix = phi.value(x);
  const double dphix = phi.slope(x);
  auto mid = integrate_adaptive(
      [&](double z) {
        return (phi.value(x - z) - phix + dphix * z) * std::pow(z, -7.0 / 3.0);
      },
      1.0, r, tol);
  const double r13 = std::cbrt(1.0 / r);
  const double r43 = r13 / r;  // R^{-4/3}
  double tail = -phix * 0.75 * r43 + 3.0 * dphix * r13;
  double tail_err = 0.0;
  switch (phi.tail) {
    case SmoothFunction::Tail::Decaying:
      break;  // phi mass beyond R is negligible by contract
    case SmoothFunction::Tail::Sinusoid: {
      const double k = phi.tail_wavenumber;
      const std::complex<double> env = sinusoid_envelope(phi, x - r, k) * std::polar(1.0, k * r);
      const std::complex<double> c = oscillatory_tail(7.0 / 3.0, k, r, &tail_err);
      tail += (env * c).real();
      tail_err *= std::abs(env);
      break;
    }
    case SmoothFunction::Tail::Affine:
      tail += phi.value(x - r) * 0.75 * r43 - phi.slope(x - r) * 2.25 * r13;
      break;
  }
  out.value = (4.0 / 9.0) * (head.value + mid.value + tail);
  out.error = (4.0 / 9.0) * (head.error + mid.error + tail_err);
  out.converged = head.converged && mid.converged && out.error <= tol;
  return out;
}

}  // namespace fowler
