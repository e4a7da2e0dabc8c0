#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fowler/experiments.hpp"
#include "fowler/nonlocal.hpp"
#include "fowler/params.hpp"

using namespace fowler;

namespace {

GridSpec grid_of(std::int64_t n, double dx = 1.0) { return GridSpec{dx, 0.5, n, 1.0}; }

Field random_field(const GridSpec& g, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Field f = make_field(g);
  for (auto& v : f.values) v = u(rng);
  return f;
}

const double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("constant fields are annihilated away from the causal edge") {
  const auto g = grid_of(128, 0.25);
  const auto t = build_coefficients(DiscretizationKind::I1, TruncationPolicy::of_count(20), g);
  Field f = make_field(g, 3.7);
  const Field out = apply_nonlocal_naive(t, f);
  // interior: full stencil support on the left, one cell of look-ahead on the right
  for (std::size_t j = 22; j + 1 < f.size(); ++j)
    CHECK(std::fabs(out.values[j]) < 1e-12);
}

TEST_CASE("affine fields are annihilated by the increment form on interior points") {
  const auto g = grid_of(256, 0.1);
  const auto t = build_coefficients(DiscretizationKind::I2, TruncationPolicy::of_count(40), g);
  Field f = make_field(g);
  for (std::size_t j = 0; j < f.size(); ++j)
    f.values[j] = 0.3 + 1.7 * static_cast<double>(j) * g.dx;
  const Field out = apply_nonlocal_naive(t, f);
  for (std::size_t j = 41; j + 1 < f.size(); ++j)
    CHECK(std::fabs(out.values[j]) < 1e-10);
}

TEST_CASE("a unit spike reproduces the weight column") {
  const auto g = grid_of(64);
  const auto t = build_coefficients(DiscretizationKind::I3, TruncationPolicy::of_count(30), g);
  Field f = make_field(g);
  const std::size_t k = 20;
  f.values[k] = 1.0;
  const Field out = apply_nonlocal_naive(t, f);
  // column k of the operator: out_{k+m} = w_m, with the look-ahead slot at k-1
  for (std::int64_t m = 0; m <= t.max_shift(); ++m) {
    const std::size_t j = k + static_cast<std::size_t>(m);
    if (j < f.size())
      CHECK(out.values[j] ==
            doctest::Approx(t.weights[static_cast<std::size_t>(m)]).epsilon(1e-14));
  }
  CHECK(out.values[k - 1] == doctest::Approx(t.up_coeff).epsilon(1e-14));
}

TEST_CASE("fft path matches the naive path") {
  for (auto kind : {DiscretizationKind::I1, DiscretizationKind::I2, DiscretizationKind::I3}) {
    for (auto boundary : {BoundaryKind::Causal, BoundaryKind::Periodic}) {
      const auto g = grid_of(64, 0.37);
      const auto t = build_coefficients(kind, TruncationPolicy::of_count(32), g);
      const Field f = random_field(g, 1234 + static_cast<int>(kind));
      const Field a = apply_nonlocal_naive(t, f, boundary);
      const Field b = apply_nonlocal_fft(t, f, boundary);
      double scale = 0.0, dev = 0.0;
      for (std::size_t j = 0; j < f.size(); ++j) {
        scale = std::max(scale, std::fabs(a.values[j]));
        dev = std::max(dev, std::fabs(a.values[j] - b.values[j]));
      }
      CHECK(dev <= 1e-12 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("fft path on zero and spike fields") {
  const auto g = grid_of(96);
  const auto t = build_coefficients(DiscretizationKind::I1, TruncationPolicy::of_count(48), g);
  Field zero = make_field(g);
  const Field z = apply_nonlocal_fft(t, zero);
  for (double v : z.values) CHECK(std::fabs(v) < 1e-15);

  Field spike = make_field(g);
  spike.values[40] = 1.0;
  const Field a = apply_nonlocal_naive(t, spike);
  const Field b = apply_nonlocal_fft(t, spike);
  for (std::size_t j = 0; j < spike.size(); ++j)
    CHECK(b.values[j] == doctest::Approx(a.values[j]).epsilon(1e-12));
}

// --- continuous-operator oracle ---------------------------------------------

TEST_CASE("oracle vanishes on affine functions") {
  SmoothFunction phi;
  phi.value = [](double y) { return 2.0 - 0.7 * y; };
  phi.slope = [](double) { return -0.7; };
  phi.curvature = [](double) { return 0.0; };
  phi.tail = SmoothFunction::Tail::Affine;
  for (auto form : {NonlocalForm::SecondDerivative, NonlocalForm::Increment}) {
    const auto q = continuous_nonlocal_reference(phi, 1.3, 1e-11, form);
    CHECK(q.converged);
    CHECK(std::fabs(q.value) < 1e-10);
  }
}

TEST_CASE("oracle reproduces the sinusoid symbol through a phase shift") {
  // I[cos(k.)](x) = -(1/2)G(2/3) k^{4/3} cos(kx) - (sqrt3/2)G(2/3) k^{4/3} sin(kx)
  const double k = 2.0 * kPi * 0.75;
  SmoothFunction phi;
  phi.value = [=](double y) { return std::cos(k * y); };
  phi.slope = [=](double y) { return -k * std::sin(k * y); };
  phi.curvature = [=](double y) { return -k * k * std::cos(k * y); };
  phi.tail = SmoothFunction::Tail::Sinusoid;
  phi.tail_wavenumber = k;

  const double g23 = constants().gamma_two_thirds;
  const double k43 = std::pow(k, 4.0 / 3.0);
  const double re = -0.5 * g23 * k43;                    // symbol real part
  const double im = (std::sqrt(3.0) / 2.0) * g23 * k43;  // symbol imaginary part

  // at x = 0 the cosine response reads off the real part
  auto q0 = continuous_nonlocal_reference(phi, 0.0, 1e-9);
  CHECK(q0.converged);
  CHECK(q0.value == doctest::Approx(re).epsilon(1e-7));
  // a quarter-period shift exposes the imaginary part
  auto q1 = continuous_nonlocal_reference(phi, -kPi / (2.0 * k), 1e-9);
  CHECK(q1.converged);
  CHECK(q1.value == doctest::Approx(im).epsilon(1e-7));
  // increment form agrees
  auto q2 = continuous_nonlocal_reference(phi, 0.0, 1e-9, NonlocalForm::Increment);
  CHECK(q2.converged);
  CHECK(q2.value == doctest::Approx(re).epsilon(1e-7));
}

TEST_CASE("both oracle forms agree on a Gaussian") {
  const SmoothFunction phi = gaussian_profile(2.0, 1.0);
  const auto a = continuous_nonlocal_reference(phi, 0.0, 1e-11, NonlocalForm::SecondDerivative);
  const auto b = continuous_nonlocal_reference(phi, 0.0, 1e-11, NonlocalForm::Increment);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-10));

  // frozen reference at x = 2.5 (computed with an independent quadrature stack)
  const auto c = continuous_nonlocal_reference(phi, 2.5, 1e-12);
  REQUIRE(c.converged);
  CHECK(c.value == doctest::Approx(-1.5950535659205805).epsilon(1e-9));
  const auto d = continuous_nonlocal_reference(phi, 2.5, 1e-12, NonlocalForm::Increment);
  REQUIRE(d.converged);
  CHECK(d.value == doctest::Approx(-1.5950535659205805).epsilon(1e-9));
}

TEST_CASE("discrete operator converges to the oracle at order about 2/3") {
  const SmoothFunction phi = gaussian_profile(2.0, 1.0);
  const double x0 = 2.5;
  const auto exact = continuous_nonlocal_reference(phi, x0, 1e-12);
  REQUIRE(exact.converged);

  std::vector<double> hs{0.08, 0.04, 0.02, 0.01};
  std::vector<double> errs;
  for (double h : hs) {
    const std::int64_t count = TruncationPolicy::of_length(16.0).count_for(h);
    const auto t = build_coefficients(DiscretizationKind::I1, TruncationPolicy::of_count(count),
                                      GridSpec{h, 0.5 * h, count + 2, 1.0});
    double acc = t.up_coeff * phi.value(x0 + h);
    for (std::int64_t m = 0; m <= t.max_shift(); ++m)
      acc += t.weights[static_cast<std::size_t>(m)] * phi.value(x0 - static_cast<double>(m) * h);
    errs.push_back(std::fabs(acc * t.dx_scale - exact.value));
  }
  const double slope = fit_loglog_slope(hs, errs);
  CHECK(slope > 0.5);
  CHECK(slope < 0.85);
}

TEST_CASE("non-convergent quadrature is reported, not hidden") {
  // absurdly tight tolerance exhausts the panel budget
  SmoothFunction phi = gaussian_profile(0.0, 1.0);
  const auto q = continuous_nonlocal_reference(phi, 0.2, 1e-300);
  CHECK_FALSE(q.converged);
  CHECK(q.error > 0.0);
}

TEST_CASE("short fields are rejected") {
  GridSpec g{1.0, 0.5, 2, 1.0};
  Field f = make_field(g);
  f.values.resize(1);
  const auto t = build_coefficients(DiscretizationKind::I1, TruncationPolicy::of_count(4), g);
  CHECK_THROWS_AS(apply_nonlocal_naive(t, f), std::invalid_argument);
  CHECK_THROWS_AS(apply_nonlocal_fft(t, f), std::invalid_argument);
}
