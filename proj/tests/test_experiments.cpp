#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fowler/experiments.hpp"

using namespace fowler;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("table reproduction: spot cells and internal consistency") {
  const auto t1 = reproduce_table(1);
  REQUIRE(t1.size() == 12);
  // Cr=0.2 block at theta = pi/2
  const TableRow& r = t1[2];
  CHECK(r.theta == doctest::Approx(kPi / 2));
  CHECK(r.delta1 == doctest::Approx(-0.0715).epsilon(5e-3));
  CHECK(r.ratio1 == doctest::Approx(0.6824).epsilon(5e-3));
  // Cr=0.9 block carries an unstable CFL column
  CHECK(t1[8].cfl1 == doctest::Approx(1.2206).epsilon(1e-3));

  const auto t2 = reproduce_table(2);
  REQUIRE(t2.size() == 12);
  CHECK(t2[11].ratio1 == doctest::Approx(5.5254).epsilon(5e-3));
  CHECK(t2[11].ratio2 == doctest::Approx(3.5099).epsilon(5e-3));

  const auto t3 = reproduce_table(3);
  REQUIRE(t3.size() == 15);
  for (const TableRow& row : t3) {
    CHECK(row.ratio1 == doctest::Approx(row.abs_g1 / row.abs_gcont).epsilon(1e-9));
    CHECK(row.ratio2 == doctest::Approx(row.abs_g2 / row.abs_gcont).epsilon(1e-9));
    if (row.cfl1 < 1.0) {
      CHECK(row.ratio1 > 0.0);
      CHECK(std::isfinite(row.ratio1));
    }
    if (row.theta == doctest::Approx(kPi))
      CHECK(row.delta2 == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK(t3[14].abs_g1 == doctest::Approx(1.6583).epsilon(5e-3));
  CHECK(t3[14].abs_gcont == doctest::Approx(6.1519).epsilon(2e-3));

  CHECK_THROWS_AS(reproduce_table(4), std::invalid_argument);
}

TEST_CASE("mode oracle at small sizes") {
  const DimensionlessGroups g{0.2, 0.2, 0.1};
  const auto pol = TruncationPolicy::of_count(200);
  CHECK(mode_oracle(DiscretizationKind::I1, g, 5, 0, 64, pol) == 0.0);
  CHECK(mode_oracle(DiscretizationKind::I1, g, 5, 50, 64, pol) < 1e-10);
  CHECK(mode_oracle(DiscretizationKind::I2, g, 32, 50, 64, pol) < 1e-10);
  CHECK(mode_oracle(DiscretizationKind::I3, g, 9, 25, 64, pol) < 1e-10);
}

TEST_CASE("convergence study on a coarse ladder") {
  ConvergenceConfig cc;  // defaults: v=eps=1, eta=1.5, bump on [0.75, 2.25]
  cc.dx_list = {0.2, 0.1, 0.05};
  cc.t_final = 0.1;
  const auto res = convergence_study(cc);
  REQUIRE(res.valid);
  REQUIRE(res.e1_values.size() == 3);
  for (std::size_t i = 1; i < res.e1_values.size(); ++i)
    CHECK(res.e1_values[i] < res.e1_values[i - 1]);
  CHECK(res.fitted_slope > 0.4);
  CHECK(res.fitted_slope < 1.0);

  SUBCASE("slope is invariant under the convolution path") {
    ConvergenceConfig naive = cc;
    naive.use_fft = false;
    const auto res2 = convergence_study(naive);
    REQUIRE(res2.valid);
    CHECK(std::fabs(res2.fitted_slope - res.fitted_slope) < 0.05);
  }
}

TEST_CASE("degenerate coefficients give identical refinements") {
  ConvergenceConfig cc;
  cc.params = {0.0, 0.0, 0.0};  // identity stepping
  cc.dx_list = {0.2, 0.1, 0.05};
  cc.t_final = 0.05;
  cc.use_fft = false;  // the naive identity is bit-exact
  const auto res = convergence_study(cc);
  REQUIRE(res.valid);
  for (double e : res.e1_values) CHECK(e == 0.0);
  CHECK(res.message == "identical solutions at every refinement");
}

TEST_CASE("convergence study input validation") {
  ConvergenceConfig cc;
  cc.dx_list = {0.1, 0.2, 0.05};
  CHECK_THROWS_AS(convergence_study(cc), std::invalid_argument);
  cc.dx_list = {0.1, 0.05};
  CHECK_THROWS_AS(convergence_study(cc), std::invalid_argument);
}

TEST_CASE("truncation study: affine profile leaves only advection/time error") {
  TruncationStudyConfig tc;
  SmoothFunction phi;
  phi.value = [](double y) { return 0.4 + 0.2 * y; };
  phi.slope = [](double) { return 0.2; };
  phi.curvature = [](double) { return 0.0; };
  phi.tail = SmoothFunction::Tail::Affine;
  tc.phi = phi;
  tc.kind = DiscretizationKind::I1;
  tc.x0 = 2.0;
  tc.dx_list = {0.08, 0.04};
  tc.memory_length = 8.0;
  const auto res = truncation_order_study(tc);
  // affine data: nonlocal and Laplacian discretizations are exact, the upwind
  // advection of an affine function is exact too; only the time term remains,
  // (1 - e^{-dt})/dt - 1 ~ dt/2, i.e. 0.4 h^2 for this profile at x0 = 2
  for (std::size_t i = 0; i < res.dx_values.size(); ++i) {
    const double h = res.dx_values[i];
    CHECK(res.error_values[i] < 0.45 * h * h);
    CHECK(res.error_values[i] > 0.35 * h * h);
  }
}

TEST_CASE("truncation study: Gaussian exposes the 2/3 order") {
  TruncationStudyConfig tc;
  tc.phi = gaussian_profile(2.0, 1.0);
  tc.kind = DiscretizationKind::I1;
  const auto res = truncation_order_study(tc);
  CHECK(res.exact_nonlocal == doctest::Approx(-1.5950535659205805).epsilon(1e-9));
  CHECK(res.fitted_order > 0.47);
  CHECK(res.fitted_order < 0.87);
  // halving dx scales the error by about 2^{2/3}
  for (std::size_t i = 0; i + 1 < res.error_values.size(); ++i) {
    const double ratio = res.error_values[i] / res.error_values[i + 1];
    CHECK(ratio > 1.27);
    CHECK(ratio < 1.90);
  }
}

TEST_CASE("shrinking the memory grows the error") {
  TruncationStudyConfig tc;
  tc.phi = gaussian_profile(2.0, 1.0);
  tc.kind = DiscretizationKind::I2;
  const auto errs2 = truncation_memory_sweep(tc, 0.02, {2.0, 1.0, 0.5});
  CHECK(errs2[0] < errs2[1]);
  CHECK(errs2[1] < errs2[2]);

  tc.kind = DiscretizationKind::I1;
  const auto errs1 = truncation_memory_sweep(tc, 0.02, {4.0, 2.0, 1.0});
  CHECK(errs1[0] < errs1[1]);
  CHECK(errs1[1] < errs1[2]);
}

TEST_CASE("log-log slope fitting") {
  std::vector<double> x{1.0, 0.5, 0.25, 0.125};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 0.66));
  CHECK(fit_loglog_slope(x, y) == doctest::Approx(0.66).epsilon(1e-12));
  CHECK_THROWS_AS(fit_loglog_slope({1.0}, {2.0}), std::invalid_argument);
}
