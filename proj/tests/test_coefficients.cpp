#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fowler/coefficients.hpp"
#include "fowler/spectral.hpp"

using namespace fowler;

namespace {
GridSpec unit_grid(std::int64_t n = 64) { return GridSpec{1.0, 0.5, n, 1.0}; }
}  // namespace

TEST_CASE("single-term quadrature table is one second difference at shift 1") {
  const auto t = build_coefficients(DiscretizationKind::I1, TruncationPolicy::of_count(1),
                                    unit_grid());
  REQUIRE(t.weights.size() == 3);
  CHECK(t.up_coeff == 0.0);
  CHECK(t.weights[0] == doctest::Approx(1.0));
  CHECK(t.weights[1] == doctest::Approx(-2.0));
  CHECK(t.weights[2] == doctest::Approx(1.0));
}

TEST_CASE("increment-form u_{j+1} coefficient approaches (4/9)(1/2)zeta(4/3)") {
  const double target = (2.0 / 9.0) * constants().zeta_four_thirds;
  const auto t = build_coefficients(DiscretizationKind::I2,
                                    TruncationPolicy::of_count(2000000), unit_grid());
  // partial zeta(4/3) sum converges like 3 A^{-1/3}
  CHECK(t.up_coeff == doctest::Approx(target).epsilon(1e-2));
  CHECK(t.up_coeff < target);
  // dx^{-4/3} scaling carried by the table scale
  GridSpec g{0.05, 0.001, 64, 1.0};
  const auto t2 = build_coefficients(DiscretizationKind::I2, TruncationPolicy::of_count(100), g);
  CHECK(t2.dx_scale == doctest::Approx(std::pow(0.05, -4.0 / 3.0)).epsilon(1e-14));
}

TEST_CASE("Gruenwald weights by hand for the first shifts") {
  const double g23 = constants().gamma_two_thirds;
  const auto t = build_coefficients(DiscretizationKind::I3, TruncationPolicy::of_count(3),
                                    unit_grid());
  REQUIRE(t.weights.size() == 4);
  CHECK(t.weights[0] == doctest::Approx(g23).epsilon(1e-14));
  CHECK(t.weights[1] == doctest::Approx(-4.0 / 3.0 * g23).epsilon(1e-14));
  CHECK(t.weights[2] == doctest::Approx(2.0 / 9.0 * g23).epsilon(1e-14));
  CHECK(t.weights[3] == doctest::Approx(4.0 / 81.0 * g23).epsilon(1e-14));
}

TEST_CASE("Gruenwald recurrence matches the binomial formula") {
  CHECK(grunwald_weight(0) == 1.0);
  CHECK(grunwald_weight(1) == doctest::Approx(-4.0 / 3.0).epsilon(1e-15));
  for (std::int64_t l = 2; l <= 40; ++l) {
    const double via_gamma = std::exp(std::lgamma(static_cast<double>(l) - 4.0 / 3.0) -
                                      std::lgamma(static_cast<double>(l) + 1.0)) /
                             std::tgamma(-4.0 / 3.0);
    CHECK(grunwald_weight(l) == doctest::Approx(via_gamma).epsilon(1e-12));
    CHECK(grunwald_weight(l) > 0.0);  // positive from shift 2 on
  }
}

TEST_CASE("quadrature-form weights are nonnegative from shift 2 on") {
  const auto t = build_coefficients(DiscretizationKind::I1, TruncationPolicy::of_count(500),
                                    unit_grid());
  for (std::size_t m = 2; m + 2 < t.weights.size(); ++m) CHECK(t.weights[m] >= 0.0);
}

TEST_CASE("telescoped tail mass sums to 1 - 2^(-1/3)") {
  const double target = 1.0 - std::pow(2.0, -1.0 / 3.0);
  // closed telescoping of the retained terms plus the closed-form remainder
  const std::int64_t n = 200000;
  const double retained = tail_weight_sum(DiscretizationKind::I1, 2, n);
  const double remainder = 1.0 / std::cbrt(static_cast<double>(n)) -
                           1.0 / std::cbrt(static_cast<double>(n + 1));
  CHECK(retained + remainder == doctest::Approx(target).epsilon(1e-10));
}

TEST_CASE("telescoped table equals the term-by-term construction") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::int64_t count : {1, 2, 3, 17, 256}) {
    const auto direct = build_coefficients(DiscretizationKind::I1,
                                           TruncationPolicy::of_count(count), unit_grid(512));
    const auto tele = telescoped_coefficients_i1(count, 1.0);
    REQUIRE(direct.weights.size() == tele.weights.size());
    for (std::size_t m = 0; m < direct.weights.size(); ++m)
      CHECK(direct.weights[m] == doctest::Approx(tele.weights[m]).epsilon(1e-13));
    // applied to a random field the two agree to re-association accuracy
    double a = 0.0, b = 0.0;
    std::vector<double> field(direct.weights.size());
    for (auto& f : field) f = u(rng);
    for (std::size_t m = 0; m < field.size(); ++m) {
      a += direct.weights[m] * field[m];
      b += tele.weights[m] * field[m];
    }
    CHECK(a == doctest::Approx(b).epsilon(1e-13));
  }
}

TEST_CASE("mesh-truncated tables annihilate constants") {
  // I1: every term is a second difference, so the row sums to zero exactly;
  // I2: each term carries u_{j-l} - u_j + l*(u_{j+1}-u_{j-1})/2, zero on constants
  for (auto kind : {DiscretizationKind::I1, DiscretizationKind::I2}) {
    for (std::int64_t count : {1, 7, 100}) {
      const auto t = build_coefficients(kind, TruncationPolicy::of_count(count), unit_grid());
      CHECK(std::fabs(t.row_sum()) < 1e-13);
    }
  }
  // I3 truncation leaves the closed-form binomial residue
  for (std::int64_t count : {4, 32, 1000}) {
    const auto t = build_coefficients(DiscretizationKind::I3, TruncationPolicy::of_count(count),
                                      unit_grid());
    const double residue = constants().gamma_two_thirds * grunwald_partial_sum(count);
    CHECK(t.row_sum() == doctest::Approx(residue).epsilon(1e-11));
  }
}

TEST_CASE("binomial partial-sum identity") {
  // running sum of the weights against the closed form
  double acc = 0.0;
  for (std::int64_t l = 0; l <= 60; ++l) {
    acc += grunwald_weight(l);
    CHECK(acc == doctest::Approx(grunwald_partial_sum(l)).epsilon(1e-12));
  }
}

TEST_CASE("truncation policy") {
  CHECK(TruncationPolicy::of_length(16.0).count_for(0.01) == 1600);
  CHECK(TruncationPolicy::of_length(1.0).count_for(0.3) == 3);
  CHECK(TruncationPolicy::of_count(42).count_for(0.123) == 42);
  CHECK_THROWS_AS(TruncationPolicy::of_length(0.05).count_for(0.1), std::invalid_argument);
  CHECK_THROWS_AS(TruncationPolicy::of_count(0).count_for(0.1), std::invalid_argument);
}

TEST_CASE("step row conserves constants and carries the upwind switch") {
  const auto table = build_coefficients(DiscretizationKind::I1, TruncationPolicy::of_count(64),
                                        unit_grid());
  const DimensionlessGroups g{0.3, 0.2, 0.1};
  auto row = step_row(table, g);
  double sum = 0.0;
  for (double a : row) sum += a;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));

  const DimensionlessGroups gneg{-0.3, 0.2, 0.1};
  auto row_neg = step_row(table, gneg);
  sum = 0.0;
  for (double a : row_neg) sum += a;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
  // downwind: the u_{j+1} slot picks up |cr|
  CHECK(row_neg[0] == doctest::Approx(row[0] + 0.3).epsilon(1e-13));
}

TEST_CASE("kind names round-trip") {
  for (auto kind : {DiscretizationKind::I1, DiscretizationKind::I2, DiscretizationKind::I3})
    CHECK(parse_kind(to_string(kind)) == kind);
  CHECK_THROWS_AS(parse_kind("i4"), std::invalid_argument);
}
