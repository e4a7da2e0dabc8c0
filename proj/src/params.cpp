#include "fowler/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fowler {

void PhysicalParams::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("PhysicalParams: epsilon must be > 0");
  if (!(eta > 0.0) || !std::isfinite(eta))
    throw std::invalid_argument("PhysicalParams: eta must be > 0");
  if (!std::isfinite(v)) throw std::invalid_argument("PhysicalParams: v must be finite");
}

void GridSpec::validate() const {
  if (!(dx > 0.0) || !std::isfinite(dx))
    throw std::invalid_argument("GridSpec: dx must be > 0");
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::invalid_argument("GridSpec: dt must be > 0");
  if (n_cells <= 1) throw std::invalid_argument("GridSpec: n_cells must be > 1");
  if (!(t_final > 0.0) || dt > t_final)
    throw std::invalid_argument("GridSpec: need 0 < dt <= t_final");
}

DimensionlessGroups derive_groups(const PhysicalParams& params, const GridSpec& grid) {
  // only the grid is gated here; degenerate coefficients (eps or eta zero) are
  // legitimate inputs for reduced schemes
  if (!std::isfinite(params.v) || !std::isfinite(params.epsilon) || !std::isfinite(params.eta))
    throw std::invalid_argument("derive_groups: parameters must be finite");
  grid.validate();
  DimensionlessGroups g;
  g.cr = params.v * grid.dt / grid.dx;
  g.df = 2.0 * params.epsilon * grid.dt / (grid.dx * grid.dx);
  g.fo = params.eta * grid.dt / std::pow(grid.dx, 4.0 / 3.0);
  return g;
}

double riemann_zeta(double s) {
  if (!(s > 1.0)) throw std::invalid_argument("riemann_zeta: need s > 1");
  const int n_direct = 24;
  double sum = 0.0;
  for (int n = 1; n <= n_direct; ++n) sum += std::pow(n, -s);
  const double nd = static_cast<double>(n_direct);
  const double nds = std::pow(nd, -s);
  sum += nd * nds / (s - 1.0);  // integral tail
  sum -= 0.5 * nds;
  // Bernoulli corrections B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
  static const double b_over_fact[] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0,
                                       -1.0 / 1209600.0, 1.0 / 47900160.0};
  double rising = s;        // s(s+1)...(s+2k-2)
  double power = nds / nd;  // N^{-s-2k+1}
  for (int k = 0; k < 5; ++k) {
    sum += b_over_fact[k] * rising * power;
    rising *= (s + 2.0 * k + 1.0) * (s + 2.0 * k + 2.0);
    power /= nd * nd;
  }
  return sum;
}

Constants evaluate_constants() {
  Constants c{};
  c.gamma_two_thirds = std::tgamma(2.0 / 3.0);
  c.zeta_four_thirds = riemann_zeta(4.0 / 3.0);
  c.zeta_seven_thirds = riemann_zeta(7.0 / 3.0);
  const double pi = 3.14159265358979323846;
  c.a_i = 2.0 * pi * pi * c.gamma_two_thirds;
  c.b_i = 2.0 * pi * pi * std::sqrt(3.0) * c.gamma_two_thirds;
  return c;
}

const Constants& constants() {
  static const Constants c = evaluate_constants();
  return c;
}

}  // namespace fowler
