#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "fowler/coefficients.hpp"
#include "fowler/params.hpp"

namespace fowler {

/// Symbol of the linearized equation in angular wavenumber k:
///   phi(k) = eps k^2 - (eta/2) Gamma(2/3) |k|^{4/3}
///            + i ( eta (sqrt(3)/2) Gamma(2/3) k |k|^{1/3} + v k ).
/// The continuous one-step factor is exp(-dt * phi(k)).
struct ContinuousSymbol {
  PhysicalParams params;
  std::complex<double> at(double k) const;
  double real_part(double k) const;
};

/// One-step continuous amplification in dimensionless form (theta = k*dx):
///   |G| = exp((Gamma(2/3)/2) Fo theta^{4/3} - (Df/2) theta^2),
///   arg G = -(Cr theta + (sqrt(3)/2) Gamma(2/3) Fo theta^{4/3}).
std::complex<double> continuous_amplification(const DimensionlessGroups& groups, double theta);

struct PeakThreshold {
  double k_star;      // most-amplified wavenumber
  double alpha_star;  // -min Re phi = -Re phi(k_star)
  double k0;          // threshold: Re phi(k0) = 0, growth below, decay above
};
PeakThreshold peak_and_threshold(const PhysicalParams& params);

/// theta_c solving (Df/2) theta^{2/3} = (Gamma(2/3)/2) Fo: |G_cont| > 1 exactly
/// on (0, theta_c).
double continuous_growth_cutoff(const DimensionlessGroups& groups);

// --- discrete amplification ------------------------------------------------

/// Closed-form limit weights of the nonlocal stencil at shifts -1, 0, +1
/// (exact zeta/telescoped values; the l >= 2 tail is the streamed series).
struct SeriesHead {
  double up, w0, w1;
};
SeriesHead series_head(DiscretizationKind kind);

/// Number of retained tail terms so the closed-form absolute tail bound
/// (telescoping for I1, zeta-tail integral for I2, ratio bound for I3) drops
/// below 1e-10.
std::int64_t spectral_cutoff(DiscretizationKind kind);

/// Sum of the dimensionless tail weights w_l, l = first..last inclusive
/// (compensated). Exposed for the mass/tail invariants.
double tail_weight_sum(DiscretizationKind kind, std::int64_t first, std::int64_t last);

/// g(theta) = sum_m a_m e^{-i m theta} of the infinite-memory scheme with the
/// nonlocal series truncated at the 1e-10 tail rule. theta in [0, 2*pi).
std::complex<double> discrete_amplification(DiscretizationKind kind,
                                            const DimensionlessGroups& groups, double theta);

/// g(theta) of the scheme sharing a mesh-truncated coefficient table with the
/// time stepper (the mode-oracle route).
std::complex<double> discrete_amplification(const CoefficientTable& table,
                                            const DimensionlessGroups& groups, double theta);

/// Amplification on the uniform grid theta_m = 2*pi*m/size, m = 0..size/2.
/// The group-independent tail series is folded once per (kind, size) and
/// cached; g assembly per sample is O(1).
class AmplificationGrid {
 public:
  AmplificationGrid(DiscretizationKind kind, int size);
  DiscretizationKind kind() const { return kind_; }
  int size() const { return size_; }
  double theta(int m) const;
  std::complex<double> tail(int m) const { return tail_[static_cast<std::size_t>(m)]; }
  std::complex<double> g(const DimensionlessGroups& groups, int m) const;

 private:
  DiscretizationKind kind_;
  int size_;
  std::vector<std::complex<double>> tail_;  // m = 0..size/2
};

/// Cached per (kind, size); reference stays valid for the process lifetime.
const AmplificationGrid& amplification_grid(DiscretizationKind kind, int size);

// --- stability predicates ----------------------------------------------------

/// Weight-mass factor lambda of the modified CFL number Cr + Df + lambda*Fo.
double cfl_weight(DiscretizationKind kind);
double cfl_mod(DiscretizationKind kind, const DimensionlessGroups& groups);

/// High-frequency sufficient condition mu * eta * dx^{2/3} <= 2 eps sin^2(theta0/2);
/// mu = 1 - 2^{-1/3} (I1), (4/9)(zeta(7/3) - 1 + zeta(4/3)) (I2), Gamma(2/3)/3 (I3).
double high_freq_coefficient(DiscretizationKind kind);
bool high_freq_condition(DiscretizationKind kind, const PhysicalParams& params, double dx,
                         double theta0);
/// Largest dx satisfying the condition above.
double high_freq_dx_bound(DiscretizationKind kind, const PhysicalParams& params, double theta0);

struct StabilityReport {
  double cfl_mod = 0.0;
  bool cfl_ok = false;       // modified CFL <= 1
  bool highfreq_ok = false;  // high-frequency condition at theta0
  bool verdict = false;      // sampled |g| < 1 on all of (theta0, pi]
  double theta0 = 0.0;
  double max_high_freq_gain = 0.0;
};

/// Samples |g| on the uniform grid points falling in (theta0, pi]; verdict is
/// the strict high-frequency decay of the definition, the condition booleans
/// are the sufficient criteria.
StabilityReport stability_verdict(DiscretizationKind kind, const DimensionlessGroups& groups,
                                  const PhysicalParams& params, const GridSpec& grid,
                                  double theta0, int samples);

// --- diagnostics --------------------------------------------------------------

/// Per-step phase delay Delta = 1 - theta_d / (Cr theta + (sqrt3/2)Gamma(2/3) Fo theta^{4/3}),
/// theta_d the (sign-adjusted principal) argument of g. Throws std::domain_error
/// when the exact phase denominator vanishes.
double phase_delay_of(std::complex<double> g, const DimensionlessGroups& groups, double theta);
double phase_delay(DiscretizationKind kind, const DimensionlessGroups& groups, double theta);

/// |g| / |G_cont|.
double dampening_ratio_of(std::complex<double> g, const DimensionlessGroups& groups, double theta);
double dampening_ratio(DiscretizationKind kind, const DimensionlessGroups& groups, double theta);

/// max over theta of |a + b e^{-i theta}| <= d, evaluated in closed form.
bool half_circle_bound(double a, double b, double d);

struct SpectralSample {
  double theta = 0.0;
  std::complex<double> g;
  std::complex<double> g_cont;
  double delta = 0.0;  // NaN where the phase denominator vanishes
  double ratio = 0.0;
  DiscretizationKind kind = DiscretizationKind::I1;
};

/// Uniform sweep over [0, pi] with `samples` intervals (samples+1 rows).
std::vector<SpectralSample> spectral_sweep(DiscretizationKind kind,
                                           const DimensionlessGroups& groups, int samples);

}  // namespace fowler
