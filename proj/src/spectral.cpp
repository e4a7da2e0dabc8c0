#include "fowler/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "fftw_util.hpp"
#include "fowler/parallel.hpp"

namespace fowler {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTailTarget = 1e-10;

double inv_cbrt(std::int64_t l) { return 1.0 / std::cbrt(static_cast<double>(l)); }

double inv_pow73(std::int64_t l) {
  const double c = inv_cbrt(l);
  const double c2 = c * c;
  const double c4 = c2 * c2;
  return c4 * c2 * c;
}

// Gruenwald weight (Gamma(2/3) folded in) at index l >= 2, by direct formula;
// used to seed chunk-local recurrences.
double grunwald_tail_weight_direct(std::int64_t l) {
  // (-1)^l C(4/3,l) = Gamma(l-4/3) / (Gamma(l+1) Gamma(-4/3)), positive for l >= 2
  const double g_m43 = std::tgamma(-4.0 / 3.0);
  return constants().gamma_two_thirds *
         std::exp(std::lgamma(static_cast<double>(l) - 4.0 / 3.0) -
                  std::lgamma(static_cast<double>(l) + 1.0)) /
         g_m43;
}

// Streams the dimensionless tail weights w_l for l in [first, last] (inclusive)
// into fn(l, w). Sequential within the range.
template <typename F>
void stream_tail_weights(DiscretizationKind kind, std::int64_t first, std::int64_t last, F&& fn) {
  switch (kind) {
    case DiscretizationKind::I1: {
      double p_prev = inv_cbrt(first - 1);
      double p_cur = inv_cbrt(first);
      for (std::int64_t l = first; l <= last; ++l) {
        const double p_next = inv_cbrt(l + 1);
        fn(l, p_next - 2.0 * p_cur + p_prev);
        p_prev = p_cur;
        p_cur = p_next;
      }
      break;
    }
    case DiscretizationKind::I2: {
      for (std::int64_t l = first; l <= last; ++l) fn(l, (4.0 / 9.0) * inv_pow73(l));
      break;
    }
    case DiscretizationKind::I3: {
      double w = grunwald_tail_weight_direct(first);
      for (std::int64_t l = first; l <= last; ++l) {
        fn(l, w);
        w *= (static_cast<double>(l + 1) - 1.0 - 4.0 / 3.0) / static_cast<double>(l + 1);
      }
      break;
    }
  }
}

double tail_bound(DiscretizationKind kind, std::int64_t n) {
  switch (kind) {
    case DiscretizationKind::I1:
      // telescoping: sum_{l>n} c_l = n^{-1/3} - (n+1)^{-1/3}
      return inv_cbrt(n) - inv_cbrt(n + 1);
    case DiscretizationKind::I2:
      // (4/9) * integral bound of the zeta tail
      return (4.0 / 9.0) * 0.75 * std::pow(static_cast<double>(n), -4.0 / 3.0);
    case DiscretizationKind::I3:
      // |w_l| ~ (4/9) l^{-7/3}: same integral bound via the local weight
      return 0.75 * static_cast<double>(n) * grunwald_tail_weight_direct(n);
  }
  return 0.0;
}

}  // namespace

// ---------------------------------------------------------------------------
// Continuous side
// ---------------------------------------------------------------------------

std::complex<double> ContinuousSymbol::at(double k) const {
  const double g23 = constants().gamma_two_thirds;
  const double ak = std::fabs(k);
  const double ak13 = std::cbrt(ak);
  const double re = params.epsilon * k * k - 0.5 * params.eta * g23 * ak * ak13;
  const double im = params.eta * (std::sqrt(3.0) / 2.0) * g23 * k * ak13 + params.v * k;
  return {re, im};
}

double ContinuousSymbol::real_part(double k) const { return at(k).real(); }

std::complex<double> continuous_amplification(const DimensionlessGroups& groups, double theta) {
  if (theta < 0.0) throw std::invalid_argument("continuous_amplification: theta must be >= 0");
  const double g23 = constants().gamma_two_thirds;
  const double t43 = theta * std::cbrt(theta);
  const double mod = std::exp(0.5 * g23 * groups.fo * t43 - 0.5 * groups.df * theta * theta);
  const double arg = -(groups.cr * theta + (std::sqrt(3.0) / 2.0) * g23 * groups.fo * t43);
  return std::polar(mod, arg);
}

PeakThreshold peak_and_threshold(const PhysicalParams& params) {
  params.validate();
  const double g23 = constants().gamma_two_thirds;
  const double ratio = params.eta / params.epsilon;
  PeakThreshold p;
  p.k0 = std::pow(0.5 * g23 * ratio, 1.5);
  p.k_star = std::pow(g23 * ratio / 3.0, 1.5);
  p.alpha_star = (4.0 / 27.0) * std::pow(0.5 * g23, 3.0) * std::pow(params.eta, 3.0) /
                 (params.epsilon * params.epsilon);
  return p;
}

double continuous_growth_cutoff(const DimensionlessGroups& groups) {
  if (!(groups.df > 0.0)) throw std::domain_error("continuous_growth_cutoff: needs Df > 0");
  return std::pow(constants().gamma_two_thirds * groups.fo / groups.df, 1.5);
}

// ---------------------------------------------------------------------------
// Discrete amplification
// ---------------------------------------------------------------------------

SeriesHead series_head(DiscretizationKind kind) {
  const Constants& c = constants();
  switch (kind) {
    case DiscretizationKind::I1:
      return {0.0, 1.0, -(2.0 - std::pow(2.0, -1.0 / 3.0))};
    case DiscretizationKind::I2:
      return {(2.0 / 9.0) * c.zeta_four_thirds, -(4.0 / 9.0) * c.zeta_seven_thirds,
              -(2.0 / 9.0) * c.zeta_four_thirds + 4.0 / 9.0};
    case DiscretizationKind::I3:
      return {0.0, c.gamma_two_thirds, -(4.0 / 3.0) * c.gamma_two_thirds};
  }
  return {};
}

std::int64_t spectral_cutoff(DiscretizationKind kind) {
  static std::mutex mu;
  static std::map<DiscretizationKind, std::int64_t> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(kind);
  if (it != cache.end()) return it->second;
  // analytic estimate (1/3) n^{-4/3} ~ target, then refine
  std::int64_t n = static_cast<std::int64_t>(std::pow(3.0 * kTailTarget, -0.75));
  while (tail_bound(kind, n) > kTailTarget) n += n / 16 + 1;
  while (n > 2 && tail_bound(kind, n - 1) <= kTailTarget) --n;
  cache[kind] = n;
  return n;
}

double tail_weight_sum(DiscretizationKind kind, std::int64_t first, std::int64_t last) {
  double sum = 0.0, comp = 0.0;
  stream_tail_weights(kind, first, last, [&](std::int64_t, double w) {
    const double y = w - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  });
  return sum;
}

namespace {

// head contribution a_{-1} e^{i theta} + a_0 + a_1 e^{-i theta}
std::complex<double> head_terms(const SeriesHead& h, const DimensionlessGroups& g, double theta) {
  const double a_up = 0.5 * g.df - g.fo * h.up + (g.cr < 0.0 ? -g.cr : 0.0);
  const double a0 = 1.0 - std::fabs(g.cr) - g.df - g.fo * h.w0;
  const double a1 = 0.5 * g.df - g.fo * h.w1 + (g.cr >= 0.0 ? g.cr : 0.0);
  const std::complex<double> e(std::cos(theta), std::sin(theta));
  return a_up * e + a0 + a1 * std::conj(e);
}

// sum_{l=2..cutoff} w_l e^{-i l theta}, compensated, with periodic phase refresh
std::complex<double> tail_series(DiscretizationKind kind, double theta, std::int64_t cutoff) {
  std::complex<double> sum = 0.0, comp = 0.0;
  const std::complex<double> rot = std::polar(1.0, -theta);
  std::complex<double> phase = std::polar(1.0, -2.0 * theta);
  std::int64_t since_refresh = 0;
  stream_tail_weights(kind, 2, cutoff, [&](std::int64_t l, double w) {
    if (++since_refresh == 4096) {
      phase = std::polar(1.0, -static_cast<double>(l) * theta);
      since_refresh = 0;
    }
    const std::complex<double> y = w * phase - comp;
    const std::complex<double> t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    phase *= rot;
  });
  return sum;
}

}  // namespace

std::complex<double> discrete_amplification(DiscretizationKind kind,
                                            const DimensionlessGroups& groups, double theta) {
  const SeriesHead h = series_head(kind);
  const std::int64_t cutoff = spectral_cutoff(kind);
  return head_terms(h, groups, theta) - groups.fo * tail_series(kind, theta, cutoff);
}

std::complex<double> discrete_amplification(const CoefficientTable& table,
                                            const DimensionlessGroups& groups, double theta) {
  const std::vector<double> row = step_row(table, groups);
  // row[i] is the coefficient of u_{j-(i-1)}
  std::complex<double> sum = 0.0, comp = 0.0;
  const std::complex<double> rot = std::polar(1.0, -theta);
  std::complex<double> phase = std::polar(1.0, theta);  // e^{-i m theta} at m = -1
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i % 2048 == 0)
      phase = std::polar(1.0, -(static_cast<double>(i) - 1.0) * theta);
    const std::complex<double> y = row[i] * phase - comp;
    const std::complex<double> t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    phase *= rot;
  }
  return sum;
}

AmplificationGrid::AmplificationGrid(DiscretizationKind kind, int size)
    : kind_(kind), size_(size) {
  if (size < 2 || size % 2 != 0)
    throw std::invalid_argument("AmplificationGrid: size must be even and >= 2");
  const std::int64_t cutoff = spectral_cutoff(kind);
  const std::size_t m = static_cast<std::size_t>(size);

  // fold w_l into bins by l mod size, in parallel chunks merged in order
  const std::int64_t lo = 2;
  const std::int64_t total = cutoff - lo + 1;
  std::vector<std::vector<double>> partial;
  std::mutex reg_mutex;
  std::map<std::size_t, std::vector<double>> chunks;
  parallel_chunks(static_cast<std::size_t>(std::max<std::int64_t>(total, 0)),
                  [&](std::size_t b, std::size_t e) {
                    std::vector<double> bins(m, 0.0);
                    const std::int64_t first = lo + static_cast<std::int64_t>(b);
                    const std::int64_t last = lo + static_cast<std::int64_t>(e) - 1;
                    std::size_t r = static_cast<std::size_t>(first % size);
                    stream_tail_weights(kind_, first, last, [&](std::int64_t, double w) {
                      bins[r] += w;
                      if (++r == m) r = 0;
                    });
                    std::lock_guard<std::mutex> lock(reg_mutex);
                    chunks.emplace(b, std::move(bins));
                  });
  std::vector<double> bins(m, 0.0);
  for (auto& [b, part] : chunks)
    for (std::size_t i = 0; i < m; ++i) bins[i] += part[i];

  // S_m = sum_r bins[r] e^{-2 pi i m r / size}: one real-to-complex DFT
  detail::RealFft fft(m);
  fft.forward(bins, tail_);
}

double AmplificationGrid::theta(int m) const {
  return 2.0 * kPi * static_cast<double>(m) / static_cast<double>(size_);
}

std::complex<double> AmplificationGrid::g(const DimensionlessGroups& groups, int m) const {
  const SeriesHead h = series_head(kind_);
  return head_terms(h, groups, theta(m)) - groups.fo * tail_[static_cast<std::size_t>(m)];
}

const AmplificationGrid& amplification_grid(DiscretizationKind kind, int size) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<AmplificationGrid>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<int>(kind), size);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<AmplificationGrid>(kind, size)).first;
  return *it->second;
}

// ---------------------------------------------------------------------------
// Stability predicates
// ---------------------------------------------------------------------------

double cfl_weight(DiscretizationKind kind) {
  const Constants& c = constants();
  switch (kind) {
    case DiscretizationKind::I1: return 2.0 - std::pow(2.0, -1.0 / 3.0);
    case DiscretizationKind::I2: return (4.0 / 9.0) * (c.zeta_four_thirds - 1.0);
    case DiscretizationKind::I3: return (4.0 / 3.0) * c.gamma_two_thirds;
  }
  return 0.0;
}

double cfl_mod(DiscretizationKind kind, const DimensionlessGroups& groups) {
  return std::fabs(groups.cr) + groups.df + cfl_weight(kind) * groups.fo;
}

double high_freq_coefficient(DiscretizationKind kind) {
  const Constants& c = constants();
  switch (kind) {
    case DiscretizationKind::I1: return 1.0 - std::pow(2.0, -1.0 / 3.0);
    case DiscretizationKind::I2:
      return (4.0 / 9.0) * (c.zeta_seven_thirds - 1.0 + c.zeta_four_thirds);
    case DiscretizationKind::I3: return c.gamma_two_thirds / 3.0;
  }
  return 0.0;
}

bool high_freq_condition(DiscretizationKind kind, const PhysicalParams& params, double dx,
                         double theta0) {
  if (!(theta0 > 0.0) || !(theta0 < kPi))
    throw std::invalid_argument("high_freq_condition: theta0 must lie in (0, pi)");
  params.validate();
  const double s = std::sin(0.5 * theta0);
  return high_freq_coefficient(kind) * params.eta * std::pow(dx, 2.0 / 3.0) <=
         2.0 * params.epsilon * s * s;
}

double high_freq_dx_bound(DiscretizationKind kind, const PhysicalParams& params, double theta0) {
  if (!(theta0 > 0.0) || !(theta0 < kPi))
    throw std::invalid_argument("high_freq_dx_bound: theta0 must lie in (0, pi)");
  params.validate();
  const double s = std::sin(0.5 * theta0);
  return std::pow(2.0 * params.epsilon * s * s / (high_freq_coefficient(kind) * params.eta), 1.5);
}

StabilityReport stability_verdict(DiscretizationKind kind, const DimensionlessGroups& groups,
                                  const PhysicalParams& params, const GridSpec& grid,
                                  double theta0, int samples) {
  if (samples < 2) throw std::invalid_argument("stability_verdict: samples must be >= 2");
  if (!(theta0 > 0.0) || !(theta0 < kPi - 1e-3))
    throw std::invalid_argument("stability_verdict: theta0 must lie in (0, pi)");
  StabilityReport rep;
  rep.theta0 = theta0;
  rep.cfl_mod = cfl_mod(kind, groups);
  rep.cfl_ok = rep.cfl_mod <= 1.0;
  rep.highfreq_ok = high_freq_condition(kind, params, grid.dx, theta0);

  // grid sized so (theta0, pi] holds about `samples` points
  int m_grid = static_cast<int>(std::ceil(static_cast<double>(samples) * 2.0 * kPi /
                                          (kPi - theta0)));
  if (m_grid % 2 != 0) ++m_grid;
  const AmplificationGrid& ag = amplification_grid(kind, m_grid);
  const int m_lo = static_cast<int>(std::floor(theta0 * m_grid / (2.0 * kPi))) + 1;
  const int m_hi = m_grid / 2;
  double max_gain = 0.0;
  for (int m = m_lo; m <= m_hi; ++m) {
    if (ag.theta(m) <= theta0) continue;
    max_gain = std::max(max_gain, std::abs(ag.g(groups, m)));
  }
  rep.max_high_freq_gain = max_gain;
  rep.verdict = max_gain < 1.0;
  return rep;
}

// ---------------------------------------------------------------------------
// Diagnostics
// ---------------------------------------------------------------------------

namespace {

double phase_denominator(const DimensionlessGroups& groups, double theta) {
  const double g23 = constants().gamma_two_thirds;
  return groups.cr * theta + (std::sqrt(3.0) / 2.0) * g23 * groups.fo * theta * std::cbrt(theta);
}

// argument of g mapped so theta_d in (-pi, pi]: real-negative g takes +pi,
// matching the one-step delay convention of the reference tables
double delay_argument(std::complex<double> g) {
  if (std::abs(g.imag()) <= 1e-12 * std::abs(g)) return g.real() >= 0.0 ? 0.0 : kPi;
  return -std::arg(g);
}

}  // namespace

double phase_delay_of(std::complex<double> g, const DimensionlessGroups& groups, double theta) {
  const double denom = phase_denominator(groups, theta);
  if (denom == 0.0)
    throw std::domain_error("phase_delay: exact phase vanishes (Cr = Fo = 0 or theta = 0)");
  return 1.0 - delay_argument(g) / denom;
}

double phase_delay(DiscretizationKind kind, const DimensionlessGroups& groups, double theta) {
  if (!(theta > 0.0) || theta > kPi)
    throw std::invalid_argument("phase_delay: theta must lie in (0, pi]");
  return phase_delay_of(discrete_amplification(kind, groups, theta), groups, theta);
}

double dampening_ratio_of(std::complex<double> g, const DimensionlessGroups& groups,
                          double theta) {
  return std::abs(g) / std::abs(continuous_amplification(groups, theta));
}

double dampening_ratio(DiscretizationKind kind, const DimensionlessGroups& groups, double theta) {
  if (theta < 0.0 || theta > kPi)
    throw std::invalid_argument("dampening_ratio: theta must lie in [0, pi]");
  return dampening_ratio_of(discrete_amplification(kind, groups, theta), groups, theta);
}

bool half_circle_bound(double a, double b, double d) {
  if (d < 0.0) return false;
  return (a + std::fabs(b) <= d) && (a - std::fabs(b) >= -d);
}

std::vector<SpectralSample> spectral_sweep(DiscretizationKind kind,
                                           const DimensionlessGroups& groups, int samples) {
  if (samples < 2) throw std::invalid_argument("spectral_sweep: samples must be >= 2");
  const AmplificationGrid& ag = amplification_grid(kind, 2 * samples);
  std::vector<SpectralSample> out;
  out.reserve(static_cast<std::size_t>(samples) + 1);
  for (int m = 0; m <= samples; ++m) {
    SpectralSample s;
    s.kind = kind;
    s.theta = ag.theta(m);
    s.g = ag.g(groups, m);
    s.g_cont = continuous_amplification(groups, s.theta);
    const double denom = phase_denominator(groups, s.theta);
    s.delta = denom == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                           : 1.0 - delay_argument(s.g) / denom;
    s.ratio = std::abs(s.g) / std::abs(s.g_cont);
    out.push_back(s);
  }
  return out;
}

}  // namespace fowler
