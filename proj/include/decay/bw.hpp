#ifndef DECAY_BW_HPP_
#define DECAY_BW_HPP_

// Closed forms of the exponential (Breit-Wigner) limit: Lorentzian spectral
// function, exponential survival amplitude and the final-state energy density
// eta(t, omega) together with its half-height width.

#include "decay/core.hpp"
#include "decay/numerics.hpp"

#include <complex>

namespace decay {

/// Nonzero root of y = sqrt(2) |1 - e^{iy}|, i.e. y = 2 sqrt(2) sin(y / 2).
/// The short-time width law is delta_omega ~ 2 y* / t.
double short_time_constant();

/// Lorentzian d_S(E) = (Gamma / 2 pi) / ((E - M)^2 + Gamma^2 / 4).
double lorentzian(const BreitWignerParams& p, double energy);
Eigen::ArrayXd lorentzian(const BreitWignerParams& p, const Eigen::ArrayXd& energy);

/// a(t) = exp(-i M t - Gamma t / 2).
std::complex<double> survival_amplitude_bw(const BreitWignerParams& p, double t);

/// eta(t, omega) = (Gamma / 2 pi) |e^{-i omega t} - e^{-i (M - i Gamma/2) t}|^2 / |omega - M + i Gamma/2|^2.
double eta_bw(const BreitWignerParams& p, double t, double omega);
Eigen::ArrayXd eta_bw(const BreitWignerParams& p, double t, const Eigen::ArrayXd& omega);

/// eta at omega = M; equals (2 / pi Gamma)(1 - e^{-Gamma t / 2})^2.
double eta_peak_bw(const BreitWignerParams& p, double t);

/// 1 - e^{-Gamma t}.
double decay_probability_bw(const BreitWignerParams& p, double t);

/// Mass of eta(t, .) outside M +/- half_range. The non-oscillating part is
/// exact; the oscillating part uses a two-term asymptotic expansion whose next
/// term bounds the error.
struct TailEstimate {
  double mass = 0.0;
  double bound = 0.0;
};
TailEstimate eta_bw_tail(const BreitWignerParams& p, double t, double half_range);

struct NumericDecayProbability {
  double value = 0.0;     // in-range quadrature plus analytic tails
  double in_range = 0.0;
  double tail = 0.0;
  double tail_bound = 0.0;
  double half_range = 0.0;
};

/// Quadrature of eta_bw over M +/- max(half_range, 50 / t) plus the analytic tails.
NumericDecayProbability decay_probability_bw_numeric(const BreitWignerParams& p, double t,
                                                     double half_range_in_widths = 500.0,
                                                     const QuadratureSpec& spec = {});

/// Full width at half height of eta_bw(t, .), solved on the crossing closest to
/// the peak. t = +inf gives Gamma. Throws UndefinedWidthError for t <= 0.
double fwhm_bw(const BreitWignerParams& p, double t);

/// eta_bw sampled on a grid, plus eta / eta(t, M).
struct EtaSampleSet {
  BreitWignerParams params;
  double time = 0.0;
  EnergyGrid grid;
  Eigen::ArrayXd values;
  Eigen::ArrayXd normalized_values;

  EnergyDistribution distribution() const;
};

EtaSampleSet sample_eta_bw(const BreitWignerParams& p, double t, const EnergyGrid& grid);

}  // namespace decay

#endif  // DECAY_BW_HPP_
