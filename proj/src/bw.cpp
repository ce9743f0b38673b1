#include "decay/bw.hpp"

#include <cmath>

namespace decay {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

double short_time_constant() {
  static const double root = find_root(
      [](double y) { return y - 2.0 * std::sqrt(2.0) * std::sin(0.5 * y); }, RootBracket{2.0, 3.0}, 1e-15);
  return root;
}

double lorentzian(const BreitWignerParams& p, double energy) {
  const double x = energy - p.mass;
  return p.width / (2.0 * kPi) / (x * x + 0.25 * p.width * p.width);
}

Eigen::ArrayXd lorentzian(const BreitWignerParams& p, const Eigen::ArrayXd& energy) {
  return p.width / (2.0 * kPi) / ((energy - p.mass).square() + 0.25 * p.width * p.width);
}

std::complex<double> survival_amplitude_bw(const BreitWignerParams& p, double t) {
  if (t < 0.0) throw DomainError("survival amplitude requires t >= 0");
  return std::exp(std::complex<double>(-0.5 * p.width * t, -p.mass * t));
}

double eta_bw(const BreitWignerParams& p, double t, double omega) {
  if (t < 0.0) throw DomainError("eta requires t >= 0");
  const double decay = std::exp(-0.5 * p.width * t);
  const double grow = std::expm1(-0.5 * p.width * t);
  const double x = omega - p.mass;
  const double s = std::sin(0.5 * x * t);
  const double numerator = grow * grow + 4.0 * decay * s * s;
  return p.width / (2.0 * kPi) * numerator / (x * x + 0.25 * p.width * p.width);
}

Eigen::ArrayXd eta_bw(const BreitWignerParams& p, double t, const Eigen::ArrayXd& omega) {
  if (t < 0.0) throw DomainError("eta requires t >= 0");
  const double decay = std::exp(-0.5 * p.width * t);
  const double grow = std::expm1(-0.5 * p.width * t);
  const Eigen::ArrayXd x = omega - p.mass;
  const Eigen::ArrayXd s = (0.5 * t * x).sin();
  return p.width / (2.0 * kPi) * (grow * grow + 4.0 * decay * s.square()) /
         (x.square() + 0.25 * p.width * p.width);
}

double eta_peak_bw(const BreitWignerParams& p, double t) { return eta_bw(p, t, p.mass); }

double decay_probability_bw(const BreitWignerParams& p, double t) {
  if (t < 0.0) throw DomainError("decay probability requires t >= 0");
  return -std::expm1(-p.width * t);
}

namespace {

// Integral of cos(x t) / (x^2 + c^2) over [L, inf).
TailEstimate cosine_tail(double t, double c, double L) {
  auto h = [c](double x) { return 1.0 / (x * x + c * c); };
  auto h1 = [c](double x) {
    const double q = x * x + c * c;
    return -2.0 * x / (q * q);
  };
  auto h2 = [c](double x) {
    const double q = x * x + c * c;
    return (6.0 * x * x - 2.0 * c * c) / (q * q * q);
  };
  auto asymptotic = [&](double a) {
    const double st = std::sin(a * t);
    const double ct = std::cos(a * t);
    const double value = -st * h(a) / t - ct * h1(a) / (t * t) + st * h2(a) / (t * t * t);
    const double bound = 24.0 / (std::pow(a, 5) * std::pow(t, 4));
    return TailEstimate{value, bound};
  };
  const double start = std::max(L, 50.0 / t);
  TailEstimate out = asymptotic(start);
  if (start > L) {
    QuadratureSpec spec;
    spec.abs_tol = 1e-15;
    spec = spec.with_period(2.0 * kPi / t);
    out.mass += integrate([&](double x) { return std::cos(x * t) * h(x); }, Interval{L, start}, spec);
  }
  return out;
}

}  // namespace

TailEstimate eta_bw_tail(const BreitWignerParams& p, double t, double half_range) {
  if (!(half_range > 0.0)) throw PreconditionError("tail half-range must be positive");
  const double g = p.width;
  const double non_oscillating = (1.0 + std::exp(-g * t)) * (2.0 / kPi) * std::atan(g / (2.0 * half_range));
  if (t == 0.0) return {0.0, 0.0};
  const auto c = cosine_tail(t, 0.5 * g, half_range);
  const double factor = 2.0 * g / kPi * std::exp(-0.5 * g * t);
  return {non_oscillating - factor * c.mass, factor * c.bound};
}

NumericDecayProbability decay_probability_bw_numeric(const BreitWignerParams& p, double t,
                                                     double half_range_in_widths, const QuadratureSpec& spec) {
  if (t < 0.0) throw DomainError("decay probability requires t >= 0");
  NumericDecayProbability out;
  double L = half_range_in_widths * p.width;
  if (t > 0.0) L = std::max(L, 50.0 / t);
  out.half_range = L;
  if (t == 0.0) return out;
  const QuadratureSpec s = spec.with_period(2.0 * kPi / t, spec.panels_per_period);
  out.in_range = integrate([&](double w) { return eta_bw(p, t, w); }, Interval{p.mass - L, p.mass + L}, s);
  const auto tail = eta_bw_tail(p, t, L);
  out.tail = tail.mass;
  out.tail_bound = tail.bound;
  out.value = out.in_range + out.tail;
  return out;
}

double fwhm_bw(const BreitWignerParams& p, double t) {
  if (std::isnan(t) || t <= 0.0) throw UndefinedWidthError("the width of eta(t, .) is undefined for t <= 0");
  if (std::isinf(t)) return p.width;
  const double half = 0.5 * eta_peak_bw(p, t);
  auto excess = [&](double x) { return eta_bw(p, t, p.mass + x) - half; };
  const double step = std::min(0.5 * p.width, short_time_constant() / t) / 16.0;
  double x = 0.0;
  while (excess(x) > 0.0) {
    x += step;
    if (!std::isfinite(x)) throw NumericalFailure("fwhm_bw: crossing search diverged", x, step);
  }
  const double tol = 1e-14 * std::max(x, step);
  return 2.0 * find_root(excess, RootBracket{x - step, x}, tol);
}

EnergyDistribution EtaSampleSet::distribution() const {
  return EnergyDistribution::from_samples(time, grid.nodes(), values);
}

EtaSampleSet sample_eta_bw(const BreitWignerParams& p, double t, const EnergyGrid& grid) {
  EtaSampleSet out{p, t, grid, eta_bw(p, t, grid.nodes()), {}};
  const double peak = eta_peak_bw(p, t);
  out.normalized_values = peak > 0.0 ? Eigen::ArrayXd(out.values / peak) : Eigen::ArrayXd::Zero(out.values.size());
  return out;
}

}  // namespace decay
