#include "decay/kinematics.hpp"

#include "decay/bw.hpp"

#include <cmath>

namespace decay {

TwoBodyConfig::TwoBodyConfig(double m1_, double m2_, double mass_, double width_)
    : m1(m1_), m2(m2_), mass(mass_), width(width_) {
  if (!(m1 >= 0.0) || !(m2 >= 0.0)) throw DomainError("particle masses must be non-negative");
  if (!(mass > 0.0)) throw DomainError("parent mass must be positive");
  if (!(width > 0.0)) throw DomainError("parent width must be positive");
}

std::pair<double, double> split_energies(double omega, double m1, double m2) {
  if (!(omega > 0.0)) throw DomainError("split_energies requires omega > 0");
  const double omega1 = (omega * omega + (m1 - m2) * (m1 + m2)) / (2.0 * omega);
  return {omega1, omega - omega1};
}

double invert_energy(double omega1, double delta_m2, Branch branch) {
  const double disc = omega1 * omega1 - delta_m2;
  if (disc < 0.0) throw DomainError("invert_energy requires omega1^2 >= m1^2 - m2^2");
  const double s = std::sqrt(disc);
  return branch == Branch::plus ? omega1 + s : omega1 - s;
}

double eta1_exact(const EtaFn& eta, double t, double omega1, double delta_m2) {
  const double disc = omega1 * omega1 - delta_m2;
  if (!(disc > 0.0)) throw DomainError("particle energy below the two-body threshold");
  const double s = std::sqrt(disc);
  double sum = 0.0;
  for (double sign : {1.0, -1.0}) {
    const double omega = omega1 + sign * s;
    if (!(omega > 0.0)) continue;
    sum += std::abs(1.0 + sign * omega1 / s) * eta(t, omega);
  }
  return sum;
}

double eta2_exact(const EtaFn& eta, double t, double omega2, double delta_m2) {
  return eta1_exact(eta, t, omega2, -delta_m2);
}

namespace {

double eta_narrow(const BreitWignerParams& p, const TwoBodyConfig& cfg, double t, double omega, double delta_m2) {
  const double m2 = cfg.mass * cfg.mass;
  const double scale = 2.0 * m2 / (m2 - delta_m2);
  const double center = (m2 + delta_m2) / (2.0 * cfg.mass);
  return scale * eta_bw(p, t, p.mass + scale * (omega - center));
}

}  // namespace

double eta1_narrow(const BreitWignerParams& p, const TwoBodyConfig& cfg, double t, double omega1) {
  partial_widths(cfg);
  return eta_narrow(p, cfg, t, omega1, cfg.delta_m2());
}

double eta2_narrow(const BreitWignerParams& p, const TwoBodyConfig& cfg, double t, double omega2) {
  partial_widths(cfg);
  return eta_narrow(p, cfg, t, omega2, -cfg.delta_m2());
}

std::pair<double, double> partial_widths(const TwoBodyConfig& cfg) {
  if (!(std::abs(cfg.delta_m2()) < cfg.mass * cfg.mass)) {
    throw DomainError("partial widths require |m1^2 - m2^2| < M^2");
  }
  return {cfg.gamma1(), cfg.gamma2()};
}

std::pair<double, double> particle_fwhm(const TwoBodyConfig& cfg, double t) {
  const auto [g1, g2] = partial_widths(cfg);
  const double width = fwhm_bw(cfg.parent(), t);
  return {g1 / cfg.width * width, g2 / cfg.width * width};
}

EnergyGrid particle_grid(const TwoBodyConfig& cfg, int particle, std::size_t points) {
  const auto [g1, g2] = partial_widths(cfg);
  if (particle == 1) return EnergyGrid::centered(cfg.omega1_bar(), 25.0 * g1, points);
  if (particle == 2) return EnergyGrid::centered(cfg.omega2_bar(), 25.0 * g2, points);
  throw ConfigError("particle index must be 1 or 2");
}

}  // namespace decay
