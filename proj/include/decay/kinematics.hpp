#ifndef DECAY_KINEMATICS_HPP_
#define DECAY_KINEMATICS_HPP_

// Two-body final states: S -> 1 + 2 back to back in the rest frame of S.
// Maps the total energy distribution eta(t, omega) onto the energies of the
// individual particles.

#include "decay/core.hpp"

#include <functional>
#include <utility>

namespace decay {

/// Masses of the decay products plus the Breit-Wigner parameters of the parent.
struct TwoBodyConfig {
  double m1 = 0.0;
  double m2 = 0.0;
  double mass = 1.0;
  double width = 1.0;

  TwoBodyConfig() = default;
  TwoBodyConfig(double m1, double m2, double mass, double width);

  double delta_m2() const { return m1 * m1 - m2 * m2; }
  /// Particle energies at omega = M.
  double omega1_bar() const { return (mass * mass + delta_m2()) / (2.0 * mass); }
  double omega2_bar() const { return (mass * mass - delta_m2()) / (2.0 * mass); }
  double gamma1() const { return (0.5 - delta_m2() / (2.0 * mass * mass)) * width; }
  double gamma2() const { return (0.5 + delta_m2() / (2.0 * mass * mass)) * width; }
  BreitWignerParams parent() const { return {mass, width}; }
  /// Same decay with the roles of particles 1 and 2 exchanged.
  TwoBodyConfig swapped() const { return {m2, m1, mass, width}; }
};

/// omega1 = (omega^2 + m1^2 - m2^2) / 2 omega and omega2 = omega - omega1.
std::pair<double, double> split_energies(double omega, double m1, double m2);

enum class Branch { plus, minus };

/// omega = omega1 +/- sqrt(omega1^2 - delta_m2).
double invert_energy(double omega1, double delta_m2, Branch branch);

using EtaFn = std::function<double(double t, double omega)>;

/// Density of particle 1 energy: sum over both branches of
/// |1 +/- omega1 / sqrt(omega1^2 - delta_m2)| eta(t, omega_branch). Branches with
/// omega <= 0 carry no weight.
double eta1_exact(const EtaFn& eta, double t, double omega1, double delta_m2);
/// Particle 2: the same map with delta_m2 -> -delta_m2.
double eta2_exact(const EtaFn& eta, double t, double omega2, double delta_m2);

/// Narrow-peak form: (Gamma / Gamma1) eta_bw(t, M + (Gamma / Gamma1)(omega1 - omega1_bar)).
double eta1_narrow(const BreitWignerParams& p, const TwoBodyConfig& cfg, double t, double omega1);
double eta2_narrow(const BreitWignerParams& p, const TwoBodyConfig& cfg, double t, double omega2);

/// (Gamma1, Gamma2). Throws DomainError unless |delta_m2| < M^2.
std::pair<double, double> partial_widths(const TwoBodyConfig& cfg);

/// Half-height widths of the particle energy distributions, (Gamma_i / Gamma) delta_omega(t).
std::pair<double, double> particle_fwhm(const TwoBodyConfig& cfg, double t);

/// omega_bar_i +/- 25 Gamma_i, particle index 1 or 2.
EnergyGrid particle_grid(const TwoBodyConfig& cfg, int particle, std::size_t points);

}  // namespace decay

#endif  // DECAY_KINEMATICS_HPP_
