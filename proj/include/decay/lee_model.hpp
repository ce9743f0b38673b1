#ifndef DECAY_LEE_MODEL_HPP_
#define DECAY_LEE_MODEL_HPP_

// Lee (Friedrichs) model of an unstable state coupled to a continuum with
// dispersion omega(k) = k. A form factor f^2(k) fixes the self-energy Pi(E);
// the propagator G_S(E) = 1 / (E - M + Pi(E)) yields the spectral function,
// the survival amplitude and the final-state energy density eta(t, omega).
//
// Sign convention: Pi(E) = int dk/2pi g^2 f^2(k) / (k - E - i eps), so that
// Im Pi = +g^2 f^2(E) / 2 on the support and G_S has its pole in the lower
// half plane (exponential decay in the flat limit).

#include "decay/core.hpp"
#include "decay/numerics.hpp"

#include <complex>
#include <string_view>
#include <variant>
#include <vector>

namespace decay {

/// f^2(k) = 1. Reproduces the Breit-Wigner limit with Gamma = g^2.
struct FlatFormFactor {};

/// f^2(k) = (1 + alpha k) on the band |k - M| < E0, zero outside.
struct BandFormFactor {
  double mass = 0.0;
  double half_width = 1.0;
  double asymmetry = 0.0;
};

/// f^2(k) = (1 + alpha k) sqrt(k - (M - E0)) / (k^2 + Lambda^2) above the
/// threshold M - E0.
struct SmoothCutoffFormFactor {
  double mass = 0.0;
  double half_width = 1.0;
  double asymmetry = 0.0;
  double cutoff = 1.0;
};

class FormFactorModel {
 public:
  using Variant = std::variant<FlatFormFactor, BandFormFactor, SmoothCutoffFormFactor>;

  static FormFactorModel flat(double coupling);
  static FormFactorModel band(double coupling, double mass, double half_width, double asymmetry);
  static FormFactorModel smooth_cutoff(double coupling, double mass, double half_width, double asymmetry,
                                       double cutoff);

  double coupling() const { return coupling_; }
  const Variant& variant() const { return variant_; }
  std::string_view name() const;

  double form_factor_sq(double k) const;
  static double dispersion(double k) { return k; }

  /// Closed continuum support of f^2; endpoints may be infinite.
  Interval support() const;

 private:
  FormFactorModel(double coupling, Variant v);

  double coupling_;
  Variant variant_;
};

enum class SelfEnergyMode { analytic, numeric_pv };

/// Pi(E) for a given model. Flat and band models use closed forms; the smooth
/// cutoff model evaluates its real part as a principal-value integral.
class SelfEnergyFn {
 public:
  explicit SelfEnergyFn(FormFactorModel model);

  const FormFactorModel& model() const { return model_; }
  SelfEnergyMode mode() const { return mode_; }

  std::complex<double> operator()(double energy) const { return {real(energy), imag(energy)}; }
  double real(double energy) const;
  /// g^2 f^2(E) / 2; zero off the support.
  double imag(double energy) const;

 private:
  double smooth_cutoff_real(const SmoothCutoffFormFactor& ff, double energy) const;

  FormFactorModel model_;
  SelfEnergyMode mode_;
};

std::complex<double> self_energy(const FormFactorModel& model, double energy);

/// G_S(E) = 1 / (E - M + Pi(E)).
std::complex<double> propagator(const FormFactorModel& model, double mass, double energy);

/// Continuum part of d_S(E) = |Im G_S(E)| / pi; zero off the support.
double spectral_density(const FormFactorModel& model, double mass, double energy);

/// Gamma = 2 Im Pi(M) = g^2 f^2(k_M) / |omega'(k_M)| with k_M = M.
double fermi_golden_rule(const FormFactorModel& model, double mass);

/// Real pole of G_S outside the continuum support.
struct DiscreteLevel {
  double energy = 0.0;
  double weight = 0.0;  // Z = 1 / (1 + d Re Pi / dE)
  bool edge_degenerate = false;
};

/// All real roots of E - M + Re Pi(E) = 0 off the continuum support.
std::vector<DiscreteLevel> find_discrete_levels(const FormFactorModel& model, double mass);

/// Smallest coupling for which the smooth-cutoff model binds a level below its
/// threshold. Throws PreconditionError for other variants.
double critical_coupling(const FormFactorModel& model, double mass);

struct SpectralOptions {
  double normalization_tol = 1e-4;
  /// Log-graded nodes added on each side of a finite support edge.
  std::size_t edge_nodes = 48;
  unsigned threads = 1;
};

/// Spectral measure of the unstable state sampled on `grid` (clipped to the
/// support, with support edges and graded edge nodes inserted) plus the
/// discrete levels. Throws DiagnosticsError when the total mass (in-range
/// quadrature, tails beyond the grid and atoms) misses 1 by more than the
/// tolerance.
SpectralMeasure spectral_function(const FormFactorModel& model, double mass, const EnergyGrid& grid,
                                  const SpectralOptions& options = {});

struct AmplitudeResult {
  std::complex<double> value;
  /// Bound on the contribution of continuum mass outside the node range.
  double truncation_bound = 0.0;
};

/// a(t) = int d_S(E) e^{-iEt} dE + sum Z_i e^{-i E_i t}.
AmplitudeResult survival_amplitude_general_detailed(const SpectralMeasure& measure, double t,
                                                    const QuadratureSpec& spec = {});
std::complex<double> survival_amplitude_general(const SpectralMeasure& measure, double t);

/// m^2 - |a(t)|^2 with m = a(0), evaluated without cancellation. Equals the
/// decay probability 1 - p(t) for a normalized measure and stays accurate in
/// the quadratic short-time regime.
double survival_deficit(const SpectralMeasure& measure, double t);

/// eta(t, omega) = Im Pi(omega) / pi |int dE d_S(E) (e^{-i omega t} - e^{-iEt}) / (omega - E)|^2.
double eta_general(const FormFactorModel& model, const SpectralMeasure& measure, double t, double omega);
Eigen::ArrayXd eta_general(const FormFactorModel& model, const SpectralMeasure& measure, double t,
                           const Eigen::ArrayXd& omega, unsigned threads = 1);

struct DecayOptions {
  double consistency_tol = 1e-3;
  QuadratureSpec spec = loose_spec();

  static QuadratureSpec loose_spec() {
    QuadratureSpec s;
    s.abs_tol = 1e-9;
    s.rel_tol = 1e-7;
    return s;
  }
};

struct DecayProbabilityResult {
  double value = 0.0;       // in-range quadrature of eta plus tails
  double in_range = 0.0;
  double tail = 0.0;
  double survival = 0.0;    // |a(t)|^2
  double bound = 0.0;       // truncation allowance added to the consistency tolerance
};

/// w(t) = int eta(t, omega) d omega over the continuum support, checked against
/// 1 - |a(t)|^2. Throws ConsistencyError if the two disagree beyond
/// consistency_tol plus the truncation bound.
DecayProbabilityResult decay_probability_general_detailed(const FormFactorModel& model,
                                                          const SpectralMeasure& measure, double t,
                                                          const DecayOptions& options = {});
double decay_probability_general(const FormFactorModel& model, const SpectralMeasure& measure, double t);

}  // namespace decay

#endif  // DECAY_LEE_MODEL_HPP_
