#ifndef DECAY_SCENARIOS_HPP_
#define DECAY_SCENARIOS_HPP_

// Named physical presets and the runs built on them: the neutral and charged
// pion decays, atomic spontaneous emission and the band-limited Lee model.

#include "decay/core.hpp"
#include "decay/kinematics.hpp"
#include "decay/lee_model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace decay {

enum class Provenance { quoted, user, derived };

std::string_view provenance_name(Provenance p);

struct PresetValue {
  std::string name;
  double value = 0.0;
  std::string unit;
  Provenance source = Provenance::user;
  std::string note;
};

struct ScenarioPreset {
  std::string name;
  std::string description;
  std::vector<PresetValue> values;

  /// Throws ConfigError for an unknown field.
  double get(std::string_view field) const;
  bool has(std::string_view field) const;
};

std::vector<std::string> scenario_names();
/// Throws ConfigError for an unknown name.
ScenarioPreset scenario_preset(std::string_view name);

/// Energy uncertainty per photon in pi0 -> gamma gamma, delta_omega(t) / 2, in eV.
/// Time in units of the pi0 lifetime; +inf gives the natural limit.
double pi0_photon_spread(double t_over_tau);

struct PiplusSpreads {
  double ratio_mu = 0.0;
  double ratio_nu = 0.0;
  double delta_omega = 0.0;  // eV
  double delta_mu = 0.0;     // eV
  double delta_nu = 0.0;     // eV
};

/// Muon and neutrino energy uncertainties in pi+ -> mu+ nu, in eV, with the
/// width ratios recomputed from the preset masses. Time in units of tau.
PiplusSpreads piplus_spreads(double t_over_tau, const ScenarioPreset& preset = scenario_preset("piplus"));

/// Photon energy density of an excited atom with transition energy delta_e and
/// width gamma, sampled on `grid`: eta(t, .) of the parent translated to delta_e.
/// t is in units of 1 / gamma.
EnergyDistribution atomic_emission_spectrum(double delta_e, double gamma, double t_gamma, const EnergyGrid& grid);

struct BandModelConstants {
  double coupling = 0.95;
  double mass = 0.0;
  double half_width = 0.0;
  double asymmetry = 0.0;

  FormFactorModel model() const { return FormFactorModel::band(coupling, mass, half_width, asymmetry); }
};

/// Constants of a band-model preset (fig4_band or fig4_band_threshold).
BandModelConstants band_constants(const ScenarioPreset& preset);

struct LeeRunOptions {
  std::vector<double> survival_times;  // units of tau
  std::vector<double> eta_times;       // units of tau
  std::size_t eta_points = 401;
  std::size_t grid_points = 4001;
  unsigned threads = 1;
};

struct LeeRunResult {
  double mass = 0.0;
  double gamma = 0.0;  // golden-rule width, tau = 1 / gamma
  std::vector<DiscreteLevel> levels;
  std::vector<double> survival_times;
  std::vector<double> survival;  // p(t)
  std::vector<EnergyDistribution> eta;
  std::vector<Eigen::ArrayXd> eta_normalized;  // eta(t, .) / eta(t, M)
  double short_time_exponent = 0.0;            // slope of log(1 - p) vs log t on [1e-3, 1e-2] tau
};

/// p(t), eta(t, .) on `eta_range` and the discrete levels of a Lee model.
LeeRunResult lee_model_run(const FormFactorModel& model, double mass, const EnergyGrid& measure_grid,
                           Interval eta_range, const LeeRunOptions& options);

/// lee_model_run over the band (M - E0, M + E0).
LeeRunResult fig4_band_run(const BandModelConstants& constants, const LeeRunOptions& options);

/// Constants of the smooth_cutoff preset as a model, with its mass.
std::pair<FormFactorModel, double> smooth_cutoff_model(const ScenarioPreset& preset);

/// lee_model_run from threshold to M + 40 Gamma.
LeeRunResult smooth_cutoff_run(const ScenarioPreset& preset, const LeeRunOptions& options);

/// Least-squares slope of log(1 - p(t)) against log t on n log-spaced times in
/// [t_lo, t_hi] (units of tau).
double short_time_exponent(const SpectralMeasure& measure, double tau, double t_lo = 1e-3, double t_hi = 1e-2,
                           std::size_t n = 9);

}  // namespace decay

#endif  // DECAY_SCENARIOS_HPP_
