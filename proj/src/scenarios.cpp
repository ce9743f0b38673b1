#include "decay/scenarios.hpp"

#include "decay/bw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace decay {

namespace {


PresetValue quoted(std::string name, double value, std::string unit, std::string note) {
  return {std::move(name), value, std::move(unit), Provenance::quoted, std::move(note)};
}
PresetValue user(std::string name, double value, std::string unit, std::string note) {
  return {std::move(name), value, std::move(unit), Provenance::user, std::move(note)};
}
PresetValue derived(std::string name, double value, std::string unit, std::string note) {
  return {std::move(name), value, std::move(unit), Provenance::derived, std::move(note)};
}

double width_from_lifetime_mev(double seconds) { return kHbarMeVSeconds / seconds; }

// Band model with Gamma = g^2 (1 + alpha M) = 1 and g = 0.95, alpha = 0.0396.
constexpr double kBandCoupling = 0.95;
constexpr double kBandAsymmetry = 0.0396;
constexpr double kBandEdgeOffset = 2.52;

double band_mass() {
  const double g2 = kBandCoupling * kBandCoupling;
  return (1.0 / g2 - 1.0) / kBandAsymmetry;
}

std::vector<PresetValue> band_common() {
  return {quoted("g", kBandCoupling, "sqrt(Gamma)", "coupling"),
          quoted("alpha", kBandAsymmetry, "tau", "asymmetry of the band form factor"),
          derived("M", band_mass(), "Gamma", "solves Gamma = g^2 (1 + alpha M) with Gamma = 1"),
          derived("Gamma", 1.0, "Gamma", "energy unit")};
}

ScenarioPreset make_preset(std::string_view name) {
  if (name == "pi0") {
    const double tau = 8.52e-17;
    return {"pi0",
            "pi0 -> gamma gamma; each photon carries half the final-state spread",
            {quoted("tau", tau, "s", "mean lifetime"), user("M", 134.9768, "MeV", "pi0 mass, standard tables"),
             derived("Gamma", width_from_lifetime_mev(tau), "MeV", "hbar / tau")}};
  }
  if (name == "piplus") {
    const double tau = 2.6033e-8;
    return {"piplus",
            "pi+ -> mu+ nu; spreads shared according to the partial widths",
            {quoted("tau", tau, "s", "mean lifetime"), user("M", 139.57, "MeV", "pi+ mass, standard tables"),
             user("m1", 105.658, "MeV", "muon mass, standard tables"),
             user("m2", 0.0, "MeV", "neutrino mass neglected"),
             derived("Gamma", width_from_lifetime_mev(tau), "MeV", "hbar / tau")}};
  }
  if (name == "atomic") {
    const double tau = 16.2e-9;
    return {"atomic",
            "spontaneous emission; the photon carries the whole spread",
            {user("delta_E", 2.104, "eV", "Na 3p -> 3s transition energy"),
             user("tau", tau, "s", "Na 3p lifetime"),
             derived("Gamma", convert_energy(width_from_lifetime_mev(tau), Unit::MeV, Unit::eV), "eV",
                     "hbar / tau")}};
  }
  if (name == "fig4_band") {
    auto values = band_common();
    values.push_back(quoted("E0", kBandEdgeOffset, "Gamma", "band half-width (reading of M - E0 = 2.52 as E0)"));
    return {"fig4_band", "band-limited form factor; the quoted 2.52 Gamma taken as the half-width E0",
            std::move(values)};
  }
  if (name == "fig4_band_threshold") {
    auto values = band_common();
    values.push_back(derived("E0", band_mass() - kBandEdgeOffset, "Gamma", "M - 2.52, lower edge at 2.52 Gamma"));
    return {"fig4_band_threshold", "band-limited form factor; the quoted 2.52 Gamma taken as the lower band edge",
            std::move(values)};
  }
  if (name == "smooth_cutoff") {
    const double mass = 3.0;
    const double half_width = 2.5;
    const double asymmetry = kBandAsymmetry;
    const double cutoff = 1.0;
    const double f2 = (1.0 + asymmetry * mass) * std::sqrt(half_width) / (mass * mass + cutoff * cutoff);
    return {"smooth_cutoff",
            "threshold with square-root phase space and a smooth high-energy cutoff",
            {user("M", mass, "Gamma", "illustrative"), user("E0", half_width, "Gamma", "threshold at M - E0"),
             user("alpha", asymmetry, "tau", "same asymmetry as the band preset"),
             user("Lambda", cutoff, "Gamma", "cutoff scale"),
             derived("g", 1.0 / std::sqrt(f2), "sqrt(Gamma)", "fixes Gamma = g^2 f^2(M) = 1"),
             derived("Gamma", 1.0, "Gamma", "energy unit")}};
  }
  throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

}  // namespace

std::string_view provenance_name(Provenance p) {
  switch (p) {
    case Provenance::quoted:
      return "quoted";
    case Provenance::user:
      return "user";
    case Provenance::derived:
      return "derived";
  }
  return "user";
}

double ScenarioPreset::get(std::string_view field) const {
  for (const auto& v : values) {
    if (v.name == field) return v.value;
  }
  throw ConfigError("scenario '" + name + "' has no field '" + std::string(field) + "'");
}

bool ScenarioPreset::has(std::string_view field) const {
  return std::any_of(values.begin(), values.end(), [&](const PresetValue& v) { return v.name == field; });
}

std::vector<std::string> scenario_names() {
  return {"pi0", "piplus", "atomic", "fig4_band", "fig4_band_threshold", "smooth_cutoff"};
}

ScenarioPreset scenario_preset(std::string_view name) { return make_preset(name); }

double pi0_photon_spread(double t_over_tau) {
  const auto preset = scenario_preset("pi0");
  const double gamma_ev = convert_energy(preset.get("Gamma"), Unit::MeV, Unit::eV);
  const double width = fwhm_bw(BreitWignerParams(0.0, 1.0), t_over_tau);
  return 0.5 * width * gamma_ev;
}

PiplusSpreads piplus_spreads(double t_over_tau, const ScenarioPreset& preset) {
  const TwoBodyConfig cfg(preset.get("m1"), preset.get("m2"), preset.get("M"), 1.0);
  const auto [g1, g2] = partial_widths(cfg);
  PiplusSpreads out;
  out.ratio_mu = g1;
  out.ratio_nu = g2;
  const double gamma_ev = convert_energy(preset.get("Gamma"), Unit::MeV, Unit::eV);
  out.delta_omega = fwhm_bw(BreitWignerParams(0.0, 1.0), t_over_tau) * gamma_ev;
  out.delta_mu = g1 * out.delta_omega;
  out.delta_nu = g2 * out.delta_omega;
  return out;
}

EnergyDistribution atomic_emission_spectrum(double delta_e, double gamma, double t_gamma, const EnergyGrid& grid) {
  if (!(delta_e > 0.0)) throw DomainError("transition energy must be positive");
  const BreitWignerParams p(delta_e, gamma);
  const double t = t_gamma / gamma;
  Eigen::ArrayXd omega = grid.nodes();
  Eigen::ArrayXd eta = eta_bw(p, t, omega);
  return EnergyDistribution::from_samples(t, std::move(omega), std::move(eta));
}

BandModelConstants band_constants(const ScenarioPreset& preset) {
  if (!preset.has("E0") || preset.has("Lambda")) {
    throw ConfigError("scenario '" + preset.name + "' is not a band-model preset");
  }
  return {preset.get("g"), preset.get("M"), preset.get("E0"), preset.get("alpha")};
}

double short_time_exponent(const SpectralMeasure& measure, double tau, double t_lo, double t_hi, std::size_t n) {
  if (n < 2 || !(t_lo > 0.0) || !(t_hi > t_lo)) throw PreconditionError("short-time fit needs n >= 2 times in (0, inf)");
  Eigen::ArrayXd x(static_cast<Eigen::Index>(n));
  Eigen::ArrayXd y(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(i) / static_cast<double>(n - 1));
    const double deficit = survival_deficit(measure, t * tau);
    if (!(deficit > 0.0)) throw NumericalError("non-positive decay probability in the short-time fit");
    x(static_cast<Eigen::Index>(i)) = std::log(t);
    y(static_cast<Eigen::Index>(i)) = std::log(deficit);
  }
  const double xm = x.mean();
  const double ym = y.mean();
  return ((x - xm) * (y - ym)).sum() / (x - xm).square().sum();
}

LeeRunResult lee_model_run(const FormFactorModel& model, double mass, const EnergyGrid& measure_grid,
                           Interval eta_range, const LeeRunOptions& options) {
  LeeRunResult out;
  out.mass = mass;
  out.gamma = fermi_golden_rule(model, mass);
  const double tau = 1.0 / out.gamma;

  SpectralOptions spectral;
  spectral.threads = options.threads;
  const SpectralMeasure measure = spectral_function(model, mass, measure_grid, spectral);
  out.levels = find_discrete_levels(model, mass);

  out.survival_times = options.survival_times;
  out.survival.resize(options.survival_times.size());
  parallel_for(options.survival_times.size(), options.threads, [&](std::size_t i) {
    out.survival[i] = std::norm(survival_amplitude_general(measure, options.survival_times[i] * tau));
  });

  const EnergyGrid eta_grid(eta_range.lo, eta_range.hi, options.eta_points);
  const Eigen::ArrayXd omega = eta_grid.nodes();
  for (double t_over_tau : options.eta_times) {
    const double t = t_over_tau * tau;
    Eigen::ArrayXd eta = eta_general(model, measure, t, omega, options.threads);
    const double at_mass = eta_general(model, measure, t, mass);
    out.eta_normalized.push_back(at_mass > 0.0 ? Eigen::ArrayXd(eta / at_mass) : Eigen::ArrayXd(eta));
    out.eta.push_back(EnergyDistribution::from_samples(t, omega, std::move(eta)));
  }

  out.short_time_exponent = short_time_exponent(measure, tau);
  return out;
}

LeeRunResult fig4_band_run(const BandModelConstants& constants, const LeeRunOptions& options) {
  const auto model = constants.model();
  const Interval band{constants.mass - constants.half_width, constants.mass + constants.half_width};
  return lee_model_run(model, constants.mass, EnergyGrid(band.lo, band.hi, options.grid_points), band, options);
}

std::pair<FormFactorModel, double> smooth_cutoff_model(const ScenarioPreset& preset) {
  if (!preset.has("Lambda")) throw ConfigError("scenario '" + preset.name + "' is not a smooth-cutoff preset");
  const double mass = preset.get("M");
  return {FormFactorModel::smooth_cutoff(preset.get("g"), mass, preset.get("E0"), preset.get("alpha"),
                                         preset.get("Lambda")),
          mass};
}

LeeRunResult smooth_cutoff_run(const ScenarioPreset& preset, const LeeRunOptions& options) {
  const auto [model, mass] = smooth_cutoff_model(preset);
  const double th = model.support().lo;
  const double gamma = fermi_golden_rule(model, mass);
  const double hi = mass + 40.0 * gamma;
  const double eta_hi = mass + 10.0 * gamma;
  return lee_model_run(model, mass, EnergyGrid(th, hi, options.grid_points), Interval{th, eta_hi}, options);
}

}  // namespace decay
