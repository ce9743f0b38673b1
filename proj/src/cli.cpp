#include "decay/cli.hpp"

#include "decay/bw.hpp"
#include "decay/csv.hpp"
#include "decay/kinematics.hpp"
#include "decay/lee_model.hpp"
#include "decay/plotscript.hpp"
#include "decay/scenarios.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

namespace decay::cli {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Flag / config-file binding

enum class Kind { number, integer, text, numbers, texts };

struct Binding {
  std::string name;
  Kind kind;
  void* target;
  CLI::Option* option;
};

class Command {
 public:
  Command(CLI::App& app, const std::string& name, const std::string& help, RunConfig& cfg)
      : app_(app.add_subcommand(name, help)), cfg_(cfg) {
    app_->add_option("--config", config_path_, "JSON file with the same field names as the flags");
  }

  CLI::App* app() const { return app_; }

  Command& number(const std::string& name, double& target, const std::string& help) {
    bindings_.push_back({name, Kind::number, &target, app_->add_option("--" + name, target, help)});
    return *this;
  }
  Command& integer(const std::string& name, long& target, const std::string& help) {
    bindings_.push_back({name, Kind::integer, &target, app_->add_option("--" + name, target, help)});
    return *this;
  }
  Command& text(const std::string& name, std::string& target, const std::string& help) {
    bindings_.push_back({name, Kind::text, &target, app_->add_option("--" + name, target, help)});
    return *this;
  }
  Command& numbers(const std::string& name, std::vector<double>& target, const std::string& help) {
    bindings_.push_back({name, Kind::numbers, &target, app_->add_option("--" + name, target, help)->delimiter(',')});
    return *this;
  }
  Command& texts(const std::string& name, std::vector<std::string>& target, const std::string& help) {
    bindings_.push_back({name, Kind::texts, &target, app_->add_option("--" + name, target, help)->delimiter(',')});
    return *this;
  }
  Command& positional(const std::string& name, std::string& target, const std::string& help) {
    bindings_.push_back({name, Kind::text, &target, app_->add_option(name, target, help)});
    return *this;
  }

  Command& model_fields() {
    text("model", cfg_.model, "bw | flat | band | smooth");
    text("unit", cfg_.unit, "energy unit label: natural | MeV | eV");
    number("mass", cfg_.mass, "M");
    number("width", cfg_.width, "Gamma (bw, flat)");
    number("coupling", cfg_.coupling, "g (band, smooth)");
    number("half-width", cfg_.half_width, "E0 (band, smooth)");
    number("asymmetry", cfg_.asymmetry, "alpha (band, smooth)");
    number("cutoff", cfg_.cutoff, "Lambda (smooth)");
    integer("grid-points", cfg_.grid_points, "spectral-function nodes (flat, band, smooth)");
    return *this;
  }
  Command& output_fields() {
    text("out", cfg_.out, "output CSV path, '-' for standard output");
    text("format", cfg_.format, "csv | csv+plotscript");
    return *this;
  }

  /// Applies config-file values to flags that were not given. Every key must
  /// be a known field of matching type, whether or not a flag overrides it.
  void resolve() {
    if (config_path_.empty()) return;
    std::ifstream in(config_path_);
    if (!in) throw IoError("cannot read config file '" + config_path_ + "'");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError("config file '" + config_path_ + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
      if (key == "command") {
        if (!value.is_string() || value.get<std::string>() != app_->get_name()) {
          throw ConfigError("config file is for command '" + value.dump() + "', not '" + app_->get_name() + "'");
        }
        continue;
      }
      auto it = std::find_if(bindings_.begin(), bindings_.end(), [&](const Binding& b) { return b.name == key; });
      if (it == bindings_.end()) throw ConfigError("unknown config field '" + key + "'");
      assign(*it, value, it->option->count() == 0);
    }
  }

  json resolved() const {
    json j;
    j["command"] = app_->get_name();
    for (const auto& b : bindings_) {
      switch (b.kind) {
        case Kind::number:
          j[b.name] = *static_cast<double*>(b.target);
          break;
        case Kind::integer:
          j[b.name] = *static_cast<long*>(b.target);
          break;
        case Kind::text:
          j[b.name] = *static_cast<std::string*>(b.target);
          break;
        case Kind::numbers:
          j[b.name] = *static_cast<std::vector<double>*>(b.target);
          break;
        case Kind::texts:
          j[b.name] = *static_cast<std::vector<std::string>*>(b.target);
          break;
      }
    }
    return j;
  }

 private:
  static void assign(const Binding& b, const json& v, bool apply) {
    auto mismatch = [&](const char* expected) {
      return ConfigError("config field '" + b.name + "' must be " + expected + ", got " + v.dump());
    };
    switch (b.kind) {
      case Kind::number:
        if (!v.is_number()) throw mismatch("a number");
        if (apply) *static_cast<double*>(b.target) = v.get<double>();
        break;
      case Kind::integer:
        if (!v.is_number_integer()) throw mismatch("an integer");
        if (apply) *static_cast<long*>(b.target) = v.get<long>();
        break;
      case Kind::text:
        if (!v.is_string()) throw mismatch("a string");
        if (apply) *static_cast<std::string*>(b.target) = v.get<std::string>();
        break;
      case Kind::numbers: {
        std::vector<double> values;
        if (v.is_number()) {
          values.push_back(v.get<double>());
        } else if (v.is_array()) {
          for (const auto& x : v) {
            if (!x.is_number()) throw mismatch("a list of numbers");
            values.push_back(x.get<double>());
          }
        } else {
          throw mismatch("a list of numbers");
        }
        if (apply) *static_cast<std::vector<double>*>(b.target) = values;
        break;
      }
      case Kind::texts: {
        std::vector<std::string> values;
        if (v.is_string()) {
          values.push_back(v.get<std::string>());
        } else if (v.is_array()) {
          for (const auto& x : v) {
            if (!x.is_string()) throw mismatch("a list of strings");
            values.push_back(x.get<std::string>());
          }
        } else {
          throw mismatch("a list of strings");
        }
        if (apply) *static_cast<std::vector<std::string>*>(b.target) = values;
        break;
      }
    }
  }

  CLI::App* app_;
  RunConfig& cfg_;
  std::string config_path_;
  std::vector<Binding> bindings_;
};

// ---------------------------------------------------------------------------
// Models

struct ModelSetup {
  std::string kind;
  BreitWignerParams bw;
  std::optional<FormFactorModel> lee;
  double mass = 0.0;
  double gamma = 1.0;

  bool closed_form() const { return kind == "bw"; }
};

ModelSetup make_model(const RunConfig& cfg) {
  ModelSetup m;
  m.kind = cfg.model;
  m.mass = cfg.mass;
  if (cfg.model == "bw" || cfg.model == "flat") {
    m.bw = BreitWignerParams(cfg.mass, cfg.width);
    m.gamma = cfg.width;
    if (cfg.model == "flat") m.lee = FormFactorModel::flat(std::sqrt(cfg.width));
  } else if (cfg.model == "band") {
    m.lee = FormFactorModel::band(cfg.coupling, cfg.mass, cfg.half_width, cfg.asymmetry);
    m.gamma = fermi_golden_rule(*m.lee, cfg.mass);
  } else if (cfg.model == "smooth") {
    m.lee = FormFactorModel::smooth_cutoff(cfg.coupling, cfg.mass, cfg.half_width, cfg.asymmetry, cfg.cutoff);
    m.gamma = fermi_golden_rule(*m.lee, cfg.mass);
  } else {
    throw ConfigError("unknown model '" + cfg.model + "' (expected bw, flat, band or smooth)");
  }
  return m;
}

Interval default_omega_range(const ModelSetup& m) {
  if (m.kind == "band" || m.kind == "smooth") {
    const auto s = m.lee->support();
    return {s.lo, std::isfinite(s.hi) ? s.hi : m.mass + 10.0 * m.gamma};
  }
  return {m.mass - 25.0 * m.gamma, m.mass + 25.0 * m.gamma};
}

SpectralMeasure make_measure(const ModelSetup& m, const RunConfig& cfg, unsigned threads) {
  const auto s = m.lee->support();
  const auto n = static_cast<std::size_t>(cfg.grid_points);
  SpectralOptions opts;
  opts.threads = threads;
  if (m.kind == "flat") return spectral_function(*m.lee, m.mass, EnergyGrid::centered(m.mass, 200.0 * m.gamma, n), opts);
  if (m.kind == "band") return spectral_function(*m.lee, m.mass, EnergyGrid(s.lo, s.hi, n), opts);
  return spectral_function(*m.lee, m.mass, EnergyGrid(s.lo, m.mass + 40.0 * m.gamma, n), opts);
}

void validate_common(RunConfig& cfg, long default_points = 2001) {
  if (cfg.points == 0) cfg.points = default_points;
  const Unit unit = parse_unit(cfg.unit);
  if (unit == Unit::seconds) throw ConfigError("unit must be an energy unit (natural, MeV or eV)");
  if (cfg.format != "csv" && cfg.format != "csv+plotscript") {
    throw ConfigError("format must be csv or csv+plotscript");
  }
  if (cfg.points < 2) throw ConfigError("points must be at least 2");
  if (cfg.grid_points < 2) throw ConfigError("grid-points must be at least 2");
}

std::vector<double> scaled(std::initializer_list<double> values, double factor) {
  std::vector<double> out;
  for (double v : values) out.push_back(v * factor);
  return out;
}

// ---------------------------------------------------------------------------
// Output

std::string script_path(const std::string& csv_path) {
  return std::filesystem::path(csv_path).replace_extension(".gp").string();
}

std::string sibling_path(const std::string& csv_path, const std::string& suffix) {
  std::filesystem::path p(csv_path);
  const std::string ext = p.has_extension() ? p.extension().string() : ".csv";
  return (p.parent_path() / (p.stem().string() + suffix + ext)).string();
}

void write_outputs(const RunConfig& cfg, const CsvTable& table, std::optional<FigureId> figure,
                   const std::vector<std::string>& extra_inputs = {}) {
  write_file_atomic(cfg.out, table.render());
  if (cfg.format != "csv+plotscript") return;
  if (cfg.out == "-") throw ConfigError("csv+plotscript needs --out with a file path");
  if (!figure) throw ConfigError("command '" + cfg.command + "' has no plot layout");
  std::vector<std::string> inputs{cfg.out};
  inputs.insert(inputs.end(), extra_inputs.begin(), extra_inputs.end());
  const std::string script = script_path(cfg.out);
  const std::string image = std::filesystem::path(cfg.out).replace_extension(".png").filename().string();
  write_file_atomic(script, emit_plotscript(*figure, inputs, image));
}

std::vector<std::string> base_metadata(const json& resolved, const ModelSetup* model) {
  std::vector<std::string> meta{"decay-spectra " + resolved["command"].get<std::string>()};
  if (model != nullptr) {
    meta.push_back("gamma: " + format_number(model->gamma));
    meta.push_back("unit: energies in " + resolved.value("unit", std::string("natural")) + ", times in hbar / energy");
  }
  meta.push_back("config: " + resolved.dump());
  return meta;
}

// ---------------------------------------------------------------------------
// Commands

void run_survival(RunConfig& cfg, const Command& cmd, unsigned threads) {
  validate_common(cfg);
  const ModelSetup m = make_model(cfg);
  if (cfg.times.empty()) cfg.times = scaled({0.1, 0.5, 1.0, 3.0, 10.0}, 1.0 / m.gamma);
  for (double t : cfg.times) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("survival times must be finite and >= 0");
  }
  const json resolved = cmd.resolved();

  CsvTable table;
  table.metadata = base_metadata(resolved, &m);
  table.columns = {"t", "survival", "decay_probability", "re_amplitude", "im_amplitude"};
  std::vector<std::vector<double>> rows(cfg.times.size());
  std::optional<SpectralMeasure> measure;
  if (!m.closed_form()) measure.emplace(make_measure(m, cfg, threads));
  parallel_for(cfg.times.size(), threads, [&](std::size_t i) {
    const double t = cfg.times[i];
    std::complex<double> a;
    double w = 0.0;
    if (m.closed_form()) {
      a = survival_amplitude_bw(m.bw, t);
      w = decay_probability_bw(m.bw, t);
    } else {
      a = survival_amplitude_general(*measure, t);
      const double m = measure->integrated_mass();
      w = (1.0 - m) * (1.0 + m) + survival_deficit(*measure, t);
    }
    rows[i] = {t, std::norm(a), w, a.real(), a.imag()};
  });
  for (auto& r : rows) table.add_row(std::move(r));
  write_outputs(cfg, table, std::nullopt);
}

void fill_omega_range(RunConfig& cfg, const ModelSetup& m) {
  const Interval range = default_omega_range(m);
  if (std::isnan(cfg.omega_min)) cfg.omega_min = range.lo;
  if (std::isnan(cfg.omega_max)) cfg.omega_max = range.hi;
  if (!(cfg.omega_max > cfg.omega_min)) throw ConfigError("omega-max must exceed omega-min");
}

Eigen::ArrayXd eta_on(const ModelSetup& m, const std::optional<SpectralMeasure>& measure, double t,
                      const Eigen::ArrayXd& omega, unsigned threads) {
  if (m.closed_form()) return eta_bw(m.bw, t, omega);
  return eta_general(*m.lee, *measure, t, omega, threads);
}

double eta_at(const ModelSetup& m, const std::optional<SpectralMeasure>& measure, double t, double omega) {
  if (m.closed_form()) return eta_bw(m.bw, t, omega);
  return eta_general(*m.lee, *measure, t, omega);
}

void run_spectrum(RunConfig& cfg, const Command& cmd, unsigned threads) {
  validate_common(cfg);
  const ModelSetup m = make_model(cfg);
  fill_omega_range(cfg, m);
  if (!(cfg.time >= 0.0) || !std::isfinite(cfg.time)) throw DomainError("time must be finite and >= 0");
  const json resolved = cmd.resolved();

  std::optional<SpectralMeasure> measure;
  if (!m.closed_form()) measure.emplace(make_measure(m, cfg, threads));
  const EnergyGrid grid(cfg.omega_min, cfg.omega_max, static_cast<std::size_t>(cfg.points));
  const Eigen::ArrayXd omega = grid.nodes();
  const Eigen::ArrayXd eta = eta_on(m, measure, cfg.time, omega, threads);
  double reference = eta_at(m, measure, cfg.time, m.mass);
  if (!(reference > 0.0)) reference = eta.maxCoeff();

  CsvTable table;
  table.metadata = base_metadata(resolved, &m);
  table.metadata.insert(table.metadata.begin() + 1, "time: " + format_number(cfg.time));
  table.metadata.push_back("eta_normalized: eta / eta(t, M)");
  table.columns = {"omega", "eta", "eta_normalized"};
  for (Eigen::Index i = 0; i < omega.size(); ++i) {
    table.add_row({omega(i), eta(i), reference > 0.0 ? eta(i) / reference : 0.0});
  }
  write_outputs(cfg, table, FigureId::fig1);
}

void run_fwhm(RunConfig& cfg, const Command& cmd, unsigned threads) {
  validate_common(cfg);
  const ModelSetup m = make_model(cfg);
  if (cfg.times.empty()) cfg.times = scaled({0.1, 0.5, 1.0, 3.0, 100.0}, 1.0 / m.gamma);
  fill_omega_range(cfg, m);
  for (double t : cfg.times) {
    if (!(t > 0.0)) throw UndefinedWidthError("the width is undefined at t <= 0");
  }
  const json resolved = cmd.resolved();

  std::optional<SpectralMeasure> measure;
  Eigen::ArrayXd omega;
  if (!m.closed_form()) {
    measure.emplace(make_measure(m, cfg, threads));
    omega = EnergyGrid(cfg.omega_min, cfg.omega_max, static_cast<std::size_t>(cfg.points)).nodes();
  }
  CsvTable table;
  table.metadata = base_metadata(resolved, &m);
  table.columns = {"t", "delta_omega", "delta_omega_over_gamma"};
  for (double t : cfg.times) {
    double width = 0.0;
    if (m.closed_form()) {
      width = fwhm_bw(m.bw, t);
    } else {
      const Eigen::ArrayXd eta = eta_on(m, measure, t, omega, threads);
      Eigen::Index peak = 0;
      eta.maxCoeff(&peak);
      width = half_height_width(omega, eta, static_cast<std::size_t>(peak));
    }
    table.add_row({t, width, width / m.gamma});
  }
  write_outputs(cfg, table, FigureId::fig3);
}

void run_twobody(RunConfig& cfg, const Command& cmd, unsigned) {
  validate_common(cfg);
  if (cfg.particle != 1 && cfg.particle != 2) throw ConfigError("particle must be 1 or 2");
  if (!(cfg.time >= 0.0) || !std::isfinite(cfg.time)) throw DomainError("time must be finite and >= 0");
  const TwoBodyConfig two(cfg.m1, cfg.m2, cfg.mass, cfg.width);
  const auto [g1, g2] = partial_widths(two);
  const json resolved = cmd.resolved();

  const BreitWignerParams parent = two.parent();
  const EtaFn eta = [&](double t, double w) { return eta_bw(parent, t, w); };
  const EnergyGrid grid = particle_grid(two, static_cast<int>(cfg.particle), static_cast<std::size_t>(cfg.points));
  const double dm2 = two.delta_m2();
  const double threshold = dm2 > 0.0 ? std::sqrt(dm2) : 0.0;
  const double gi = cfg.particle == 1 ? g1 : g2;
  const double threshold_i = cfg.particle == 1 ? threshold : (dm2 < 0.0 ? std::sqrt(-dm2) : 0.0);

  ModelSetup m;
  m.gamma = cfg.width;
  CsvTable table;
  table.metadata = base_metadata(resolved, &m);
  table.metadata.insert(table.metadata.begin() + 1, "time: " + format_number(cfg.time));
  table.metadata.push_back("gamma_1: " + format_number(g1));
  table.metadata.push_back("gamma_2: " + format_number(g2));
  table.metadata.push_back("gamma_particle: " + format_number(gi));
  table.metadata.push_back("omega_bar: " + format_number(cfg.particle == 1 ? two.omega1_bar() : two.omega2_bar()));
  table.columns = {"omega", "eta_exact", "eta_narrow"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = grid.node(i);
    double exact = 0.0;
    if (w > threshold_i) {
      exact = cfg.particle == 1 ? eta1_exact(eta, cfg.time, w, dm2) : eta2_exact(eta, cfg.time, w, dm2);
    }
    const double narrow =
        cfg.particle == 1 ? eta1_narrow(parent, two, cfg.time, w) : eta2_narrow(parent, two, cfg.time, w);
    table.add_row({w, exact, narrow});
  }
  write_outputs(cfg, table, std::nullopt);
}

void run_poles(RunConfig& cfg, const Command& cmd, unsigned) {
  validate_common(cfg);
  if (cfg.model != "band" && cfg.model != "smooth" && cfg.model != "flat") {
    throw ConfigError("poles needs a form-factor model (flat, band or smooth)");
  }
  const ModelSetup m = make_model(cfg);
  const json resolved = cmd.resolved();
  CsvTable table;
  table.metadata = base_metadata(resolved, &m);
  if (cfg.model == "smooth") {
    table.metadata.push_back("critical_coupling: " + format_number(critical_coupling(*m.lee, m.mass)));
  }
  table.columns = {"energy", "distance_to_edge", "residue", "edge_degenerate"};
  const auto s = m.lee->support();
  for (const auto& level : find_discrete_levels(*m.lee, m.mass)) {
    const double edge = level.energy < s.lo ? s.lo : s.hi;
    table.add_row({level.energy, level.energy - edge, level.weight, level.edge_degenerate ? 1.0 : 0.0});
  }
  write_outputs(cfg, table, std::nullopt);
}

std::vector<double> scenario_times(const RunConfig& cfg, std::initializer_list<double> defaults,
                                   const Command& cmd) {
  const CLI::App* app = cmd.app();
  if (!cfg.times.empty()) return cfg.times;
  if (app->count("--time") > 0) return {cfg.time};
  return std::vector<double>(defaults);
}

void run_scenario(RunConfig& cfg, const Command& cmd, unsigned threads) {
  const bool lee_preset = cfg.scenario.rfind("fig4_band", 0) == 0 || cfg.scenario == "smooth_cutoff";
  validate_common(cfg, lee_preset ? 401 : 2001);
  if (cfg.scenario.empty()) throw ConfigError("scenario needs a name: " + [] {
    std::string names;
    for (const auto& n : scenario_names()) names += (names.empty() ? "" : ", ") + n;
    return names;
  }());
  const ScenarioPreset preset = scenario_preset(cfg.scenario);

  std::vector<std::string> provenance;
  for (const auto& v : preset.values) {
    provenance.push_back("preset " + v.name + " = " + format_number(v.value) + " " + v.unit + " [" +
                         std::string(provenance_name(v.source)) + "] " + v.note);
  }
  auto metadata = [&](const json& resolved) {
    std::vector<std::string> meta = base_metadata(resolved, nullptr);
    meta.insert(meta.begin() + 1, "scenario: " + preset.name + ", " + preset.description);
    meta.insert(meta.end() - 1, provenance.begin(), provenance.end());
    return meta;
  };

  if (preset.name == "pi0") {
    cfg.times = scenario_times(cfg, {0.1, 0.5, 1.0, 3.0, 100.0}, cmd);
    const json resolved = cmd.resolved();
    CsvTable table;
    table.metadata = metadata(resolved);
    table.columns = {"t_over_tau", "delta_omega_over_gamma", "photon_spread_ev"};
    for (double t : cfg.times) {
      const double spread = pi0_photon_spread(t);
      table.add_row({t, fwhm_bw(BreitWignerParams(0.0, 1.0), t), spread});
    }
    write_outputs(cfg, table, std::nullopt);
    return;
  }
  if (preset.name == "piplus") {
    cfg.times = scenario_times(cfg, {0.1, 0.5, 1.0, 3.0, 100.0}, cmd);
    const json resolved = cmd.resolved();
    CsvTable table;
    table.metadata = metadata(resolved);
    table.columns = {"t_over_tau", "delta_omega_ev", "delta_mu_ev", "delta_nu_ev", "ratio_mu", "ratio_nu"};
    for (double t : cfg.times) {
      const auto s = piplus_spreads(t, preset);
      table.add_row({t, s.delta_omega, s.delta_mu, s.delta_nu, s.ratio_mu, s.ratio_nu});
    }
    write_outputs(cfg, table, std::nullopt);
    return;
  }
  if (preset.name == "atomic") {
    if (!cfg.times.empty()) throw ConfigError("the atomic scenario takes a single --time");
    cfg.times = {cfg.time};
    const json resolved = cmd.resolved();
    const double delta_e = preset.get("delta_E");
    const double gamma = preset.get("Gamma");
    const EnergyGrid grid = EnergyGrid::centered(delta_e, 25.0 * gamma, static_cast<std::size_t>(cfg.points));
    const EnergyDistribution dist = atomic_emission_spectrum(delta_e, gamma, cfg.time, grid);
    const double reference = eta_bw(BreitWignerParams(delta_e, gamma), dist.time, delta_e);
    CsvTable table;
    table.metadata = metadata(resolved);
    table.metadata.insert(table.metadata.begin() + 1, "time: " + format_number(cfg.time) + " tau");
    table.metadata.push_back("fwhm_ev: " + format_number(fwhm_bw(BreitWignerParams(delta_e, gamma), dist.time)));
    table.columns = {"omega", "eta", "eta_normalized"};
    for (Eigen::Index i = 0; i < dist.omega.size(); ++i) {
      table.add_row({dist.omega(i), dist.eta(i), reference > 0.0 ? dist.eta(i) / reference : 0.0});
    }
    write_outputs(cfg, table, FigureId::fig1);
    return;
  }

  // Lee-model presets: survival curve in the main file, spectra in <stem>_eta.
  if (cfg.out == "-") throw ConfigError("scenario '" + preset.name + "' writes two files and needs --out");
  cfg.times = scenario_times(cfg, {0.40, 0.79, 100.0}, cmd);
  for (double t : cfg.times) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("spectrum times must be finite and > 0");
  }
  const json resolved = cmd.resolved();
  LeeRunOptions opts;
  for (int i = 0; i <= 200; ++i) opts.survival_times.push_back(0.025 * i);
  opts.eta_times = cfg.times;
  opts.eta_points = static_cast<std::size_t>(cfg.points);
  opts.grid_points = static_cast<std::size_t>(cfg.grid_points);
  opts.threads = threads;
  const LeeRunResult run = preset.has("Lambda") ? smooth_cutoff_run(preset, opts)
                                                : fig4_band_run(band_constants(preset), opts);

  CsvTable survival;
  survival.metadata = metadata(resolved);
  survival.metadata.push_back("mass: " + format_number(run.mass));
  survival.metadata.push_back("gamma: " + format_number(run.gamma));
  survival.metadata.push_back("short_time_exponent: " + format_number(run.short_time_exponent));
  for (const auto& level : run.levels) {
    survival.metadata.push_back("level: energy " + format_number(level.energy) + " residue " +
                                format_number(level.weight) + (level.edge_degenerate ? " edge-degenerate" : ""));
  }
  survival.columns = {"t_over_tau", "survival", "exponential"};
  for (std::size_t i = 0; i < run.survival_times.size(); ++i) {
    survival.add_row({run.survival_times[i], run.survival[i], std::exp(-run.survival_times[i])});
  }

  CsvTable eta;
  eta.metadata = survival.metadata;
  eta.metadata.push_back("columns: eta(t, omega) / eta(t, M)");
  eta.columns = {"omega"};
  for (double t : cfg.times) eta.columns.push_back("t=" + format_number(t) + "tau");
  const Eigen::ArrayXd& omega = run.eta.front().omega;
  for (Eigen::Index i = 0; i < omega.size(); ++i) {
    std::vector<double> row{omega(i)};
    for (const auto& curve : run.eta_normalized) row.push_back(curve(i));
    eta.add_row(std::move(row));
  }
  const std::string eta_path = sibling_path(cfg.out, "_eta");
  write_file_atomic(eta_path, eta.render());
  write_outputs(cfg, survival, FigureId::fig4, {eta_path});
}

void run_plot(RunConfig& cfg, const Command&, unsigned) {
  const FigureId figure = parse_figure(cfg.figure);
  if (cfg.inputs.empty()) throw ConfigError("plot needs --inputs");
  std::string image;
  if (cfg.out != "-") image = std::filesystem::path(cfg.out).replace_extension(".png").filename().string();
  write_file_atomic(cfg.out, emit_plotscript(figure, cfg.inputs, image));
}

int report(const std::string& message, int code) {
  std::cerr << "decay-spectra: " << message << "\n";
  return code;
}

}  // namespace

unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("DECAY_SPECTRA_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

int run(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Final-state energy distributions of decaying states", "decay-spectra"};
  app.require_subcommand(1);

  Command survival(app, "survival", "survival probability p(t) = |a(t)|^2", cfg);
  survival.model_fields().numbers("times", cfg.times, "times, comma separated").output_fields();

  Command spectrum(app, "spectrum", "eta(t, omega) on an energy grid", cfg);
  spectrum.model_fields()
      .number("time", cfg.time, "t")
      .number("omega-min", cfg.omega_min, "grid start (default M - 25 Gamma or the support)")
      .number("omega-max", cfg.omega_max, "grid end")
      .integer("points", cfg.points, "grid nodes")
      .output_fields();

  Command fwhm(app, "fwhm", "half-height width of eta(t, .) against t", cfg);
  fwhm.model_fields()
      .numbers("times", cfg.times, "times, comma separated")
      .number("omega-min", cfg.omega_min, "sampling grid start (form-factor models)")
      .number("omega-max", cfg.omega_max, "sampling grid end")
      .integer("points", cfg.points, "sampling grid nodes")
      .output_fields();

  Command twobody(app, "twobody", "energy distribution of one particle of a two-body decay", cfg);
  twobody.text("unit", cfg.unit, "energy unit label")
      .number("mass", cfg.mass, "parent mass M")
      .number("width", cfg.width, "parent width Gamma")
      .number("m1", cfg.m1, "mass of particle 1")
      .number("m2", cfg.m2, "mass of particle 2")
      .number("time", cfg.time, "t")
      .integer("particle", cfg.particle, "1 or 2")
      .integer("points", cfg.points, "grid nodes over omega_bar +/- 25 Gamma_i")
      .output_fields();

  Command poles(app, "poles", "discrete levels of a form-factor model", cfg);
  poles.model_fields().output_fields();

  Command scenario(app, "scenario", "named physical preset", cfg);
  scenario.positional("scenario", cfg.scenario, "pi0 | piplus | atomic | fig4_band | fig4_band_threshold | smooth_cutoff")
      .number("time", cfg.time, "t / tau")
      .numbers("times", cfg.times, "t / tau values, comma separated")
      .integer("points", cfg.points, "spectrum nodes")
      .integer("grid-points", cfg.grid_points, "spectral-function nodes (Lee-model presets)")
      .output_fields();

  Command plot(app, "plot", "gnuplot script for fig1..fig4 from CSV outputs", cfg);
  plot.text("figure", cfg.figure, "fig1 | fig2 | fig3 | fig4")
      .texts("inputs", cfg.inputs, "CSV files, comma separated")
      .text("out", cfg.out, "script path, '-' for standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  const std::vector<std::pair<Command*, void (*)(RunConfig&, const Command&, unsigned)>> commands{
      {&survival, run_survival}, {&spectrum, run_spectrum}, {&fwhm, run_fwhm},     {&twobody, run_twobody},
      {&poles, run_poles},       {&scenario, run_scenario}, {&plot, run_plot}};
  try {
    for (const auto& [command, fn] : commands) {
      if (!command->app()->parsed()) continue;
      cfg.command = command->app()->get_name();
      command->resolve();
      fn(cfg, *command, thread_count());
      return kExitOk;
    }
    return report("no command given", kExitConfig);
  } catch (const NumericalError& e) {
    return report(e.what(), kExitNumerical);
  } catch (const Error& e) {
    return report(e.what(), kExitConfig);
  } catch (const json::exception& e) {
    return report(e.what(), kExitConfig);
  } catch (const std::exception& e) {
    return report(std::string("internal error: ") + e.what(), kExitInternal);
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"decay-spectra"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace decay::cli
