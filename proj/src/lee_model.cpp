#include "decay/lee_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace decay {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Panels per oscillation period for the nested eta integrals. One GK15 panel
// per period resolves e^{-iEt} to ~1e-10 before refinement; the outer and
// inner integrals of w(t) would otherwise cost 64x more.
constexpr double kEtaPanelsPerPeriod = 1.0;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

QuadratureSpec tight_spec() {
  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-11;
  return spec;
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// (1 - e^{ix}) / x without cancellation; the E-integrand of eta is
// t e^{-i omega t} times this at x = (omega - E) t.
std::complex<double> difference_kernel(double x) {
  const double h = 0.5 * x;
  return {std::sin(h) * sinc(h), -sinc(x)};
}

}  // namespace

// ---------------------------------------------------------------------------
// FormFactorModel

FormFactorModel::FormFactorModel(double coupling, Variant v) : coupling_(coupling), variant_(std::move(v)) {
  if (!(coupling > 0.0) || !std::isfinite(coupling)) throw DomainError("coupling g must be positive");
}

FormFactorModel FormFactorModel::flat(double coupling) { return FormFactorModel(coupling, FlatFormFactor{}); }

FormFactorModel FormFactorModel::band(double coupling, double mass, double half_width, double asymmetry) {
  if (!(half_width > 0.0)) throw DomainError("band half-width E0 must be positive");
  if (!(1.0 + asymmetry * (mass - half_width) > 0.0) || !(1.0 + asymmetry * (mass + half_width) > 0.0)) {
    throw DomainError("band form factor requires 1 + alpha k > 0 across the band");
  }
  return FormFactorModel(coupling, BandFormFactor{mass, half_width, asymmetry});
}

FormFactorModel FormFactorModel::smooth_cutoff(double coupling, double mass, double half_width, double asymmetry,
                                               double cutoff) {
  if (!(half_width > 0.0)) throw DomainError("smooth-cutoff E0 must be positive");
  if (!(cutoff > 0.0)) throw DomainError("smooth-cutoff Lambda must be positive");
  if (asymmetry < 0.0 || !(1.0 + asymmetry * (mass - half_width) >= 0.0)) {
    throw DomainError("smooth-cutoff form factor requires 1 + alpha k >= 0 on its whole support");
  }
  return FormFactorModel(coupling, SmoothCutoffFormFactor{mass, half_width, asymmetry, cutoff});
}

std::string_view FormFactorModel::name() const {
  return std::visit(Overloaded{[](const FlatFormFactor&) { return std::string_view("flat"); },
                               [](const BandFormFactor&) { return std::string_view("band"); },
                               [](const SmoothCutoffFormFactor&) { return std::string_view("smooth"); }},
                    variant_);
}

double FormFactorModel::form_factor_sq(double k) const {
  return std::visit(Overloaded{[](const FlatFormFactor&) { return 1.0; },
                               [k](const BandFormFactor& b) {
                                 return std::abs(k - b.mass) < b.half_width ? 1.0 + b.asymmetry * k : 0.0;
                               },
                               [k](const SmoothCutoffFormFactor& s) {
                                 const double th = s.mass - s.half_width;
                                 if (!(k > th)) return 0.0;
                                 return (1.0 + s.asymmetry * k) * std::sqrt(k - th) / (k * k + s.cutoff * s.cutoff);
                               }},
                    variant_);
}

Interval FormFactorModel::support() const {
  return std::visit(Overloaded{[](const FlatFormFactor&) { return Interval{-kInf, kInf}; },
                               [](const BandFormFactor& b) {
                                 return Interval{b.mass - b.half_width, b.mass + b.half_width};
                               },
                               [](const SmoothCutoffFormFactor& s) {
                                 return Interval{s.mass - s.half_width, kInf};
                               }},
                    variant_);
}

// ---------------------------------------------------------------------------
// Self-energy

SelfEnergyFn::SelfEnergyFn(FormFactorModel model)
    : model_(std::move(model)),
      mode_(std::holds_alternative<SmoothCutoffFormFactor>(model_.variant()) ? SelfEnergyMode::numeric_pv
                                                                              : SelfEnergyMode::analytic) {}

double SelfEnergyFn::imag(double energy) const {
  const double g = model_.coupling();
  return 0.5 * g * g * model_.form_factor_sq(energy);
}

double SelfEnergyFn::real(double energy) const {
  const double g2 = model_.coupling() * model_.coupling();
  return std::visit(Overloaded{[](const FlatFormFactor&) { return 0.0; },
                               [&](const BandFormFactor& b) {
                                 // Distances to the stored edges are exact near the edges.
                                 const double lo = b.mass - b.half_width;
                                 const double hi = b.mass + b.half_width;
                                 const double ratio = std::abs((energy - hi) / (energy - lo));
                                 return g2 / (2.0 * kPi) * (1.0 + b.asymmetry * energy) * std::log(ratio);
                               },
                               [&](const SmoothCutoffFormFactor& s) { return smooth_cutoff_real(s, energy); }},
                    model_.variant());
}

double SelfEnergyFn::smooth_cutoff_real(const SmoothCutoffFormFactor& ff, double energy) const {
  // k = th + u^2 removes the square-root branch point at threshold.
  const double g2 = model_.coupling() * model_.coupling();
  const double th = ff.mass - ff.half_width;
  const double lambda2 = ff.cutoff * ff.cutoff;
  auto numerator = [&](double u) {
    const double k = th + u * u;
    return 2.0 * u * u * (1.0 + ff.asymmetry * k) / (k * k + lambda2);
  };
  const QuadratureSpec spec = tight_spec();
  double integral = 0.0;
  if (energy < th) {
    const double gap = th - energy;
    integral = integrate_to_infinity([&](double u) { return numerator(u) / (u * u + gap); }, 0.0, spec);
  } else if (energy == th) {
    integral = integrate_to_infinity(
        [&](double u) {
          const double k = th + u * u;
          return 2.0 * (1.0 + ff.asymmetry * k) / (k * k + lambda2);
        },
        0.0, spec);
  } else {
    const double u0 = std::sqrt(energy - th);
    auto integrand = [&](double u) { return numerator(u) / ((u - u0) * (u + u0)); };
    integral = pv_integral(integrand, u0, Interval{0.0, 2.0 * u0}, spec) +
               integrate_to_infinity(integrand, 2.0 * u0, spec);
  }
  return g2 / (2.0 * kPi) * integral;
}

std::complex<double> self_energy(const FormFactorModel& model, double energy) {
  return SelfEnergyFn(model)(energy);
}

std::complex<double> propagator(const FormFactorModel& model, double mass, double energy) {
  return 1.0 / (energy - mass + self_energy(model, energy));
}

namespace {

double spectral_density_from(const SelfEnergyFn& se, double mass, double energy) {
  const double im = se.imag(energy);
  if (!(im > 0.0)) return 0.0;
  const double re = se.real(energy);
  if (!std::isfinite(re)) return 0.0;
  const double x = energy - mass + re;
  return im / (kPi * (x * x + im * im));
}

}  // namespace

double spectral_density(const FormFactorModel& model, double mass, double energy) {
  return spectral_density_from(SelfEnergyFn(model), mass, energy);
}

double fermi_golden_rule(const FormFactorModel& model, double mass) {
  const auto s = model.support();
  if (!(mass > s.lo && mass < s.hi)) {
    throw UndefinedWidthError("mass lies outside the form-factor support; golden-rule width undefined");
  }
  const double f2 = model.form_factor_sq(mass);
  if (!std::isfinite(f2)) throw UndefinedWidthError("form factor is not finite at k_M");
  return model.coupling() * model.coupling() * f2;
}

// ---------------------------------------------------------------------------
// Discrete levels

std::vector<DiscreteLevel> find_discrete_levels(const FormFactorModel& model, double mass) {
  struct Region {
    double edge;
    double direction;
  };
  std::vector<Region> regions;
  double scale = 1.0;
  std::visit(Overloaded{[](const FlatFormFactor&) {},
                        [&](const BandFormFactor& b) {
                          regions = {{b.mass - b.half_width, -1.0}, {b.mass + b.half_width, 1.0}};
                          scale = b.half_width;
                        },
                        [&](const SmoothCutoffFormFactor& s) {
                          regions = {{s.mass - s.half_width, -1.0}};
                          scale = s.half_width;
                        }},
             model.variant());

  const SelfEnergyFn se(model);
  std::vector<DiscreteLevel> levels;
  for (const auto& region : regions) {
    auto energy_at = [&](double d) { return region.edge + region.direction * d; };
    auto pole_condition = [&](double d) {
      const double e = energy_at(d);
      return e - mass + se.real(e);
    };
    const double ulp = std::abs(std::nextafter(region.edge, region.direction * kInf) - region.edge);
    const double d_edge = ulp;
    const double d_min = 4.0 * ulp;
    const double d_max = 1e3 * std::max(scale, std::abs(mass - region.edge));

    std::vector<double> distances{d_edge, d_min};
    const double ratio = std::pow(10.0, 0.25);
    for (double d = d_min * ratio; d < d_max; d *= ratio) distances.push_back(d);
    distances.push_back(d_max);

    std::vector<double> values(distances.size());
    for (std::size_t i = 0; i < distances.size(); ++i) values[i] = pole_condition(distances[i]);

    for (std::size_t i = 0; i + 1 < distances.size(); ++i) {
      const double a = values[i];
      const double b = values[i + 1];
      if (!(std::isfinite(a) && std::isfinite(b))) continue;
      if (a == 0.0 || (a > 0.0) == (b > 0.0)) continue;
      DiscreteLevel level;
      level.edge_degenerate = i == 0;
      const double d = level.edge_degenerate
                           ? distances[0]
                           : find_root(pole_condition, RootBracket{distances[i], distances[i + 1]},
                                       1e-12 * distances[i]);
      level.energy = energy_at(d);

      // Central difference; the step is taken relative to the local scale,
      // the distance to the edge, and made exactly representable.
      const double local = std::min(d, scale);
      const double h = 1e-6 * local;
      const double up = level.energy + h;
      const double down = level.energy - h;
      const double slope = (se.real(up) - se.real(down)) / (up - down);
      level.weight = 1.0 / (1.0 + slope);
      levels.push_back(level);
    }
  }
  std::sort(levels.begin(), levels.end(),
            [](const DiscreteLevel& x, const DiscreteLevel& y) { return x.energy < y.energy; });
  return levels;
}

double critical_coupling(const FormFactorModel& model, double mass) {
  const auto* s = std::get_if<SmoothCutoffFormFactor>(&model.variant());
  if (s == nullptr) throw PreconditionError("critical coupling is defined for the smooth-cutoff model only");
  const double th = s->mass - s->half_width;
  const SelfEnergyFn se(model);
  const double per_g2 = se.real(th) / (model.coupling() * model.coupling());
  const double gap = mass - th;
  if (gap <= 0.0) return 0.0;
  return std::sqrt(gap / per_g2);
}

// ---------------------------------------------------------------------------
// Spectral function

SpectralMeasure spectral_function(const FormFactorModel& model, double mass, const EnergyGrid& grid,
                                  const SpectralOptions& options) {
  const auto support = model.support();
  const double lo = std::max(grid.min(), support.lo);
  const double hi = std::min(grid.max(), support.hi);
  if (!(lo < hi)) throw ConfigError("energy grid does not overlap the continuum support");

  std::vector<double> nodes{lo, hi};
  const Eigen::ArrayXd base = grid.nodes();
  for (Eigen::Index i = 0; i < base.size(); ++i) {
    if (base(i) > lo && base(i) < hi) nodes.push_back(base(i));
  }
  const double spacing = grid.spacing();
  auto grade = [&](double edge, double direction) {
    const std::size_t k = std::max<std::size_t>(options.edge_nodes, 1);
    for (std::size_t j = 0; j < k; ++j) {
      const double d = spacing * std::pow(10.0, -10.0 * static_cast<double>(j) / static_cast<double>(k));
      const double x = edge + direction * d;
      if (x > lo && x < hi) nodes.push_back(x);
    }
  };
  if (std::isfinite(support.lo) && support.lo == lo) grade(lo, 1.0);
  if (std::isfinite(support.hi) && support.hi == hi) grade(hi, -1.0);
  std::sort(nodes.begin(), nodes.end());
  std::vector<double> unique_nodes;
  for (double x : nodes) {
    if (unique_nodes.empty() ||
        x - unique_nodes.back() > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
      unique_nodes.push_back(x);
    }
  }
  unique_nodes.back() = hi;

  const SelfEnergyFn se(model);
  Eigen::ArrayXd x = Eigen::Map<const Eigen::ArrayXd>(unique_nodes.data(), static_cast<Eigen::Index>(unique_nodes.size()));
  Eigen::ArrayXd density(x.size());
  parallel_for(static_cast<std::size_t>(x.size()), options.threads, [&](std::size_t i) {
    density(static_cast<Eigen::Index>(i)) = spectral_density_from(se, mass, x(static_cast<Eigen::Index>(i)));
  });

  std::vector<Atom> atoms;
  for (const auto& level : find_discrete_levels(model, mass)) atoms.push_back({level.energy, level.weight});

  SpectralMeasure::DensityFn fn;
  if (se.mode() == SelfEnergyMode::analytic) {
    fn = [se, mass](double e) { return spectral_density_from(se, mass, e); };
  }

  // Continuum mass beyond the sampled range.
  QuadratureSpec tail_spec;
  tail_spec.abs_tol = 1e-12;
  tail_spec.rel_tol = 1e-8;
  auto d_s = [&](double e) { return spectral_density_from(se, mass, e); };
  double tail = 0.0;
  if (support.lo < lo) {
    tail += std::isfinite(support.lo) ? integrate(d_s, Interval{support.lo, lo}, tail_spec)
                                      : integrate_from_minus_infinity(d_s, lo, tail_spec);
  }
  if (support.hi > hi) {
    tail += std::isfinite(support.hi) ? integrate(d_s, Interval{hi, support.hi}, tail_spec)
                                      : integrate_to_infinity(d_s, hi, tail_spec);
  }

  SpectralMeasure measure(std::move(x), std::move(density), std::move(atoms), support.lo, std::move(fn), tail,
                          options.normalization_tol);
  const double total = measure.integrated_mass() + tail;
  if (std::abs(total - 1.0) > options.normalization_tol) {
    throw DiagnosticsError("spectral function normalization off: total mass " + std::to_string(total),
                           1.0 - total);
  }
  return measure;
}

// ---------------------------------------------------------------------------
// Time dependence

AmplitudeResult survival_amplitude_general_detailed(const SpectralMeasure& measure, double t,
                                                    const QuadratureSpec& spec) {
  if (t < 0.0) throw DomainError("survival amplitude requires t >= 0");
  AmplitudeResult out;
  if (measure.nodes().size() > 0) {
    QuadratureSpec s = spec;
    if (t != 0.0) s = spec.with_period(2.0 * kPi / t, 8.0);
    out.value = integrate(
        [&](double e) {
          const double phase = -e * t;
          return measure.continuum_density(e) * std::complex<double>(std::cos(phase), std::sin(phase));
        },
        measure.breakpoints(), s);
  }
  for (const auto& atom : measure.atoms()) {
    out.value += atom.weight * std::exp(std::complex<double>(0.0, -atom.energy * t));
  }
  const double tail = measure.tail_mass();
  if (tail > 0.0) {
    out.truncation_bound =
        t == 0.0 ? tail : std::min(tail, 2.0 * (measure.edge_density(false) + measure.edge_density(true)) / t);
  }
  return out;
}

std::complex<double> survival_amplitude_general(const SpectralMeasure& measure, double t) {
  return survival_amplitude_general_detailed(measure, t).value;
}

double survival_deficit(const SpectralMeasure& measure, double t) {
  if (t < 0.0) throw DomainError("survival deficit requires t >= 0");
  if (t == 0.0) return 0.0;
  const double center = measure.mean_energy();
  const double mass = measure.integrated_mass();
  auto one_minus_phase = [&](double e) {
    const double x = (e - center) * t;
    const double s = std::sin(0.5 * x);
    return std::complex<double>(2.0 * s * s, std::sin(x));
  };
  std::complex<double> deficit{};
  if (measure.nodes().size() > 0) {
    QuadratureSpec spec;
    spec.abs_tol = 1e-16;
    spec.rel_tol = 1e-11;
    spec = spec.with_period(2.0 * kPi / t, 8.0);
    deficit = integrate([&](double e) { return measure.continuum_density(e) * one_minus_phase(e); },
                        measure.breakpoints(), spec);
  }
  for (const auto& atom : measure.atoms()) deficit += atom.weight * one_minus_phase(atom.energy);
  return 2.0 * mass * deficit.real() - std::norm(deficit);
}

namespace {

double eta_general_with(const SelfEnergyFn& se, const SpectralMeasure& measure, double t, double omega) {
  if (t < 0.0) throw DomainError("eta requires t >= 0");
  const double im = se.imag(omega);
  if (t == 0.0 || !(im > 0.0)) return 0.0;

  auto kernel = [&](double e) { return difference_kernel((omega - e) * t); };
  std::complex<double> j{};
  if (measure.nodes().size() > 0) {
    std::vector<double> breaks = measure.breakpoints();
    if (omega > breaks.front() && omega < breaks.back()) {
      breaks.insert(std::upper_bound(breaks.begin(), breaks.end(), omega), omega);
    }
    QuadratureSpec spec;
    spec.abs_tol = 1e-12;
    spec.rel_tol = 1e-9;
    spec = spec.with_period(2.0 * kPi / t, kEtaPanelsPerPeriod);
    j = integrate([&](double e) { return measure.continuum_density(e) * kernel(e); }, breaks, spec);
  }
  for (const auto& atom : measure.atoms()) j += atom.weight * kernel(atom.energy);
  return im / kPi * t * t * std::norm(j);
}

}  // namespace

double eta_general(const FormFactorModel& model, const SpectralMeasure& measure, double t, double omega) {
  return eta_general_with(SelfEnergyFn(model), measure, t, omega);
}

Eigen::ArrayXd eta_general(const FormFactorModel& model, const SpectralMeasure& measure, double t,
                           const Eigen::ArrayXd& omega, unsigned threads) {
  const SelfEnergyFn se(model);
  Eigen::ArrayXd out(omega.size());
  parallel_for(static_cast<std::size_t>(omega.size()), threads, [&](std::size_t i) {
    const auto k = static_cast<Eigen::Index>(i);
    out(k) = eta_general_with(se, measure, t, omega(k));
  });
  return out;
}

DecayProbabilityResult decay_probability_general_detailed(const FormFactorModel& model,
                                                          const SpectralMeasure& measure, double t,
                                                          const DecayOptions& options) {
  if (t < 0.0) throw DomainError("decay probability requires t >= 0");
  const SelfEnergyFn se(model);
  const auto support = model.support();
  const auto range = measure.continuum_range();
  const double lo = std::max(support.lo, range.lo);
  const double hi = std::min(support.hi, range.hi);

  const auto amplitude = survival_amplitude_general_detailed(measure, t);
  DecayProbabilityResult out;
  out.survival = std::norm(amplitude.value);
  out.bound = 2.0 * amplitude.truncation_bound + amplitude.truncation_bound * amplitude.truncation_bound;

  if (t > 0.0 && lo < hi) {
    const QuadratureSpec spec = options.spec.with_period(2.0 * kPi / t, kEtaPanelsPerPeriod);
    out.in_range = integrate([&](double w) { return eta_general_with(se, measure, t, w); }, Interval{lo, hi}, spec);

    // Beyond the sampled range eta falls off as Im Pi / pi (m^2 + p) / (omega - c)^2
    // plus a term oscillating in omega whose integral is O(1 / (L^2 t)).
    const bool lower_tail = support.lo < lo;
    const bool upper_tail = support.hi > hi;
    if (lower_tail || upper_tail) {
      const double m = measure.integrated_mass();
      const double c = measure.mean_energy();
      const double weight = m * m + out.survival;
      auto tail_density = [&](double w) {
        const double x = w - c;
        return se.imag(w) / kPi * weight / (x * x);
      };
      QuadratureSpec tail_spec;
      tail_spec.abs_tol = 1e-12;
      tail_spec.rel_tol = 1e-8;
      const double amp = std::abs(amplitude.value);
      // Oscillating remainder plus the relative error of the asymptotic form.
      auto allowance = [&](double edge, double part) {
        const double x = edge - c;
        return 2.0 * m * amp * se.imag(edge) / (kPi * t * x * x) + part * 2.0 * std::abs(se(edge)) / std::abs(x);
      };
      if (lower_tail) {
        const double part = std::isfinite(support.lo) ? integrate(tail_density, Interval{support.lo, lo}, tail_spec)
                                                       : integrate_from_minus_infinity(tail_density, lo, tail_spec);
        out.tail += part;
        out.bound += allowance(lo, part);
      }
      if (upper_tail) {
        const double part = std::isfinite(support.hi) ? integrate(tail_density, Interval{hi, support.hi}, tail_spec)
                                                       : integrate_to_infinity(tail_density, hi, tail_spec);
        out.tail += part;
        out.bound += allowance(hi, part);
      }
    }
  }
  out.value = out.in_range + out.tail;

  const double reference = 1.0 - out.survival;
  if (std::abs(out.value - reference) > options.consistency_tol + out.bound) {
    throw ConsistencyError("unitarity check failed: integral of eta = " + std::to_string(out.value) +
                           ", 1 - p(t) = " + std::to_string(reference));
  }
  return out;
}

double decay_probability_general(const FormFactorModel& model, const SpectralMeasure& measure, double t) {
  return decay_probability_general_detailed(model, measure, t).value;
}

}  // namespace decay
