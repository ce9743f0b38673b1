#include "decay/core.hpp"

#include "decay/numerics.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>

namespace decay {

Unit parse_unit(std::string_view name) {
  if (name == "natural") return Unit::natural;
  if (name == "MeV" || name == "mev") return Unit::MeV;
  if (name == "eV" || name == "ev") return Unit::eV;
  if (name == "s" || name == "seconds") return Unit::seconds;
  throw ConfigError("unknown unit '" + std::string(name) + "'");
}

std::string_view unit_name(Unit unit) {
  switch (unit) {
    case Unit::natural: return "natural";
    case Unit::MeV: return "MeV";
    case Unit::eV: return "eV";
    case Unit::seconds: return "seconds";
  }
  throw ConfigError("unknown unit tag");
}

namespace {

// Energy in MeV from a value expressed in `unit`.
double to_mev(double value, Unit unit) {
  switch (unit) {
    case Unit::natural:
    case Unit::MeV: return value;
    case Unit::eV: return value * 1e-6;
    case Unit::seconds: return kHbarMeVSeconds / value;
  }
  throw ConfigError("unknown unit tag");
}

double from_mev(double mev, Unit unit) {
  switch (unit) {
    case Unit::natural:
    case Unit::MeV: return mev;
    case Unit::eV: return mev * 1e6;
    case Unit::seconds: return kHbarMeVSeconds / mev;
  }
  throw ConfigError("unknown unit tag");
}

}  // namespace

double convert_energy(double value, Unit from, Unit to) {
  if (from == to) return value;
  return from_mev(to_mev(value, from), to);
}

BreitWignerParams::BreitWignerParams(double mass, double width) : mass(mass), width(width) {
  if (!std::isfinite(mass)) throw DomainError("Breit-Wigner mass must be finite");
  if (!(width > 0.0) || !std::isfinite(width)) throw DomainError("Breit-Wigner width must be positive");
}

EnergyGrid::EnergyGrid(double min, double max, std::size_t n) : min_(min), max_(max), n_(n) {
  if (n < 2) throw ConfigError("energy grid needs at least two points");
  if (!(min < max) || !std::isfinite(min) || !std::isfinite(max)) {
    throw ConfigError("energy grid requires finite min < max");
  }
}

double EnergyGrid::node(std::size_t i) const {
  if (i + 1 == n_) return max_;
  return min_ + spacing() * static_cast<double>(i);
}

Eigen::ArrayXd EnergyGrid::nodes() const {
  Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(static_cast<Eigen::Index>(n_), min_, max_);
  x(x.size() - 1) = max_;
  return x;
}

SpectralMeasure::SpectralMeasure(Eigen::ArrayXd nodes, Eigen::ArrayXd density, std::vector<Atom> atoms,
                                 double support_min, DensityFn density_fn, double tail_mass,
                                 double tolerance)
    : nodes_(std::move(nodes)),
      density_(std::move(density)),
      atoms_(std::move(atoms)),
      support_min_(support_min),
      density_fn_(std::move(density_fn)),
      tail_mass_(tail_mass),
      tolerance_(tolerance) {
  if (nodes_.size() != density_.size()) throw PreconditionError("measure nodes and density differ in length");
  if (nodes_.size() == 1) throw PreconditionError("measure continuum needs at least two nodes");
  for (Eigen::Index i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_(i) > nodes_(i - 1))) throw PreconditionError("measure nodes must be strictly increasing");
  }
  if ((density_ < 0.0).any() || !density_.allFinite()) {
    throw PreconditionError("measure density must be finite and non-negative");
  }
  for (const auto& atom : atoms_) {
    if (!(atom.weight > 0.0 && atom.weight <= 1.0)) throw PreconditionError("atom weight must lie in (0, 1]");
  }
  if (!(tolerance_ > 0.0)) throw PreconditionError("measure tolerance must be positive");
  if (!(tail_mass_ >= 0.0)) throw PreconditionError("tail mass must be non-negative");
}

Interval SpectralMeasure::continuum_range() const {
  if (nodes_.size() == 0) return {0.0, 0.0};
  return {nodes_(0), nodes_(nodes_.size() - 1)};
}

double SpectralMeasure::continuum_density(double energy) const {
  if (nodes_.size() == 0) return 0.0;
  const double lo = nodes_(0);
  const double hi = nodes_(nodes_.size() - 1);
  if (energy < lo || energy > hi) return 0.0;
  if (density_fn_) return density_fn_(energy);
  const double* begin = nodes_.data();
  const double* end = begin + nodes_.size();
  auto it = std::upper_bound(begin, end, energy);
  if (it == end) return density_(nodes_.size() - 1);
  const auto j = static_cast<Eigen::Index>(it - begin);
  const double x0 = nodes_(j - 1);
  const double x1 = nodes_(j);
  const double w = (energy - x0) / (x1 - x0);
  return (1.0 - w) * density_(j - 1) + w * density_(j);
}

std::vector<double> SpectralMeasure::breakpoints() const {
  if (nodes_.size() == 0) return {};
  if (density_fn_) return {nodes_(0), nodes_(nodes_.size() - 1)};
  return std::vector<double>(nodes_.data(), nodes_.data() + nodes_.size());
}

double SpectralMeasure::edge_density(bool upper) const {
  if (nodes_.size() == 0) return 0.0;
  return upper ? density_(density_.size() - 1) : density_(0);
}

namespace {

// Adaptive quadrature of g(E) d_S(E) over the node range. Interpolated
// measures use every node as a breakpoint so kinks never fall inside a panel.
template <typename G>
double integrate_continuum(const SpectralMeasure& m, const G& g) {
  if (m.nodes().size() == 0) return 0.0;
  QuadratureSpec spec;
  spec.abs_tol = 1e-13;
  spec.rel_tol = 1e-11;
  return integrate([&](double e) { return g(e) * m.continuum_density(e); }, m.breakpoints(), spec);
}

}  // namespace

double SpectralMeasure::integrated_mass() const {
  double total = integrate_continuum(*this, [](double) { return 1.0; });
  for (const auto& atom : atoms_) total += atom.weight;
  return total;
}

double SpectralMeasure::mean_energy() const {
  double first = integrate_continuum(*this, [](double e) { return e; });
  double mass = integrate_continuum(*this, [](double) { return 1.0; });
  for (const auto& atom : atoms_) {
    first += atom.energy * atom.weight;
    mass += atom.weight;
  }
  if (!(mass > 0.0)) throw PreconditionError("mean energy of an empty measure");
  return first / mass;
}

bool SpectralMeasure::is_normalized() const {
  return std::abs(integrated_mass() + tail_mass_ - 1.0) <= tolerance_;
}

double measure_total(const SpectralMeasure& measure) {
  double total = measure.nodes().size() > 0 ? trapezoid(measure.nodes(), measure.density()) : 0.0;
  for (const auto& atom : measure.atoms()) total += atom.weight;
  return total;
}

double trapezoid(const Eigen::Ref<const Eigen::ArrayXd>& x, const Eigen::Ref<const Eigen::ArrayXd>& y) {
  if (x.size() != y.size()) throw PreconditionError("trapezoid: size mismatch");
  const Eigen::Index n = x.size();
  if (n < 2) return 0.0;
  return 0.5 * ((x.tail(n - 1) - x.head(n - 1)) * (y.tail(n - 1) + y.head(n - 1))).sum();
}

EnergyDistribution EnergyDistribution::from_samples(double time, Eigen::ArrayXd omega, Eigen::ArrayXd eta) {
  if (omega.size() != eta.size() || omega.size() < 2) {
    throw PreconditionError("energy distribution needs matching omega/eta samples");
  }
  EnergyDistribution d;
  d.time = time;
  d.integral = trapezoid(omega, eta);
  Eigen::Index imax = 0;
  d.peak = eta.maxCoeff(&imax);
  d.peak_omega = omega(imax);
  d.omega = std::move(omega);
  d.eta = std::move(eta);
  return d;
}

Eigen::ArrayXd EnergyDistribution::normalized_to(double reference) const {
  if (!(reference > 0.0)) return Eigen::ArrayXd::Zero(eta.size());
  return eta / reference;
}

std::size_t EnergyDistribution::peak_index() const {
  Eigen::Index imax = 0;
  eta.maxCoeff(&imax);
  return static_cast<std::size_t>(imax);
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace decay
