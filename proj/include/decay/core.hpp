#ifndef DECAY_CORE_HPP_
#define DECAY_CORE_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace decay {

// Errors. Everything derives from decay::Error so callers can catch one type;
// NumericalError marks failures of the numerics rather than of the inputs.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class UndefinedWidthError : public Error {
 public:
  using Error::Error;
};

class RangeTooNarrowError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Quadrature or root search did not reach its tolerance. Carries the best
/// estimate available at the point of failure.
class NumericalFailure : public NumericalError {
 public:
  NumericalFailure(const std::string& what, double estimate, double error)
      : NumericalError(what), estimate_(estimate), error_(error) {}
  double estimate() const { return estimate_; }
  double error() const { return error_; }

 private:
  double estimate_;
  double error_;
};

/// A spectral measure failed its normalization check.
class DiagnosticsError : public NumericalError {
 public:
  DiagnosticsError(const std::string& what, double deficit)
      : NumericalError(what), deficit_(deficit) {}
  double deficit() const { return deficit_; }

 private:
  double deficit_;
};

/// Two routes to the same quantity disagree beyond tolerance.
class ConsistencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// ---------------------------------------------------------------------------
// Units

/// hbar in MeV s.
inline constexpr double kHbarMeVSeconds = 6.582119569e-22;

/// Natural units are hbar = c = 1 with MeV as the energy unit. `seconds` is a
/// time, converted to an energy through E = hbar / t.
enum class Unit { natural, MeV, eV, seconds };

Unit parse_unit(std::string_view name);
std::string_view unit_name(Unit unit);

double convert_energy(double value, Unit from, Unit to);

// ---------------------------------------------------------------------------
// Domain types

struct BreitWignerParams {
  double mass = 0.0;
  double width = 1.0;

  BreitWignerParams() = default;
  BreitWignerParams(double mass, double width);

  double lifetime() const { return 1.0 / width; }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  bool is_finite() const { return std::isfinite(lo) && std::isfinite(hi); }
};

/// Uniform grid of n >= 2 nodes on [min, max].
class EnergyGrid {
 public:
  EnergyGrid(double min, double max, std::size_t n);

  static EnergyGrid centered(double center, double half_range, std::size_t n) {
    return EnergyGrid(center - half_range, center + half_range, n);
  }

  double min() const { return min_; }
  double max() const { return max_; }
  std::size_t size() const { return n_; }
  double spacing() const { return (max_ - min_) / static_cast<double>(n_ - 1); }
  double node(std::size_t i) const;
  Eigen::ArrayXd nodes() const;

 private:
  double min_;
  double max_;
  std::size_t n_;
};

/// Discrete part of a spectral measure: a point mass Z at energy E.
struct Atom {
  double energy = 0.0;
  double weight = 0.0;
};

/// Probability measure of the energy of the unstable state: a sampled continuum
/// density on strictly increasing nodes plus point masses. The nodes need not be
/// uniform; thresholds sit on nodes. A continuum callable, when present, is the
/// exact density and is preferred over interpolating the samples.
class SpectralMeasure {
 public:
  using DensityFn = std::function<double(double)>;

  SpectralMeasure(Eigen::ArrayXd nodes, Eigen::ArrayXd density, std::vector<Atom> atoms,
                  double support_min = -std::numeric_limits<double>::infinity(),
                  DensityFn density_fn = {}, double tail_mass = 0.0,
                  double tolerance = 1e-4);

  const Eigen::ArrayXd& nodes() const { return nodes_; }
  const Eigen::ArrayXd& density() const { return density_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  double support_min() const { return support_min_; }
  double tolerance() const { return tolerance_; }
  /// Continuum mass lying outside the node range, as estimated by the builder.
  double tail_mass() const { return tail_mass_; }
  bool has_density_fn() const { return static_cast<bool>(density_fn_); }

  /// Node range, or an empty interval when there is no continuum.
  Interval continuum_range() const;
  /// d_S(E) inside the node range, zero outside.
  double continuum_density(double energy) const;
  /// Quadrature breakpoints for continuum integrals: the range ends for an
  /// exact density, every node for an interpolated one.
  std::vector<double> breakpoints() const;
  /// Continuum endpoint density on the given side, used for truncation bounds.
  double edge_density(bool upper) const;

  /// Quadrature of the continuum over its node range plus atoms (excludes tail).
  double integrated_mass() const;
  /// Mean energy of the in-range continuum plus atoms.
  double mean_energy() const;

  /// |integrated_mass + tail - 1| <= tolerance.
  bool is_normalized() const;

 private:
  Eigen::ArrayXd nodes_;
  Eigen::ArrayXd density_;
  std::vector<Atom> atoms_;
  double support_min_;
  DensityFn density_fn_;
  double tail_mass_;
  double tolerance_;
};

/// Trapezoid integral of the sampled density plus the atom weights.
double measure_total(const SpectralMeasure& measure);

/// Sampled eta(t, .) at fixed t.
struct EnergyDistribution {
  double time = 0.0;
  Eigen::ArrayXd omega;
  Eigen::ArrayXd eta;
  double integral = 0.0;  // trapezoid over the sampled range
  double peak = 0.0;
  double peak_omega = 0.0;

  static EnergyDistribution from_samples(double time, Eigen::ArrayXd omega, Eigen::ArrayXd eta);
  Eigen::ArrayXd normalized_to(double reference) const;
  std::size_t peak_index() const;
};

/// Trapezoid rule over arbitrary nodes.
double trapezoid(const Eigen::Ref<const Eigen::ArrayXd>& x, const Eigen::Ref<const Eigen::ArrayXd>& y);

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is
/// evaluated independently, so the result does not depend on `threads`.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace decay

#endif  // DECAY_CORE_HPP_
