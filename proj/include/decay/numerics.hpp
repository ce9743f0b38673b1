#ifndef DECAY_NUMERICS_HPP_
#define DECAY_NUMERICS_HPP_

#include "decay/core.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <queue>
#include <type_traits>
#include <vector>

namespace decay {

struct QuadratureSpec {
  double abs_tol = 1e-11;
  double rel_tol = 1e-9;
  std::size_t max_subdivisions = 20000;
  /// When set, the domain is pre-split into panels no wider than
  /// period / panels_per_period before adaptive refinement starts.
  std::optional<double> oscillation_period_hint;
  double panels_per_period = 8.0;

  QuadratureSpec with_period(double period, double per_period = 8.0) const {
    QuadratureSpec s = *this;
    s.oscillation_period_hint = period;
    s.panels_per_period = per_period;
    return s;
  }
};

struct RootBracket {
  double lo = 0.0;
  double hi = 0.0;
};

template <typename T>
struct QuadratureResult {
  T value{};
  double error = 0.0;
  std::size_t evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Panel {
  double lo;
  double hi;
  T value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <typename T, typename F>
Panel<T> gauss_kronrod15(const F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const T fc = f(center);
  T kronrod = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  double magnitude = std::abs(fc) * kKronrodWeights[7];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const T f1 = f(center - dx);
    const T f2 = f(center + dx);
    kronrod += (f1 + f2) * kKronrodWeights[j];
    magnitude += (std::abs(f1) + std::abs(f2)) * kKronrodWeights[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kGaussWeights[j / 2];
  }
  const double round_off = 50.0 * std::numeric_limits<double>::epsilon() * magnitude * std::abs(half);
  const double err = std::max(std::abs((kronrod - gauss) * half), round_off);
  return {lo, hi, kronrod * half, err};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod quadrature of a real- or complex-valued
/// integrand over [breaks.front(), breaks.back()]. Every interval between
/// consecutive breakpoints starts as its own panel (further split when an
/// oscillation period hint is given), so kinks placed on breakpoints never sit
/// inside a panel. Throws NumericalFailure when the error target is not met
/// within spec.max_subdivisions bisections.
template <typename F>
auto integrate_detailed(const F& f, const std::vector<double>& breaks, const QuadratureSpec& spec)
    -> QuadratureResult<std::decay_t<std::invoke_result_t<const F&, double>>> {
  using T = std::decay_t<std::invoke_result_t<const F&, double>>;
  if (!(spec.abs_tol > 0.0) || !(spec.rel_tol > 0.0)) {
    throw PreconditionError("quadrature tolerances must be positive");
  }
  if (breaks.size() < 2) throw PreconditionError("quadrature needs at least two breakpoints");
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (!std::isfinite(breaks[i])) throw PreconditionError("quadrature domain must be finite");
    if (i > 0 && breaks[i] < breaks[i - 1]) throw PreconditionError("breakpoints must be sorted");
  }
  QuadratureResult<T> out;

  double panel_width = std::numeric_limits<double>::infinity();
  if (spec.oscillation_period_hint && *spec.oscillation_period_hint > 0.0) {
    panel_width = *spec.oscillation_period_hint / std::max(spec.panels_per_period, 1e-12);
  }

  std::priority_queue<detail::Panel<T>> queue;
  T total{};
  double total_err = 0.0;
  for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
    const double lo = breaks[b];
    const double hi = breaks[b + 1];
    if (!(hi > lo)) continue;
    std::size_t panels = 1;
    if (std::isfinite(panel_width)) {
      panels = static_cast<std::size_t>(std::ceil((hi - lo) / panel_width));
      panels = std::clamp<std::size_t>(panels, 1, 50'000'000);
    }
    const double step = (hi - lo) / static_cast<double>(panels);
    for (std::size_t i = 0; i < panels; ++i) {
      const double a = lo + step * static_cast<double>(i);
      const double c = i + 1 == panels ? hi : lo + step * static_cast<double>(i + 1);
      auto p = detail::gauss_kronrod15<T>(f, a, c);
      total += p.value;
      total_err += p.error;
      queue.push(p);
      out.evaluations += 15;
    }
  }
  if (queue.empty()) return out;

  std::size_t bisections = 0;
  while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (bisections >= spec.max_subdivisions) {
      throw NumericalFailure("adaptive quadrature did not converge", std::abs(total), total_err);
    }
    const auto worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      throw NumericalFailure("adaptive quadrature exhausted floating-point resolution", std::abs(total),
                             total_err);
    }
    auto left = detail::gauss_kronrod15<T>(f, worst.lo, mid);
    auto right = detail::gauss_kronrod15<T>(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    out.evaluations += 30;
    ++bisections;
  }

  // Re-sum to shed drift from the running updates.
  T sum{};
  double err = 0.0;
  while (!queue.empty()) {
    sum += queue.top().value;
    err += queue.top().error;
    queue.pop();
  }
  out.value = sum;
  out.error = err;
  return out;
}

template <typename F>
auto integrate_detailed(const F& f, Interval domain, const QuadratureSpec& spec)
    -> QuadratureResult<std::decay_t<std::invoke_result_t<const F&, double>>> {
  if (!domain.is_finite()) throw PreconditionError("quadrature domain must be finite");
  if (domain.hi >= domain.lo) return integrate_detailed(f, std::vector<double>{domain.lo, domain.hi}, spec);
  auto r = integrate_detailed(f, std::vector<double>{domain.hi, domain.lo}, spec);
  r.value = -r.value;
  return r;
}

template <typename F>
auto integrate(const F& f, Interval domain, const QuadratureSpec& spec = {}) {
  return integrate_detailed(f, domain, spec).value;
}

template <typename F>
auto integrate(const F& f, const std::vector<double>& breaks, const QuadratureSpec& spec = {}) {
  return integrate_detailed(f, breaks, spec).value;
}

/// Integral of f over [a, inf) through x = a + s / (1 - s).
template <typename F>
auto integrate_to_infinity(const F& f, double a, const QuadratureSpec& spec = {}) {
  auto mapped = [&](double s) {
    const double one_minus = 1.0 - s;
    const double x = a + s / one_minus;
    return f(x) * (1.0 / (one_minus * one_minus));
  };
  QuadratureSpec s = spec;
  s.oscillation_period_hint.reset();
  return integrate(mapped, Interval{0.0, 1.0}, s);
}

/// Integral of f over (-inf, b].
template <typename F>
auto integrate_from_minus_infinity(const F& f, double b, const QuadratureSpec& spec = {}) {
  return integrate_to_infinity([&](double x) { return f(2.0 * b - x); }, b, spec);
}

/// Cauchy principal value of the integral of f over `domain`, where f has a
/// simple pole at `singularity` strictly inside it. The symmetric part
/// [s - d, s + d] is folded onto [0, d] as f(s + u) + f(s - u), which is
/// regular; the leftover side is integrated directly.
template <typename F>
double pv_integral(const F& f, double singularity, Interval domain, const QuadratureSpec& spec = {}) {
  if (!(singularity > domain.lo && singularity < domain.hi)) {
    throw PreconditionError("principal value requires the singularity strictly inside the domain");
  }
  const double s = singularity;
  const double d = std::min(s - domain.lo, domain.hi - s);
  double result = integrate([&](double u) { return f(s + u) + f(s - u); }, Interval{0.0, d}, spec);
  if (s + d < domain.hi) result += integrate(f, Interval{s + d, domain.hi}, spec);
  if (s - d > domain.lo) result += integrate(f, Interval{domain.lo, s - d}, spec);
  return result;
}

/// Integral of g(E) exp(-i E t) over a finite domain. Panels are at most
/// 2 pi / (8 |t|) wide before adaptive refinement.
template <typename G>
std::complex<double> fourier_integral(const G& g, double t, Interval domain,
                                      const QuadratureSpec& spec = {}) {
  using R = std::decay_t<std::invoke_result_t<const G&, double>>;
  QuadratureSpec s = spec;
  if (t != 0.0) {
    const double period = 2.0 * M_PI / std::abs(t);
    if (!s.oscillation_period_hint || *s.oscillation_period_hint > period) {
      s.oscillation_period_hint = period;
    }
  }
  auto integrand = [&](double e) -> std::complex<double> {
    const R v = g(e);
    const double phase = -e * t;
    return std::complex<double>(v) * std::complex<double>(std::cos(phase), std::sin(phase));
  };
  return integrate(integrand, domain, s);
}

/// Brent's method on a sign-changing bracket. Converges once the bracket is
/// narrower than `tol` or f vanishes exactly.
template <typename F>
double find_root(const F& f, RootBracket bracket, double tol) {
  double a = bracket.lo;
  double b = bracket.hi;
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (!(fa * fb < 0.0)) throw PreconditionError("find_root: no sign change on bracket");
  if (!(tol > 0.0)) throw PreconditionError("find_root: tolerance must be positive");

  double c = a;
  double fc = fa;
  double d = b - a;
  double e = d;
  for (int iter = 0; iter < 500; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  throw NumericalFailure("find_root: iteration limit reached", b, std::abs(c - b));
}

/// Full width at half height of a sampled peak. Only the half-height crossings
/// contiguous to the peak count; later side lobes are ignored. Crossings are
/// located by linear interpolation between samples.
double half_height_width(const Eigen::Ref<const Eigen::ArrayXd>& omega,
                         const Eigen::Ref<const Eigen::ArrayXd>& eta, std::size_t peak_index);

}  // namespace decay

#endif  // DECAY_NUMERICS_HPP_
