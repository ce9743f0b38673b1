#include "decay/bw.hpp"
#include "oracle_values.hpp"

#include <doctest.h>

#include <cmath>

using namespace decay;
using doctest::Approx;

TEST_CASE("survival_amplitude_bw examples") {
  const BreitWignerParams p(0.0, 1.0);
  CHECK(survival_amplitude_bw(p, 0.0) == std::complex<double>(1.0, 0.0));
  CHECK(std::norm(survival_amplitude_bw(BreitWignerParams(3.0, 1.0), 1.0)) == Approx(std::exp(-1.0)).epsilon(1e-14));
  const auto a = survival_amplitude_bw(p, 1.0);
  CHECK(a.real() == Approx(std::exp(-0.5)).epsilon(1e-14));
  CHECK(a.imag() == 0.0);
}

TEST_CASE("eta_bw examples") {
  const BreitWignerParams p(2.0, 1.0);
  CHECK(eta_bw(p, 0.0, 2.7) == 0.0);
  CHECK(eta_bw(p, 100.0, 2.0) == Approx(2.0 / M_PI).epsilon(1e-4));
  CHECK(eta_bw(p, 1.0, 2.0) == Approx(oracle::kPeakAtTau).epsilon(1e-13));
}

TEST_CASE("eta_bw is symmetric about M and non-negative") {
  const BreitWignerParams p(1.5, 0.7);
  for (double t : {0.01, 0.3, 2.0, 40.0}) {
    for (double x : {0.0, 0.1, 1.0, 7.3, 55.0}) {
      CHECK(eta_bw(p, t, p.mass + x) == Approx(eta_bw(p, t, p.mass - x)).epsilon(1e-13));
      CHECK(eta_bw(p, t, p.mass + x) >= 0.0);
    }
  }
}

TEST_CASE("eta_bw vector form matches the scalar form") {
  const BreitWignerParams p(0.0, 2.0);
  const Eigen::ArrayXd w = Eigen::ArrayXd::LinSpaced(7, -3, 3);
  const Eigen::ArrayXd v = eta_bw(p, 0.8, w);
  for (Eigen::Index i = 0; i < w.size(); ++i) CHECK(v(i) == eta_bw(p, 0.8, w(i)));
}

TEST_CASE("eta_peak_bw") {
  const BreitWignerParams p(0.0, 2.0);
  CHECK(eta_peak_bw(p, 0.0) == 0.0);
  CHECK(eta_peak_bw(p, 1e3) == Approx(2.0 / (M_PI * 2.0)).epsilon(1e-14));
  CHECK(eta_peak_bw(p, 0.5) == Approx(oracle::kPeakAtTau / 2.0).epsilon(1e-13));
  double previous = 0.0;
  for (double t = 0.01; t < 20.0; t *= 1.3) {
    const double v = eta_peak_bw(p, t);
    CHECK(v > previous);
    previous = v;
  }
}

TEST_CASE("peak value follows (2 / pi Gamma)(1 - e^{-Gamma t / 2})^2") {
  for (double g : {0.3, 1.0, 4.0}) {
    const BreitWignerParams p(1.0, g);
    for (double t : {0.05, 0.7, 3.0, 12.0}) {
      const double closed = 2.0 / (M_PI * g) * std::pow(-std::expm1(-0.5 * g * t), 2);
      CHECK(std::abs(eta_peak_bw(p, t) - closed) <= 1e-12 * closed);
    }
  }
}

TEST_CASE("decay probability, closed and numeric") {
  const BreitWignerParams p(0.0, 1.0);
  CHECK(decay_probability_bw(p, 0.0) == 0.0);
  CHECK(decay_probability_bw(p, 1.0) == Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  const auto n = decay_probability_bw_numeric(p, 1.0);
  CHECK(std::abs(n.value - (1.0 - std::exp(-1.0))) < 1e-4);
  CHECK(n.in_range == Approx(n.value - n.tail));
}

TEST_CASE("unitarity of the closed forms under quadrature") {
  const BreitWignerParams p(5.0, 1.0);
  for (double t : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    const auto n = decay_probability_bw_numeric(p, t);
    CHECK(std::abs(n.value + std::norm(survival_amplitude_bw(p, t)) - 1.0) < 1e-6);
  }
}

TEST_CASE("eta_bw approaches the Lorentzian at long times") {
  const BreitWignerParams p(0.0, 1.0);
  double worst = 0.0;
  for (double w = -5.0; w <= 5.0; w += 0.01) worst = std::max(worst, std::abs(eta_bw(p, 100.0, w) - lorentzian(p, w)));
  CHECK(worst < 1e-3 * 2.0 / M_PI);
}

TEST_CASE("short_time_constant") {
  const double y = short_time_constant();
  CHECK(std::round(y * 100.0) / 100.0 == Approx(2.78));
  CHECK(y == Approx(2.7831).epsilon(1e-3 / 2.7831));
  CHECK(std::abs(y - std::sqrt(2.0) * std::sqrt(2.0 - 2.0 * std::cos(y))) < 1e-9);
  CHECK(y == Approx(oracle::kShortTimeConstant).epsilon(1e-12));
}

TEST_CASE("fwhm_bw golden values") {
  const BreitWignerParams p(0.0, 1.0);
  CHECK(fwhm_bw(p, 0.05) == Approx(oracle::kFwhmT0p05).epsilon(1e-10));
  CHECK(fwhm_bw(p, 0.1) == Approx(oracle::kFwhmT0p1).epsilon(1e-10));
  CHECK(fwhm_bw(p, 0.2) == Approx(oracle::kFwhmT0p2).epsilon(1e-10));
  CHECK(fwhm_bw(p, 0.5) == Approx(oracle::kFwhmT0p5).epsilon(1e-10));
  CHECK(fwhm_bw(p, 1.0) == Approx(oracle::kFwhmT1).epsilon(1e-10));
  CHECK(fwhm_bw(p, 3.0) == Approx(oracle::kFwhmT3).epsilon(1e-10));
  CHECK(fwhm_bw(p, 20.0) == Approx(oracle::kFwhmT20).epsilon(1e-10));
  CHECK(fwhm_bw(p, 100.0) == Approx(oracle::kFwhmT100).epsilon(1e-10));
}

TEST_CASE("fwhm_bw limits and scaling") {
  const BreitWignerParams p(7.0, 2.0);
  CHECK(fwhm_bw(p, 50.0) == Approx(2.0).epsilon(1e-2));
  CHECK(fwhm_bw(p, std::numeric_limits<double>::infinity()) == 2.0);
  CHECK(fwhm_bw(p, 0.05) == Approx(2.0 * oracle::kFwhmT0p1).epsilon(1e-10));
  CHECK(fwhm_bw(BreitWignerParams(0.0, 1.0), 0.1) * 0.1 == Approx(5.56).epsilon(1e-2));
  const double at_tau = fwhm_bw(BreitWignerParams(0.0, 1.0), 1.0);
  CHECK(at_tau > 1.0);
  CHECK(at_tau < fwhm_bw(BreitWignerParams(0.0, 1.0), 0.5));
  CHECK_THROWS_AS(fwhm_bw(p, 0.0), UndefinedWidthError);
  CHECK_THROWS_AS(fwhm_bw(p, -1.0), UndefinedWidthError);
}

TEST_CASE("fwhm_bw agrees with the sampled half-height width") {
  const BreitWignerParams p(0.0, 1.0);
  const auto set = sample_eta_bw(p, 1.0, EnergyGrid::centered(0.0, 25.0, 4001));
  const auto dist = set.distribution();
  CHECK(half_height_width(dist.omega, dist.eta, dist.peak_index()) == Approx(fwhm_bw(p, 1.0)).epsilon(1e-4));
  CHECK(set.normalized_values(2000) == Approx(1.0).epsilon(1e-14));
}
