#include "decay/bw.hpp"
#include "decay/numerics.hpp"
#include "oracle_values.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace decay;
using doctest::Approx;

TEST_CASE("integrate handles smooth and piecewise integrands") {
  CHECK(integrate([](double x) { return std::exp(x); }, Interval{0.0, 1.0}) == Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::abs(x); }, std::vector<double>{-1.0, 0.0, 2.0}) == Approx(2.5).epsilon(1e-12));
  CHECK(integrate([](double x) { return x; }, Interval{1.0, 0.0}) == Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("semi-infinite integrals") {
  CHECK(integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0) == Approx(1.0).epsilon(1e-10));
  CHECK(integrate_from_minus_infinity([](double x) { return 1.0 / (1.0 + x * x); }, 0.0) ==
        Approx(M_PI / 2).epsilon(1e-9));
}

TEST_CASE("integrate reports failure with its best estimate") {
  QuadratureSpec spec;
  spec.max_subdivisions = 3;
  spec.abs_tol = 1e-15;
  spec.rel_tol = 1e-15;
  try {
    integrate([](double x) { return 1.0 / std::sqrt(x); }, Interval{0.0, 1.0}, spec);
    FAIL("expected NumericalFailure");
  } catch (const NumericalFailure& e) {
    CHECK(e.estimate() > 1.0);
    CHECK(e.error() > 0.0);
  }
}

TEST_CASE("pv_integral examples") {
  auto pole = [](double x) { return 1.0 / (x - 1.0); };
  CHECK(std::abs(pv_integral(pole, 1.0, Interval{0.0, 2.0})) < 1e-12);
  CHECK(pv_integral(pole, 1.0, Interval{0.0, 3.0}) == Approx(std::log(2.0)).epsilon(1e-10));
  CHECK(pv_integral([](double x) { return x / (x - 1.0); }, 1.0, Interval{0.0, 2.0}) == Approx(2.0).epsilon(1e-10));
  CHECK_THROWS_AS(pv_integral(pole, 5.0, Interval{0.0, 2.0}), PreconditionError);
}

TEST_CASE("pv_integral is linear and vanishes for odd integrands") {
  auto f = [](double x) { return std::cos(x) / (x - 0.3); };
  auto g = [](double x) { return x * x / (x - 0.3); };
  const Interval d{-1.0, 2.0};
  const double combined = pv_integral([&](double x) { return 2.0 * f(x) - g(x); }, 0.3, d);
  CHECK(combined == Approx(2.0 * pv_integral(f, 0.3, d) - pv_integral(g, 0.3, d)).epsilon(1e-9));
  CHECK(std::abs(pv_integral([](double x) { return std::cos(x - 0.3) / (x - 0.3); }, 0.3, Interval{-0.7, 1.3})) < 1e-12);
}

TEST_CASE("fourier_integral examples") {
  const BreitWignerParams p(0.0, 1.0);
  auto lor = [&](double e) { return lorentzian(p, e); };
  CHECK(fourier_integral(lor, 0.0, Interval{-50.0, 50.0}).real() == Approx(oracle::kLorentzMass50).epsilon(1e-10));
  for (double t : {0.5, 1.0, 2.5, 5.0}) {
    const auto a = fourier_integral(lor, t, Interval{-200.0, 200.0});
    CHECK(std::abs(a - survival_amplitude_bw(p, t)) < 1e-3);
  }
  const double inside = 2.0 / M_PI * std::atan(400.0);
  CHECK(fourier_integral(lor, 0.0, Interval{-200.0, 200.0}).real() == Approx(inside).epsilon(1e-9));
  const auto box = fourier_integral([](double) { return 1.0; }, M_PI, Interval{-1.0, 1.0});
  CHECK(std::abs(box) < 1e-12);
}

TEST_CASE("fourier_integral at t = 0 is the plain integral and conjugates under t -> -t") {
  auto g = [](double e) { return std::exp(-e * e) * (1.0 + 0.3 * e); };
  const Interval d{-4.0, 5.0};
  CHECK(fourier_integral(g, 0.0, d).real() == Approx(integrate(g, d)).epsilon(1e-12));
  const auto plus = fourier_integral(g, 1.7, d);
  const auto minus = fourier_integral(g, -1.7, d);
  CHECK(std::abs(plus - std::conj(minus)) < 1e-12);
}

TEST_CASE("find_root examples") {
  CHECK(find_root([](double x) { return x * x - 2.0; }, RootBracket{1.0, 2.0}, 1e-12) ==
        Approx(std::sqrt(2.0)).epsilon(1e-11));
  CHECK(find_root([](double y) { return y - 2.0 * std::sqrt(2.0) * std::sin(0.5 * y); }, RootBracket{2.0, 3.0}, 1e-12) ==
        Approx(oracle::kShortTimeConstant).epsilon(1e-11));
  CHECK(find_root([](double x) { return std::cos(x); }, RootBracket{1.0, 2.0}, 1e-13) == Approx(M_PI / 2).epsilon(1e-12));
  CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, RootBracket{-1.0, 1.0}, 1e-9), PreconditionError);
}

TEST_CASE("half_height_width on a Lorentzian and a triangle") {
  const BreitWignerParams p(3.0, 1.0);
  const EnergyGrid grid = EnergyGrid::centered(3.0, 10.0, 2001);
  const Eigen::ArrayXd w = grid.nodes();
  const Eigen::ArrayXd l = lorentzian(p, w);
  CHECK(half_height_width(w, l, 1000) == Approx(1.0).epsilon(5e-3));

  Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(5, -2, 2);
  Eigen::ArrayXd tri = (1.0 - x.abs()).max(0.0);
  CHECK(half_height_width(x, tri, 2) == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("half_height_width ignores side lobes beyond the contiguous crossings") {
  const BreitWignerParams p(0.0, 1.0);
  const double t = 0.1;
  const Eigen::ArrayXd w = EnergyGrid::centered(0.0, 400.0, 40001).nodes();
  const Eigen::ArrayXd eta = eta_bw(p, t, w);
  CHECK(half_height_width(w, eta, 20000) == Approx(oracle::kFwhmT0p1).epsilon(1e-4));
}

TEST_CASE("half_height_width invariances and failures") {
  Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(101, -5, 5);
  Eigen::ArrayXd y = (-x.square()).exp();
  const double base = half_height_width(x, y, 50);
  CHECK(half_height_width(x, 7.0 * y, 50) == Approx(base).epsilon(1e-14));
  CHECK(half_height_width(x + 3.0, y, 50) == Approx(base).epsilon(1e-12));
  Eigen::ArrayXd narrow = Eigen::ArrayXd::LinSpaced(5, -0.2, 0.2);
  CHECK_THROWS_AS(half_height_width(narrow, (-narrow.square()).exp(), 2), RangeTooNarrowError);
  CHECK_THROWS_AS(half_height_width(x, y, 10), PreconditionError);
}
