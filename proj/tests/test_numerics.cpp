#include "doctest.h"
#include "phasekit/numerics.hpp"

using namespace phasekit;

namespace {

// Independent gamma oracle: alternating series on [0,1] plus a Kahan-summed
// composite Simpson rule on [1, b] with b scaled to the argument.
double gamma_oracle(double x) {
  double head = 0.0;
  for (int k = 0; k < 60; ++k) {
    double kf = 1.0;
    for (int j = 2; j <= k; ++j) kf *= j;
    head += ((k % 2) ? -1.0 : 1.0) / (kf * (x + k));
  }
  const double a = 1.0, b = std::max(70.0, 4.0 * x + 50.0);
  const int n = 500000;
  const double h = (b - a) / n;
  auto f = [x](double t) { return std::pow(t, x - 1.0) * std::exp(-t); };
  double acc = f(a) + f(b), comp = 0.0;
  for (int i = 1; i < n; ++i) {
    double term = ((i % 2) ? 4.0 : 2.0) * f(a + i * h) - comp;
    double next = acc + term;
    comp = (next - acc) - term;
    acc = next;
  }
  return head + acc * h / 3.0;
}

}  // namespace

TEST_CASE("gamma_real: special values") {
  CHECK(gamma_real(0.5) == doctest::Approx(1.77245385090552).epsilon(1e-13));
  CHECK(gamma_real(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_real(2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_real(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  // High-precision oracle value, frozen.
  CHECK(gamma_real(0.75) == doctest::Approx(1.22541670246517).epsilon(1e-13));
  CHECK(gamma_oracle(0.75) == doctest::Approx(1.22541670246517).epsilon(1e-12));
}

TEST_CASE("gamma_real: 1e-13 relative accuracy across [0.05, 30]") {
  for (int i = 0; i <= 24; ++i) {
    double x = 0.05 * std::pow(30.0 / 0.05, i / 24.0);
    double ref = gamma_oracle(x);
    CHECK(std::abs(gamma_real(x) - ref) <= 1e-13 * ref);
  }
}

TEST_CASE("gamma_real: domain error for x <= 0") {
  CHECK_THROWS_AS(gamma_real(0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_real(-1.5), std::domain_error);
}

TEST_CASE("solve_monotone_root: basic roots") {
  auto r1 = solve_monotone_root([](double k) { return k * k - 1.0; }, 0.0, 2.0);
  CHECK(r1 == doctest::Approx(1.0).epsilon(1e-13));
  auto r2 = solve_monotone_root([](double k) { return k * k - k; }, 0.5, 2.0);
  CHECK(r2 == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("solve_monotone_root: balance equation for the N=1, rho=2 constants") {
  // (sqrt(pi)/2) K^2 - K/2 - sqrt(pi)/4 = 0; bisection oracle value frozen.
  double a = std::sqrt(pi) / 2.0, b = 0.5, c = std::sqrt(pi) / 4.0;
  double K = solve_monotone_root([&](double k) { return a * k * k - b * k - c; }, 0.0, 10.0);
  CHECK(K == doctest::Approx(1.043394648299510).epsilon(1e-12));
  CHECK(std::abs(a * K * K - b * K - c) <= 1e-12);
}

TEST_CASE("solve_monotone_root: error paths") {
  CHECK_THROWS_AS(solve_monotone_root([](double x) { return x * x + 1.0; }, -1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("nth_derivative: polynomials of degree <= 6 exact to 1e-7 for n <= 3") {
  SmoothFn poly = SmoothFn::polynomial({0.3, -1.2, 0.7, 2.0, -0.4, 0.05, 0.6});
  DerivativeSettings ds;
  ds.interval_length = 2.0;
  for (double s : {-0.7, 0.0, 0.4, 1.3}) {
    for (int n = 1; n <= 3; ++n) {
      double exact = poly(s, n);
      double num = nth_derivative([&](double x) { return poly(x, 0); }, s, n, ds);
      CHECK(std::abs(num - exact) <= 1e-7 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("nth_derivative: smooth non-polynomial cases") {
  DerivativeSettings ds;
  auto cube = [](double s) { return s * s * s; };
  CHECK(nth_derivative(cube, 1.0, 2, ds) == doctest::Approx(6.0).epsilon(1e-8));
  auto ex = [](double s) { return std::exp(s); };
  CHECK(nth_derivative(ex, 0.0, 3, ds) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("nth_derivative: one-sided stencils at domain ends") {
  DerivativeSettings ds;
  ds.domain_lo = 0.0;
  ds.domain_hi = 1.0;
  auto f = [](double s) { return std::exp(2.0 * s); };
  CHECK(nth_derivative(f, 0.0, 1, ds) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(nth_derivative(f, 0.0, 2, ds) == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(nth_derivative(f, 1.0, 1, ds) ==
        doctest::Approx(2.0 * std::exp(2.0)).epsilon(1e-8));
  ds.domain_hi = 1e-12;  // no room for any stencil
  CHECK_THROWS_AS(nth_derivative(f, 0.0, 1, ds), std::domain_error);
}

TEST_CASE("nth_derivative: complex-valued functions") {
  DerivativeSettings ds;
  auto f = [](double s) { return cis(3.0 * s); };
  Complex d = nth_derivative(f, 0.4, 1, ds);
  Complex exact = Complex(0.0, 3.0) * cis(3.0 * 0.4);
  CHECK(std::abs(d - exact) <= 1e-8);
}

TEST_CASE("integrate_adaptive: closed forms") {
  QuadratureSettings qs;
  CHECK(integrate_adaptive([](double) { return 1.0; }, 0.0, 1.0, qs) ==
        doctest::Approx(1.0).epsilon(1e-13));
  Complex v = integrate_adaptive([](double p) { return cis(10.0 * p); }, 0.0, 1.0, qs);
  Complex ref = (cis(10.0) - 1.0) / Complex(0.0, 10.0);
  CHECK(std::abs(v - ref) <= 1e-12);
}

TEST_CASE("integrate_adaptive: cos(100 p^2) against frozen composite-rule value") {
  // Fixed 10^6-point composite Simpson rule, run once and frozen.
  QuadratureSettings qs;
  double v = integrate_adaptive([](double p) { return std::cos(100.0 * p * p); }, 0.0, 1.0, qs);
  CHECK(v == doctest::Approx(0.0601125184813409).epsilon(1e-11));
}

TEST_CASE("integrate_adaptive: budget exhaustion carries best estimate") {
  QuadratureSettings qs;
  qs.rel_tol = 1e-14;
  qs.abs_tol = 1e-300;
  qs.max_subdivisions = 3;
  bool threw = false;
  try {
    integrate_adaptive([](double p) { return std::cos(200.0 * p * p); }, 0.0, 3.0, qs);
  } catch (const QuadratureBudgetError& e) {
    threw = true;
    CHECK(e.error_estimate > 0.0);
    CHECK(std::isfinite(e.estimate.real()));
  }
  CHECK(threw);
}

TEST_CASE("integrate_endpoint_singular: weights") {
  QuadratureSettings qs;
  CHECK(integrate_endpoint_singular([](double) { return 1.0; }, 1.0, 0.5, qs) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(integrate_endpoint_singular([](double) { return 1.0; }, 1.0, 0.75, qs) ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("integrate_endpoint_singular: e^s against the series oracle") {
  // int_0^1 s^{-1/2} e^s ds = sum_k 2/((2k+1) k!), partial sums to 1e-12.
  double series = 0.0, kf = 1.0;
  for (int k = 0; k < 30; ++k) {
    if (k > 0) kf *= k;
    series += 2.0 / ((2.0 * k + 1.0) * kf);
  }
  CHECK(series == doctest::Approx(2.9253034918).epsilon(1e-10));
  QuadratureSettings qs;
  double v = integrate_endpoint_singular([](double s) { return std::exp(s); }, 1.0, 0.5, qs);
  CHECK(v == doctest::Approx(series).epsilon(1e-11));
}

TEST_CASE("integrate_endpoint_singular: mu = 1 equals plain adaptive") {
  QuadratureSettings qs;
  qs.rel_tol = 1e-13;
  auto g = [](double s) { return std::cos(3.0 * s) + s; };
  double a = integrate_endpoint_singular(g, 2.0, 1.0, qs);
  double b = integrate_adaptive(g, 0.0, 2.0, qs);
  CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
}

TEST_CASE("quadrature invariant: halving rel_tol never worsens frozen-fixture error") {
  const double fixture = 0.0601125184813409;
  auto f = [](double p) { return std::cos(100.0 * p * p); };
  double prev_err = std::numeric_limits<double>::infinity();
  for (double rel : {1e-4, 5e-5, 2.5e-5, 1.25e-5, 6.25e-6, 1e-8, 1e-10}) {
    QuadratureSettings qs;
    qs.rel_tol = rel;
    qs.abs_tol = 1e-300;
    double err = std::abs(integrate_adaptive(f, 0.0, 1.0, qs) - fixture);
    CHECK(err <= prev_err + 1e-14);
    prev_err = err;
  }
}
