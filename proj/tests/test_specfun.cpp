#include <cmath>
#include <numbers>

#include "doctest.h"
#include "selchow/specfun.hpp"
#include "test_util.hpp"

using namespace selchow;
using testutil::check_close;
using testutil::check_small;

namespace {

constexpr double pi = std::numbers::pi;

// Independent zeta oracle: accelerated alternating (eta) series with
// Chebyshev weights, valid for Re s > 0 away from s = 1.
cx zeta_oracle(cx s) {
  const int n = 400;
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = 0.5 * (d + 1.0 / d);
  double b = -1.0, c = -d;
  cx acc = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    acc += c * std::exp(-s * std::log(double(k + 1)));
    b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0));
  }
  return acc / (d * (1.0 - std::exp((1.0 - s) * std::log(2.0))));
}

}  // namespace

TEST_SUITE_BEGIN("specfun");

TEST_CASE("gamma matches frozen reference values") {
  check_close(gamma(cx(0.5, 14.1347)),
              cx(-1.44597629011760664963e-10, -5.52290992555532575352e-10),
              1e-12);
  check_close(gamma(cx(-2.3, 0.7)),
              cx(-0.0622750720136883463791, -0.274869820381396768648), 1e-12);
  check_close(gamma(cx(0.5)), cx(std::sqrt(pi)), 1e-14);
}

TEST_CASE("gamma recurrence, reflection, and reciprocal") {
  const cx pts[] = {{0.3, 1.7}, {-1.4, 0.6}, {2.9, -3.3}, {0.1, -0.2}};
  for (cx s : pts) {
    check_close(gamma(s + 1.0), s * gamma(s), 1e-13);
    check_close(gamma(s) * gamma(1.0 - s), pi / std::sin(pi * s), 1e-12);
    check_close(gamma(s) * rgamma(s), cx(1.0), 1e-13);
  }
  CHECK(rgamma(cx(-3.0)) == cx(0.0));
  CHECK(rgamma(cx(0.0)) == cx(0.0));
  CHECK_THROWS_AS((void)gamma(cx(0.0)), pole_error);
  CHECK_THROWS_AS((void)gamma(cx(-5.0)), pole_error);
}

TEST_CASE("digamma matches frozen reference values") {
  check_close(digamma(cx(0.5)), cx(-1.96351002602142347944), 1e-13);
  check_close(digamma(cx(3.2, -1.1)),
              cx(1.07353348116573744525, -0.383546539643374354013), 1e-13);
  // recurrence and reflection
  const cx s(0.7, 2.1);
  check_close(digamma(s + 1.0), digamma(s) + 1.0 / s, 1e-13);
  check_close(digamma(1.0 - s) - digamma(s), pi / std::tan(pi * s), 1e-12);
}

TEST_CASE("riemann zeta matches frozen reference values") {
  check_close(riemann_zeta(cx(0.5)), cx(-1.46035450880958681289), 1e-13);
  check_close(riemann_zeta(cx(3.0)), cx(1.2020569031595942854), 1e-13);
  check_close(riemann_zeta(cx(0.5, 40.0)),
              cx(0.793044952561928671965, -1.04127461465106502005), 1e-12);
  check_close(riemann_zeta(cx(-6.5)), cx(0.00274676793953686875842), 1e-12);
  CHECK_THROWS_AS((void)riemann_zeta(cx(1.0)), pole_error);
}

TEST_CASE("riemann zeta agrees with the alternating-series oracle") {
  const cx pts[] = {{2.0, 0.0}, {0.5, 0.0},  {0.5, 14.0},
                    {1.5, 8.0}, {0.2, -5.0}, {3.7, 21.0}};
  for (cx s : pts) check_close(riemann_zeta(s), zeta_oracle(s), 1e-11);
}

TEST_CASE("hurwitz zeta matches frozen reference values") {
  check_close(hurwitz_zeta(cx(2.0), 0.25), cx(17.1973291545071107393), 1e-13);
  check_close(hurwitz_zeta(cx(-1.5), 0.7), cx(0.0234782743331614824101),
              1e-12);
  check_close(hurwitz_zeta(cx(0.5, 8.0), 0.3),
              cx(-1.87711433998685611705, -1.23808739858135367092), 1e-12);
  check_close(hurwitz_zeta(cx(3.3, 1.0), 1.0), riemann_zeta(cx(3.3, 1.0)),
              1e-13);
  CHECK_THROWS_AS((void)hurwitz_zeta(cx(2.0), -1.0),
                  non_positive_argument_error);
  CHECK_THROWS_AS((void)hurwitz_zeta(cx(1.0), 0.5), pole_error);
}

TEST_CASE("zeta derivative matches central differences") {
  const cx s(2.2, 1.3);
  const double h = 1e-6;
  const cx want =
      (riemann_zeta(s + h) - riemann_zeta(s - h)) / (2.0 * h);
  check_close(riemann_zeta_deriv(s), want, 1e-8);
  const cx sr(-0.5);
  check_close(riemann_zeta_deriv(sr),
              (riemann_zeta(sr + 1e-6) - riemann_zeta(sr - 1e-6)) / 2e-6,
              1e-8);
}

TEST_CASE("upper incomplete gamma matches frozen reference values") {
  check_close(gamma_upper(cx(1.5), 2.3), cx(0.18038447324695800458), 1e-13);
  check_close(gamma_upper(cx(0.5), 0.8), cx(0.364953938775864449909), 1e-13);
  check_close(gamma_upper(cx(2.5, 1.5), 4.0),
              cx(-0.154447957403645007854, 0.123567781181720324396), 1e-12);
  check_close(gamma_upper(cx(-1.7, 0.3), 0.02),
              cx(229.406460789834836378, -362.530905626804745408), 1e-11);
  check_close(gamma_upper(cx(-2.0), 0.01), cx(4902.76564184665092211), 1e-11);
  check_close(gamma_upper(cx(0.0), 1.3), cx(0.135450957849129139167), 1e-12);
}

TEST_CASE("upper incomplete gamma recurrence and limits") {
  const cx as[] = {{1.2, 0.0}, {0.4, 2.0}, {-0.7, 1.1}};
  const double xs[] = {0.3, 2.0, 9.0};
  for (cx a : as)
    for (double x : xs)
      check_close(gamma_upper(a + 1.0, x),
                  a * gamma_upper(a, x) + std::pow(x, a.real()) *
                      std::exp(cx(0.0, a.imag() * std::log(x))) *
                      std::exp(-x),
                  1e-11);
  check_close(gamma_upper(cx(1.7), 1e-12), gamma(cx(1.7)), 1e-10);
}

TEST_CASE("bessel K matches frozen reference values") {
  check_close(bessel_k(cx(0.0), 1.0), cx(0.421024438240708333336), 1e-12);
  check_close(bessel_k(cx(0.5), 2.0), cx(0.119937771968061447368), 1e-12);
  check_close(bessel_k(cx(0.0, 2.0), 3.0), cx(0.0191567283269773429616),
              1e-11);
  check_close(bessel_k(cx(1.3, 0.4), 2.2),
              cx(0.117098939302044344053, 0.0230003866945921225822), 1e-11);
  check_close(bessel_k(cx(0.0), 10.0), cx(1.77800623161676518113e-5), 1e-11);
  check_close(bessel_k(cx(3.0), 0.35), cx(183.773649767481159415), 1e-11);
}

TEST_CASE("bessel K order symmetry and recurrence") {
  const cx nus[] = {{0.7, 0.0}, {1.2, 2.5}, {0.0, 4.0}};
  for (cx nu : nus) {
    check_close(bessel_k(nu, 1.7), bessel_k(-nu, 1.7), 1e-12);
    check_close(bessel_k(nu + 1.0, 2.4),
                bessel_k(nu - 1.0, 2.4) +
                    (2.0 * nu / 2.4) * bessel_k(nu, 2.4),
                1e-10);
  }
  // closed form at half-integer order: K_{1/2}(x) = sqrt(pi/(2x)) e^{-x}
  const double x = 3.1;
  check_close(bessel_k(cx(0.5), x),
              cx(std::sqrt(pi / (2.0 * x)) * std::exp(-x)), 1e-12);
}

TEST_SUITE_END();
