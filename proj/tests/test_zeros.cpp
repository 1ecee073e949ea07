#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "selchow/epstein.hpp"
#include "selchow/pair.hpp"
#include "selchow/zeros.hpp"
#include "test_util.hpp"

using namespace selchow;
using testutil::check_close;

TEST_SUITE_BEGIN("zeros");

TEST_CASE("critical-line value: frozen anchor, reality guard") {
  const auto p = builtin_pair("zeta2");
  check_close(cx(hardy_z(p, 0.0)), cx(-3.97696622550651288), 1e-12);
  CHECK(std::isfinite(hardy_z(p, 3.7)));
  // pi-scaled dual: completed value picks up a phase off the real axis
  CHECK_THROWS_AS((void)hardy_z(builtin_pair("dchi4"), 1.0), reality_error);
}

TEST_CASE("sign-change scan halves the classical ordinates") {
  const auto p = builtin_pair("zeta2");
  auto f = [&](double t) { return hardy_z(p, t); };
  const auto zs = scan_zeros(f, 6.0, 13.0);
  REQUIRE(zs.size() == 3);
  const double want[3] = {7.0673625708673469, 10.511019819385777,
                          12.505428790072844};
  for (int i = 0; i < 3; ++i) {
    CHECK(zs[i].t_left <= zs[i].t_zero);
    CHECK(zs[i].t_zero <= zs[i].t_right);
    CHECK(std::abs(zs[i].t_zero - want[i]) < 1e-6);
    CHECK(zs[i].residual < 1e-5);
  }
  const auto one = scan_zeros(f, 6.9, 7.2, 0.05);
  REQUIRE(one.size() == 1);
  CHECK(std::abs(one[0].t_zero - want[0]) < 1e-6);
  CHECK_THROWS_AS((void)scan_zeros(f, 2.0, 2.0), outside_domain_error);
}

TEST_CASE("coefficient-file character pair: scan on the critical line") {
  const auto p = load_pair(std::string(SELCHOW_DATA_DIR) +
                           "/chi4_hardy.coeffs");
  check_close(cx(hardy_z(p, 0.0)), cx(0.869134810936030159104), 1e-10);
  auto f = [&](double t) { return hardy_z(p, t); };
  const auto zs = scan_zeros(f, 5.0, 11.0);
  REQUIRE(zs.size() == 2);
  CHECK(std::abs(zs[0].t_zero - 6.0209489046975966549) < 1e-6);
  CHECK(std::abs(zs[1].t_zero - 10.2437703041665545521) < 1e-6);
}

TEST_CASE("real zero inside the critical interval for y^2-heavy forms") {
  const auto z = bateman_zero(100.0);
  REQUIRE(bool(z));
  CHECK(std::abs(*z - 0.813367836786153061676) < 1e-10);
  CHECK_FALSE(bool(bateman_zero(1.0)));
  CHECK_THROWS_AS((void)bateman_zero(-2.0), outside_domain_error);
}

TEST_CASE("scaled diagonal series: zero appears past the threshold") {
  const auto p = builtin_pair("zeta2");
  const double thr = xi_threshold(p, p);
  const double s0 = real_zero_xi(p, p, 2.0 * thr);
  CHECK(s0 > 0.5);
  CHECK(s0 < 1.0);
  CHECK(std::abs(z2_sc(scale_pair(p, 2.0 * thr), p, cx(s0)).real()) < 1e-8);
  const auto entire =
      load_pair(std::string(SELCHOW_DATA_DIR) + "/tau.coeffs");
  CHECK_THROWS_AS((void)real_zero_xi(p, entire, 1.0), hypothesis_error);
  CHECK_THROWS_AS((void)real_zero_xi(p, p, -1.0), outside_domain_error);
}

TEST_CASE("shifted linear combination is odd and vanishes near 7.733") {
  const auto p = builtin_pair("zeta2");
  const std::vector<double> c{1.0, -1.0};
  const std::vector<double> tau{0.3, -0.3};
  CHECK(std::abs(shift_combination(p, c, tau, 0.0)) < 1e-9);
  auto f = [&](double t) { return shift_combination(p, c, tau, t); };
  const auto zs = scan_zeros(f, 7.5, 8.0, 0.1);
  REQUIRE(zs.size() == 1);
  CHECK(std::abs(zs[0].t_zero - 7.73300002857223) < 1e-6);
  CHECK_THROWS_AS((void)shift_combination(p, {1.0}, tau, 1.0),
                  invariant_violation);
  CHECK_THROWS_AS((void)shift_combination(p, {}, {}, 1.0),
                  invariant_violation);
}

TEST_CASE("growth-normalized probes") {
  const auto p = builtin_pair("zeta2");
  const double probe = lower_bound_probe(p, 0, 30.0);
  check_close(cx(probe),
              cx(std::abs(z2_sc(p, p, cx(0.5, 30.0))) / std::sqrt(30.0)),
              1e-12);
  CHECK(lower_bound_probe(p, 1, 8.0) > 0.0);
  check_close(cx(hecke8_probe(30.0)), cx(2.87578821338421310696), 1e-12);
  CHECK_THROWS_AS((void)lower_bound_probe(p, 3, 5.0), outside_domain_error);
  CHECK_THROWS_AS((void)lower_bound_probe(p, 0, 0.0), outside_domain_error);
  CHECK_THROWS_AS((void)hecke8_probe(0.0), outside_domain_error);
}

TEST_CASE("contour-integral certificate on the critical line") {
  const auto p = builtin_pair("zeta2");
  auto cert = critical_line_integral_check(p, 0, 0.5);
  CHECK(cert.pass);
  CHECK(cert.identity == "critical-line-integral");
  cert = critical_line_integral_check(p, 0, 0.0);
  CHECK(cert.pass);
  cert = critical_line_integral_check(p, 1, 0.5);
  CHECK(cert.pass);
  CHECK_THROWS_AS(
      (void)critical_line_integral_check(builtin_pair("zcomp"), 0, 1.0),
      not_class_a_error);
  CHECK_THROWS_AS((void)critical_line_integral_check(p, 5, 1.0),
                  outside_domain_error);
}

TEST_SUITE_END();
