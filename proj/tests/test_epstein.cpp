#include <cmath>
#include <numbers>

#include "doctest.h"
#include "selchow/epstein.hpp"
#include "selchow/specfun.hpp"
#include "test_util.hpp"

using namespace selchow;
using testutil::check_close;
using testutil::check_small;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_SUITE_BEGIN("epstein");

TEST_CASE("diagonal double series: frozen values for the zeta2 pair") {
  const auto p = builtin_pair("zeta2");
  check_close(z2_sc(p, p, cx(2.0)), cx(0.152660932362869835842), 1e-10);
  check_close(z2_sc(p, p, cx(0.75)), cx(-1.06766000515601793741), 1e-10);
  check_close(z2_sc(p, p, cx(-0.7)), cx(-0.0553910127123703920744), 1e-9);
  check_close(z2_sc(p, p, cx(4.0)), cx(0.0109882727971233926234), 1e-10);
  check_close(z2_sc(p, p, cx(0.5, 3.0)),
              cx(-0.428557640949657389778, 0.137193404688487326972), 1e-9);
  check_close(z2_sc(p, p, cx(0.0)), cx(-0.25), 1e-12);
}

TEST_CASE("diagonal double series: direct sum agreement") {
  const auto p = builtin_pair("zeta2");
  check_close(z2_direct(p, p, cx(2.5)), z2_sc(p, p, cx(2.5)), 1e-7);
  const auto s3 = builtin_pair("sigma3");
  check_close(z2_direct(p, s3, cx(6.0)), z2_sc(p, s3, cx(6.0)), 1e-7);
  CHECK_THROWS_AS((void)z2_direct(p, p, cx(0.8)),
                  outside_absolute_convergence_error);
}

TEST_CASE("diagonal double series: sigma3 pair and swap symmetry") {
  const auto p = builtin_pair("zeta2");
  const auto s3 = builtin_pair("sigma3");
  check_close(z2_sc(s3, s3, cx(10.0)), cx(1.0456270772021719e-10), 1e-8);
  const cx s(2.8, 1.1);
  check_close(z2_sc(p, s3, s), z2_sc(s3, p, s), 1e-9);
}

TEST_CASE("pole of the double series and its residue") {
  const auto p = builtin_pair("zeta2");
  try {
    (void)z2_sc(p, p, cx(1.0));
    FAIL("expected pole_error");
  } catch (const pole_error& e) {
    CHECK(e.location == doctest::Approx(1.0));
    check_close(e.residue, cx(0.25), 1e-12);
  }
  check_close(extract_residue([&](cx s) { return z2_sc(p, p, s); }, cx(1.0)),
              cx(0.25), 1e-8);
}

TEST_CASE("H sum reflection symmetry") {
  const auto p = builtin_pair("zeta2");
  const auto s3 = builtin_pair("sigma3");
  const cx s(1.2, 0.8);
  const cx rr(p.r + s3.r);
  check_close(h_sum(p, s3, s), h_sum(s3, p, rr - s), 1e-10);
  check_close(h_sum(p, p, s), h_sum(p, p, cx(2.0 * p.r) - s), 1e-10);
}

TEST_CASE("scaled series at the internally singular point") {
  const auto p = builtin_pair("zeta2");
  const double thr = xi_threshold(p, p);
  check_close(cx(thr), cx(49.7801925093925961212), 1e-10);
  check_close(value_at_r1(p, p, 2.0 * thr), cx(0.0977666047843542441387),
              1e-9);
  // sign flips across the threshold scale
  CHECK(value_at_r1(p, p, thr * 1.05).real() > 0.0);
  CHECK(value_at_r1(p, p, thr * 0.95).real() < 0.0);
  // exact-point evaluation delegates to the closed form
  const auto sp = scale_pair(p, 3.0);
  check_close(z2_sc(sp, p, cx(0.5)), value_at_r1(p, p, 3.0), 1e-9);
  // inside the guarded window the value stays smooth through r1
  const cx left = z2_sc(sp, p, cx(0.5 - 5e-4));
  const cx mid = z2_sc(sp, p, cx(0.5));
  const cx right = z2_sc(sp, p, cx(0.5 + 5e-4));
  check_small(left + right - 2.0 * mid, 1e-4);
}

TEST_CASE("dyadic towers and the four-square closed product") {
  const auto p = builtin_pair("zeta2");
  const cx s(3.0);
  check_close(zk_dyadic(p, 1, cx(2.0)), z2_sc(p, p, cx(2.0)), 1e-12);
  check_close(zk_dyadic(p, 2, s), cx(0.0298927028149351829883), 1e-8);
  check_close(zeta4_product(s), cx(14.8297826272297208865), 1e-12);
  // Z4 = pi^{-s} zeta4 / 16 links the tower to the closed product
  const cx w(2.4, 0.8);
  check_close(16.0 * std::exp(w * std::log(pi)) * zk_dyadic(p, 2, w),
              zeta4_product(w), 1e-7);
  // Laurent constant at s = 1 where (1 - 2^{2-2s}) kills the zeta pole:
  // lim = 8 * (2 log 2) * zeta(0) = -8 log 2
  const double l2 = std::log(2.0);
  check_close(zeta4_product(cx(1.0)), cx(-8.0 * l2), 1e-9);
  // zeros on Re s = 1 from the vanishing 2-factor
  const double t0 = pi / l2;
  const cx at_zero = zeta4_product(cx(1.0, t0));
  const cx scale = 8.0 * riemann_zeta(cx(1.0, t0)) * riemann_zeta(cx(0.0, t0));
  CHECK(std::abs(at_zero) < 1e-6 * std::max(1.0, std::abs(scale)));
  try {
    (void)zeta4_product(cx(2.0));
    FAIL("expected pole_error");
  } catch (const pole_error& e) {
    check_close(e.residue, cx(pi * pi), 1e-12);
  }
}

TEST_CASE("quadratic-form series: classical specialization") {
  const auto zc = builtin_pair("zcomp");
  const quadratic_form q{2.0, 1.0, 3.0};
  const cx s(1.3, 0.4);
  // knots sqrt(pi) n turn Q(lambda, mu) into pi Q(m, n)
  check_close(zq_sc(zc, zc, q, s),
              std::exp(-s * std::log(pi)) * classical_sc(q, s), 1e-9);
  check_close(zq_sc(zc, zc, q, cx(0.0)), cx(-1.0), 1e-12);
  try {
    (void)zq_sc(zc, zc, q, cx(1.0));
    FAIL("expected pole_error");
  } catch (const pole_error& e) {
    // 2 pi rho1 rho2 / sqrt(|d|) with rho = pi^{-1/2}
    check_close(e.residue, cx(2.0 / std::sqrt(23.0)), 1e-12);
  }
}

TEST_CASE("quadratic-form series: odd pairs and the weighted variant") {
  const auto lo = builtin_pair("lodd4");
  const quadratic_form q{1.0, 1.0, 1.0};
  check_close(zq_sc(lo, lo, q, cx(0.8, 0.6)),
              cx(-0.513809476584845001417, 0.105382348674985070546), 1e-9);
  check_close(zq_weighted(lo, lo, q, cx(1.1)), cx(1.72955335205613280589),
              1e-9);
  // first and second representations through the transposed form
  const quadratic_form q213{2.0, 1.0, 3.0};
  const cx s(1.4, -0.7);
  check_close(zq_sc(lo, lo, q213, s), zq_sc(lo, lo, q213.transpose(), s),
              1e-9);
  CHECK_THROWS_AS((void)zq_sc(lo, builtin_pair("zcomp"), q, s), parity_error);
}

TEST_CASE("classical Epstein zeta: frozen values across methods") {
  const quadratic_form i2{1.0, 0.0, 1.0};
  check_close(ep_ig(i2, cx(2.0)), cx(6.02681203969194012355), 1e-11);
  check_close(classical_sc(i2, cx(2.0)), cx(6.02681203969194012355), 1e-10);
  check_close(classical_epstein_direct(i2, cx(2.0)),
              cx(6.02681203969194012355), 1e-8);
  const quadratic_form q213{2.0, 1.0, 3.0};
  check_close(ep_ig(q213, cx(1.5)), cx(2.46826643019666796985), 1e-11);
  const quadratic_form q115{1.0, 1.0, 5.0};
  check_close(ep_ig(q115, cx(1.2, 0.7)),
              cx(1.3365770387608529387, -1.60945320323232903567), 1e-10);
  const quadratic_form q103{1.0, 0.0, 3.0};
  check_close(ep_ig(q103, cx(0.3, 1.1)),
              cx(-0.106551512225080638917, -1.12807416667945915214), 1e-10);
  check_close(classical_sc(q103, cx(0.3, 1.1)),
              cx(-0.106551512225080638917, -1.12807416667945915214), 1e-9);
  // special values and the pole
  check_close(ep_ig(q213, cx(0.0)), cx(-1.0), 1e-12);
  try {
    (void)ep_ig(q213, cx(1.0));
    FAIL("expected pole_error");
  } catch (const pole_error& e) {
    check_close(e.residue, cx(pi / std::sqrt(23.0 / 4.0)), 1e-12);
  }
  check_close(ep_ig(quadratic_form{1.0, 0.0, 100.0}, cx(0.7)),
              cx(0.547101483809348072261), 1e-10);
}

TEST_SUITE_END();
