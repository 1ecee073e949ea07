#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"
#include "selchow/character.hpp"
#include "selchow/identities.hpp"
#include "selchow/pair.hpp"
#include "selchow/specfun.hpp"
#include "test_util.hpp"

using namespace selchow;
using testutil::check_close;
using testutil::check_small;

namespace {

constexpr double pi = std::numbers::pi;

std::string data_path(const char* name) {
  return std::string(SELCHOW_DATA_DIR) + "/" + name;
}

// Same pair with the analytic hooks removed: forces the incomplete-gamma
// splitting so it can be compared against the closed form.
functional_equation_pair strip_hooks(functional_equation_pair p) {
  p.phi_closed = nullptr;
  p.psi_closed = nullptr;
  return p;
}

}  // namespace

TEST_SUITE_BEGIN("series");

TEST_CASE("zeta2 builtin structure and closed values") {
  const auto p = builtin_pair("zeta2");
  CHECK(p.class_a());
  CHECK(p.r == doctest::Approx(0.5));
  check_close(p.rho(), cx(0.5 / std::sqrt(pi)), 1e-14);
  check_close(p.phi_at_zero, cx(-0.5), 1e-14);
  check_close(p.a0(), cx(0.5), 1e-14);
  // phi(3/2) = pi^{-3/2} zeta(3) against the frozen zeta value
  check_close(eval_phi(p, cx(1.5)),
              cx(std::pow(pi, -1.5) * 1.2020569031595942854), 1e-12);
  CHECK_THROWS_AS((void)eval_phi(p, cx(0.5)), pole_error);
}

TEST_CASE("incomplete-gamma splitting agrees with the closed hooks") {
  const cx pts[] = {{1.2, 0.0}, {0.25, 2.0}, {-0.7, 1.3}, {2.0, -4.0}};
  for (const char* name : {"zeta2", "sigma3", "dchi4", "leven:5", "lodd4"}) {
    const auto p = builtin_pair(name);
    const auto bare = strip_hooks(p);
    for (cx s : pts)
      check_close(eval_phi(bare, s), eval_phi(p, s), 1e-9);
  }
}

TEST_CASE("trivial zeros and the completed value across them") {
  const auto p = builtin_pair("zeta2");
  check_small(eval_phi(p, cx(-1.0)), 1e-10);
  check_small(eval_phi(p, cx(-2.0)), 1e-10);
  // Gamma(s) phi(s) continues across s = -1 to Gamma(r-s) psi(r-s).
  const cx via_fe = gamma(cx(1.5)) * eval_phi(p, cx(1.5));
  check_close(completed_total(p, cx(-1.0)), via_fe, 1e-9);
  check_close(eval_gamma_phi(p, cx(-1.0)), via_fe, 1e-9);
  // s = 0 is a genuine pole of the completed function when phi(0) != 0.
  CHECK_THROWS_AS((void)eval_gamma_phi(p, cx(0.0)), pole_error);
}

TEST_CASE("sigma_k builtins") {
  const auto p = builtin_pair("sigma3");
  CHECK(p.r == doctest::Approx(4.0));
  check_close(p.phi_at_zero, cx(-1.0 / 240.0), 1e-14);
  check_close(p.rho(), cx(1.0 / 1440.0), 1e-13);
  // phi(5) = (2 pi)^{-5} zeta(5) zeta(2)
  const double want = std::pow(2.0 * pi, -5.0) * 1.03692775514336992633 *
                      (pi * pi / 6.0);
  check_close(eval_phi(p, cx(5.0)), cx(want), 1e-11);
  CHECK(builtin_pair("sigma:7").r == doctest::Approx(8.0));
  CHECK_THROWS_AS((void)builtin_pair("sigma:4"), parse_error);
}

TEST_CASE("character module") {
  const auto chi4 = kronecker_character(-4);
  CHECK(chi4.modulus == 4);
  CHECK(!chi4.even);
  CHECK(chi4(1) == doctest::Approx(1.0));
  CHECK(chi4(3) == doctest::Approx(-1.0));
  CHECK(chi4(2) == doctest::Approx(0.0));
  check_close(gauss_sum(chi4), cx(0.0, 2.0), 1e-12);

  const auto chi5 = kronecker_character(5);
  CHECK(chi5.even);
  CHECK(chi5(2) == doctest::Approx(-1.0));
  CHECK(chi5(4) == doctest::Approx(1.0));
  check_close(gauss_sum(chi5), cx(std::sqrt(5.0)), 1e-12);

  check_close(dirichlet_l(cx(2.0), chi4), cx(0.915965594177219015055), 1e-12);
  check_close(dirichlet_l(cx(0.5), chi4), cx(0.667691457189609176659), 1e-12);

  // kronecker symbol against Euler's criterion for an odd prime
  for (long a = 1; a < 11; ++a) {
    long e = 1, base = a % 11;
    for (int i = 0; i < 5; ++i) e = (e * base) % 11;  // a^((11-1)/2) mod 11
    const int want = e == 1 ? 1 : -1;
    CHECK(kronecker_symbol(a, 11) == want);
  }
  CHECK(is_fundamental_discriminant(5));
  CHECK(is_fundamental_discriminant(-4));
  CHECK(!is_fundamental_discriminant(6));

  const auto dchi4 = builtin_pair("dchi4");
  check_close(dchi4.rho(), cx(pi / 4.0), 1e-13);
  check_close(dchi4.phi_at_zero, cx(-0.25), 1e-13);
  const double want2 = (pi * pi / 6.0) * 0.915965594177219015055;
  check_close(eval_phi(dchi4, cx(2.0)), cx(want2), 1e-11);
}

TEST_CASE("coefficient file: tau pair") {
  const auto p = load_pair(data_path("tau.coeffs"));
  CHECK(p.class_a());
  CHECK(p.r == doctest::Approx(12.0));
  CHECK(p.phi_poles.empty());
  CHECK(p.phi_at_zero == cx(0.0));
  // truncated reference at 21 digits; the 60-term file is looser
  check_close(eval_phi(p, cx(8.0)), cx(3.83154601560412968485e-7), 1e-3);
  const auto fe = verify_fe(p, cx(6.0, 2.0));
  CHECK(fe.pass);
  // modular reflection of the exponential series at x = 1.15
  CHECK(verify_bochner(p, 1.15).pass);
}

TEST_CASE("coefficient file: odd character pair") {
  const auto p = load_pair(data_path("chi4_hardy.coeffs"));
  CHECK(!p.class_a());
  CHECK(p.delta == delta_factor_kind::gamma_half1);
  CHECK(p.phi_at_zero == cx(0.0));
  CHECK(verify_fe(p, cx(0.3, 1.1)).pass);
  // phi(s) = (pi/4)^{-s/2} L(s, chi4)
  const auto chi4 = kronecker_character(-4);
  const cx s(2.0);
  check_close(eval_phi(p, s),
              std::pow(pi / 4.0, -1.0) * dirichlet_l(s, chi4), 1e-11);
}

TEST_CASE("coefficient file: quarter lattice pair") {
  const auto p = load_pair(data_path("gaussian_quarter.coeffs"));
  CHECK(p.class_a());
  check_close(p.rho(), cx(0.25), 1e-14);
  check_close(p.phi_at_zero, cx(-0.25), 1e-13);
  check_close(eval_phi(p, cx(2.0)), cx(0.152660932362869835842), 1e-11);
  check_close(eval_phi(p, cx(0.5, 3.0)),
              cx(-0.428557640949657389778, 0.137193404688487326972), 1e-10);
}

TEST_CASE("load_pair rejects malformed headers") {
  CHECK_THROWS_AS((void)load_pair(data_path("missing.coeffs")), parse_error);
}

TEST_CASE("scale, dual, and induced transforms") {
  const auto p = builtin_pair("zeta2");
  const auto sp = scale_pair(p, 2.0);
  const cx s(1.4, 0.9);
  check_close(eval_phi(sp, s), std::exp(-s * std::log(2.0)) * eval_phi(p, s),
              1e-11);
  CHECK(verify_fe(sp, s).pass);

  const auto d4 = builtin_pair("dchi4");
  const auto dd = dual(d4);
  // psi(s) = pi^{1-2s} zeta(s) L(s, chi4)
  const cx w(1.8, -0.4);
  check_close(eval_phi(dd, w),
              std::exp((1.0 - 2.0 * w) * std::log(pi)) * eval_phi(d4, w),
              1e-10);

  const auto ind = induced_pair(builtin_pair("lodd4"));
  CHECK(ind.class_a());
  CHECK(ind.r == doctest::Approx(1.5));
  CHECK(verify_fe(ind, cx(0.75, 1.3)).pass);
}

TEST_CASE("composed diagonal pair") {
  const auto p = builtin_pair("zeta2");
  const auto comp = compose_pair(p);
  CHECK(comp.r == doctest::Approx(1.0));
  check_close(comp.rho(), cx(0.25), 1e-10);
  check_close(comp.phi_at_zero, cx(-0.25), 1e-13);
  check_close(eval_phi(comp, cx(2.0)), cx(0.152660932362869835842), 1e-10);
  CHECK(verify_fe(comp, cx(0.6, 1.1), 1e-7).pass);
}

TEST_CASE("grouped knot products match brute-force divisor pairs") {
  const auto d4 = builtin_pair("dchi4");
  const auto& seq = d4.phi_seq;
  seq.ensure(64);
  const auto grid = product_sequence(seq, seq, combine_mode::product, 30.5);
  for (const auto& e : grid) {
    const long nu = std::lround(e.value);
    CHECK(std::abs(e.value - double(nu)) < 1e-9);
    std::size_t found = 0;
    for (long m = 1; m <= nu; ++m)
      if (nu % m == 0) {
        ++found;
        bool present = false;
        for (const auto& [i, j] : e.contrib)
          present |= (long(i) == m && long(j) == nu / m);
        CHECK(present);
      }
    CHECK(e.contrib.size() == found);
  }
}

TEST_CASE("residue extraction") {
  auto f = [](cx s) { return 3.5 / (s - 2.0) + std::cos(s); };
  check_close(extract_residue(f, cx(2.0)), cx(3.5), 1e-9);
  auto g = [](cx s) { return 1.0 / ((s - 2.0) * (s - 2.0)); };
  CHECK_THROWS_AS((void)extract_residue(g, cx(2.0)), not_simple_pole_error);
}

TEST_SUITE_END();
