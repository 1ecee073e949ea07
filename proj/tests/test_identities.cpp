#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "doctest.h"
#include "selchow/identities.hpp"
#include "selchow/pair.hpp"
#include "selchow/specfun.hpp"
#include "test_util.hpp"

using namespace selchow;
using testutil::check_close;
using testutil::check_small;

namespace {

constexpr double pi = std::numbers::pi;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(bool(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_SUITE_BEGIN("identities");

TEST_CASE("Koshliakov-type K0 reflection: frozen anchors") {
  const auto p = builtin_pair("zeta2");
  auto cert = verify_koshliakov(p, p, 1.4);
  CHECK(cert.pass);
  check_close(cert.lhs, cx(-0.00928926252278852152231), 1e-8);
  cert = verify_koshliakov(p, p, 0.6);
  CHECK(cert.pass);
  check_close(cert.lhs, cx(0.029831304332068266817), 1e-8);
  const auto d4 = builtin_pair("dchi4");
  cert = verify_koshliakov(d4, d4, 1.3);
  CHECK(cert.pass);
  check_close(cert.lhs, cx(-0.0198363840081519412289), 1e-8);
}

TEST_CASE("K0 leg of the tau self-convolution reflects with weight 24") {
  const auto p = load_pair(std::string(SELCHOW_DATA_DIR) + "/tau.coeffs");
  // leg(x) = sum d_tau(n) K0(4 pi x sqrt(n)) with convolution coefficients
  auto leg = [&](double x) {
    double acc = 0.0;
    for (long n = 1; n <= 58; ++n) {
      double d = 0.0;
      for (long m = 1; m <= n; ++m)
        if (n % m == 0)
          d += p.phi_seq.coef(m).real() * p.phi_seq.coef(n / m).real();
      acc += d * bessel_k(cx(0.0), 4.0 * pi * x * std::sqrt(double(n))).real();
    }
    return acc;
  };
  const double l = leg(1.15);
  check_close(cx(l), cx(1.5706507356828565415e-7), 1e-9);
  check_close(cx(std::pow(1.15, -24.0) * leg(1.0 / 1.15)), cx(l), 1e-9);
  CHECK(verify_koshliakov(p, p, 1.15).pass);
}

TEST_CASE("Guinand-type reflection: frozen anchor and entire input") {
  const auto p = builtin_pair("zeta2");
  const auto cert = verify_guinand(p, p, cx(0.8, 0.3), 1.3);
  CHECK(cert.pass);
  check_close(cert.lhs,
              cx(-0.00613711935662578850544, 0.000374983637183557297561),
              1e-8);
  CHECK(verify_guinand(builtin_pair("sigma3"), p, cx(1.7, -0.5), 0.9).pass);
}

TEST_CASE("two-character resummation: frozen leg value") {
  const auto cert = verify_guinand_two_characters(5, 5, cx(0.7), 1.3);
  CHECK(cert.pass);
  check_close(cert.lhs, cx(0.0220328129867190793282), 1e-8);
}

TEST_CASE("log-weighted divisor sums: single and double character") {
  CHECK(verify_soni(0.7).pass);
  auto cert = verify_soni_double(5, 5, 0.7);
  CHECK(cert.pass);
  check_close(cert.rhs, cx(2.2892332171792015237e-6), 1e-8);
  cert = verify_soni_double(5, 5, 1.1);
  CHECK(cert.pass);
  check_close(cert.rhs, cx(9.2068325811194791329e-8), 1e-7);
}

TEST_CASE("four-square and octonary coefficient identities") {
  auto cert = verify_jacobi4("r4:4");
  CHECK(cert.pass);
  const double z3 = 1.2020569031595942854;
  const double z4 = pi * pi * pi * pi / 90.0;
  check_close(cert.rhs, cx(8.0 * (1.0 - std::pow(4.0, -3.0)) * z4 * z3),
              1e-9);
  CHECK(verify_jacobi4("hecke8:5").pass);
  CHECK_THROWS_AS((void)verify_jacobi4("r4:2.5"), outside_domain_error);
}

TEST_CASE("embedded certificate grids all pass") {
  for (const auto& family : grid_families()) {
    CAPTURE(family);
    const auto certs = run_grid(embedded_grid(family));
    CHECK(certs.size() >= 12);
    for (const auto& c : certs) {
      std::string where = c.identity;
      for (const auto& kv : c.params) where += " " + kv.first + "=" + kv.second;
      INFO("row ", where);
      INFO("rel ", c.rel_residual, " abs ", c.abs_residual);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("grid files on disk match the compiled-in copies") {
  const auto fams = grid_families();
  CHECK(fams.size() == 9);
  for (const auto& family : fams) {
    CAPTURE(family);
    const auto from_disk =
        parse_grid(read_file(std::string(SELCHOW_GRID_DIR) + "/" + family +
                             ".grid"));
    const auto compiled = parse_grid(embedded_grid(family));
    REQUIRE(from_disk.size() == compiled.size());
    for (std::size_t i = 0; i < compiled.size(); ++i)
      CHECK(from_disk[i] == compiled[i]);
  }
}

TEST_CASE("grid parsing rejects malformed input") {
  CHECK_THROWS_AS((void)embedded_grid("no-such-family"), parse_error);
  CHECK_THROWS_AS((void)parse_grid("family=fe pair\n"), parse_error);
  grid_row bad{{"family", "unknown"}};
  CHECK_THROWS_AS((void)run_grid_row(bad), parse_error);
}

TEST_SUITE_END();
