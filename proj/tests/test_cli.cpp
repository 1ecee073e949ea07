#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "selchow/pair.hpp"
#include "test_util.hpp"

using selchow::cx;
using testutil::check_close;

namespace {

struct cli_result {
  int status = -1;
  std::string out;
};

cli_result run_cli(const std::string& args) {
  const std::string cmd =
      std::string(SELCHOW_CLI_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  cli_result r;
  char buf[512];
  std::size_t nread = 0;
  while ((nread = std::fread(buf, 1, sizeof buf, pipe)) > 0)
    r.out.append(buf, nread);
  const int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

cx labeled_value(const std::string& out, const std::string& label) {
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag != label) continue;
    double re = 0.0, im = 0.0;
    ls >> re >> im;
    REQUIRE(bool(ls));
    return {re, im};
  }
  FAIL("label '", label, "' not found in output:\n", out);
  return {};
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("eval prints the requested expansion of the double series") {
  const auto r = run_cli("eval --pair zeta2 --s 2,0");
  CHECK(r.status == 0);
  check_close(labeled_value(r.out, "sc1"), cx(0.152660932362869835842),
              1e-12);
}

TEST_CASE("eval --method all cross-checks the classical Epstein value") {
  const auto r = run_cli("eval --form 1,0,1 --s 2,0 --method all");
  CHECK(r.status == 0);
  const cx want(6.02681203969194012355);
  check_close(labeled_value(r.out, "direct"), want, 1e-7);
  check_close(labeled_value(r.out, "sc1"), want, 1e-11);
  check_close(labeled_value(r.out, "sc2"), want, 1e-10);
}

TEST_CASE("verify runs the embedded grid and reports every row") {
  const auto r = run_cli("verify --identity fe");
  CHECK(r.status == 0);
  CHECK(r.out.find("passed 13/13") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("verify accepts an explicit grid file") {
  namespace fs = std::filesystem;
  const auto path = fs::temp_directory_path() / "selchow_cli_test.grid";
  {
    std::ofstream out(path);
    out << "# one-row grid\nfamily=fe pair=zeta2 s=0.7,1.1\n";
  }
  const auto r = run_cli("verify --identity fe --grid " + path.string());
  fs::remove(path);
  CHECK(r.status == 0);
  CHECK(r.out.find("passed 1/1") != std::string::npos);
  CHECK(run_cli("verify --identity fe --grid /no/such/file.grid").status ==
        2);
}

TEST_CASE("zeros real reports the critical-interval zero or none") {
  auto r = run_cli("zeros real --form 1,0,100");
  CHECK(r.status == 0);
  check_close(labeled_value(r.out, "sigma"), cx(0.813367836786153061676),
              1e-9);
  r = run_cli("zeros real --form 1,0,1");
  CHECK(r.status == 0);
  CHECK(r.out.find("none") != std::string::npos);
}

TEST_CASE("zeros scan brackets a critical-line sign change") {
  const auto r =
      run_cli("zeros scan --pair zeta2 --t-min 6.9 --t-max 7.2 --step 0.05");
  CHECK(r.status == 0);
  CHECK(r.out.find("count 1") != std::string::npos);
  check_close(labeled_value(r.out, "zero"), cx(7.0673625708673469), 1e-6);
}

TEST_CASE("zeros probe evaluates the growth-normalized scales") {
  const auto r = run_cli("zeros probe --mode hecke8 --t 30");
  CHECK(r.status == 0);
  check_close(labeled_value(r.out, "probe"), cx(2.87578821338421310696),
              1e-11);
  CHECK(run_cli("zeros probe --pair zeta2 --k 0 --t 30").status == 0);
}

TEST_CASE("usage problems exit with code 2") {
  CHECK(run_cli("eval --pair zeta2 --s nope").status == 2);
  CHECK(run_cli("eval --pair zeta2").status == 2);
  CHECK(run_cli("frobnicate").status == 2);
  CHECK(run_cli("eval --form 2,1,3 --pair zcomp --s 1.5 --method direct")
            .status == 2);
}

TEST_CASE("evaluation failures exit with code 3") {
  CHECK(run_cli("eval --pair zeta2 --s 1,0").status == 3);
}

TEST_SUITE_END();
