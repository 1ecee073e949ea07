// Command-line front end: evaluate the double series, run identity
// certificate grids, and locate zeros.  Exit codes: 0 success, 2 bad
// usage/input, 3 evaluation failure, 4 failing certificate.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "selchow/csv.hpp"
#include "selchow/epstein.hpp"
#include "selchow/identities.hpp"
#include "selchow/pair.hpp"
#include "selchow/specfun.hpp"
#include "selchow/zeros.hpp"

namespace {

using namespace selchow;

functional_equation_pair resolve_pair(const std::string& spec) {
  if (spec.find('/') != std::string::npos || std::filesystem::exists(spec))
    return load_pair(spec);
  return builtin_pair(spec);
}

cx parse_point(const std::string& text) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) return cx(std::stod(text));
    return cx(std::stod(text.substr(0, comma)),
              std::stod(text.substr(comma + 1)));
  } catch (const std::exception&) {
    throw parse_error("bad point '" + text + "' (want re or re,im)");
  }
}

quadratic_form parse_form(const std::string& text) {
  double v[3];
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const auto comma = text.find(',', pos);
    const bool last = i == 2;
    if (last != (comma == std::string::npos))
      throw parse_error("bad form '" + text + "' (want a,b,c)");
    const std::string tok =
        last ? text.substr(pos) : text.substr(pos, comma - pos);
    try {
      v[i] = std::stod(tok);
    } catch (const std::exception&) {
      throw parse_error("bad form coefficient '" + tok + "'");
    }
    pos = comma + 1;
  }
  const quadratic_form q{v[0], v[1], v[2]};
  if (!(q.a > 0.0) || !(q.discriminant() < 0.0))
    throw parse_error("form must be positive definite");
  return q;
}

void print_value(const std::string& label, cx v) {
  std::printf("%s %s %s\n", label.c_str(), format_number(v.real()).c_str(),
              format_number(v.imag()).c_str());
}

int run_eval(const std::string& pair_spec, const std::string& pair2_spec,
             const std::string& form_spec, const std::string& s_spec,
             const std::string& method) {
  const cx s = parse_point(s_spec);
  const bool want_all = method == "all";
  const bool has_form = !form_spec.empty();
  const bool has_pair = !pair_spec.empty();
  if (!has_pair && !has_form)
    throw parse_error("eval needs --pair and/or --form");

  std::optional<quadratic_form> q;
  if (has_form) q = parse_form(form_spec);

  auto run_one = [&](const std::string& label,
                     const std::function<cx()>& fn) {
    if (!want_all && label != method) return;
    if (want_all) {
      try {
        print_value(label, fn());
      } catch (const std::exception& e) {
        std::printf("%s error %s\n", label.c_str(), e.what());
      }
    } else {
      print_value(label, fn());
    }
  };

  if (!has_pair) {  // classical Epstein zeta of the form
    run_one("direct", [&] { return classical_epstein_direct(*q, s); });
    run_one("sc1", [&] { return ep_ig(*q, s); });
    run_one("sc2", [&] { return classical_sc(*q, s); });
    return 0;
  }

  const auto p1 = resolve_pair(pair_spec);
  const auto p2 = pair2_spec.empty() ? p1 : resolve_pair(pair2_spec);
  if (has_form) {  // quadratic-form double series
    if (method == "direct")
      throw parse_error("no direct method for --form with pairs");
    run_one("sc1", [&] { return zq_sc(p1, p2, *q, s); });
    run_one("sc2", [&] { return zq_sc(p2, p1, q->transpose(), s); });
    return 0;
  }
  run_one("direct", [&] { return z2_direct(p1, p2, s); });
  run_one("sc1", [&] { return z2_sc(p1, p2, s); });
  run_one("sc2", [&] { return z2_sc(p2, p1, s); });
  return 0;
}

std::string join_params(
    const std::vector<std::pair<std::string, std::string>>& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ' ';
    out += k + "=" + v;
  }
  return out;
}

int run_verify(const std::string& identity, const std::string& grid_path,
               double tol) {
  std::string text;
  if (grid_path.empty()) {
    text = embedded_grid(identity);
  } else {
    std::ifstream in(grid_path);
    if (!in) throw parse_error("cannot open grid file: " + grid_path);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  const std::vector<grid_row> rows = parse_grid(text);
  std::size_t passed = 0;
  for (const auto& row : rows) {
    const identity_certificate cert = run_grid_row(row, tol);
    passed += cert.pass ? 1 : 0;
    std::printf("%s %s %s rel=%.3e abs=%.3e\n", cert.pass ? "pass" : "FAIL",
                cert.identity.c_str(), join_params(cert.params).c_str(),
                cert.rel_residual, cert.abs_residual);
  }
  std::printf("passed %zu/%zu\n", passed, rows.size());
  return passed == rows.size() ? 0 : 4;
}

int run_zeros_scan(const std::string& pair_spec, double t_min, double t_max,
                   double step) {
  const auto p = resolve_pair(pair_spec);
  const auto zeros =
      scan_zeros([&](double t) { return hardy_z(p, t); }, t_min, t_max, step);
  for (const auto& z : zeros)
    std::printf("zero %s residual %s\n", format_number(z.t_zero).c_str(),
                format_number(z.residual).c_str());
  std::printf("count %zu\n", zeros.size());
  return 0;
}

int run_zeros_real(const std::string& form_spec) {
  const quadratic_form q = parse_form(form_spec);
  if (q.a != 1.0 || q.b != 0.0)
    throw parse_error("real-zero search expects a form 1,0,c");
  const auto sigma = bateman_zero(q.c);
  if (!sigma) {
    std::printf("none\n");
    return 0;
  }
  std::printf("sigma %s\n", format_number(*sigma).c_str());
  return 0;
}

int run_zeros_xi(const std::string& pair_spec, const std::string& pair2_spec,
                 double xi) {
  const auto p1 = resolve_pair(pair_spec);
  const auto p2 = pair2_spec.empty() ? p1 : resolve_pair(pair2_spec);
  std::printf("sigma %s\n", format_number(real_zero_xi(p1, p2, xi)).c_str());
  return 0;
}

int run_zeros_probe(const std::string& pair_spec, const std::string& mode,
                    int k, double t) {
  if (mode == "hecke8") {
    std::printf("probe %s\n", format_number(hecke8_probe(t)).c_str());
    return 0;
  }
  if (pair_spec.empty()) throw parse_error("probe needs --pair or --mode");
  const auto p = resolve_pair(pair_spec);
  std::printf("probe %s\n",
              format_number(lower_bound_probe(p, k, t)).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double Dirichlet series, identity certificates, and zeros"};
  app.require_subcommand(1);

  std::string pair_spec, pair2_spec, form_spec, s_spec, method = "sc1";
  auto* ev = app.add_subcommand("eval", "Evaluate a double series value");
  ev->add_option("--pair", pair_spec, "Builtin pair name or coefficient file");
  ev->add_option("--pair2", pair2_spec, "Second pair (defaults to --pair)");
  ev->add_option("--form", form_spec,
                 "Quadratic form a,b,c (alone: classical Epstein zeta)");
  ev->add_option("--s", s_spec, "Evaluation point re[,im]")->required();
  ev->add_option("--method", method, "direct|sc1|sc2|all (default sc1)")
      ->check(CLI::IsMember({"direct", "sc1", "sc2", "all"}));

  std::string identity, grid_path;
  double tol = 0.0;
  auto* vf = app.add_subcommand("verify", "Run an identity certificate grid");
  vf->add_option("--identity", identity, "Identity family name")->required();
  vf->add_option("--grid", grid_path, "Grid file (default: embedded grid)");
  vf->add_option("--tol", tol, "Tolerance override for every row");

  auto* zr = app.add_subcommand("zeros", "Zero location");
  zr->require_subcommand(1);
  std::string z_pair, z_pair2, z_form, z_mode;
  double t_min = 0.0, t_max = 0.0, step = 0.0, xi = 1.0, t = 0.0;
  int k = 0;
  auto* zs = zr->add_subcommand("scan", "Critical-line sign-change scan");
  zs->add_option("--pair", z_pair)->required();
  zs->add_option("--t-min", t_min)->required();
  zs->add_option("--t-max", t_max)->required();
  zs->add_option("--step", step, "Grid step (default: auto)");
  auto* zreal = zr->add_subcommand("real", "Real zero on (1/2, 1)");
  zreal->add_option("--form", z_form, "Form 1,0,c")->required();
  auto* zxi = zr->add_subcommand("xi", "Real zero of the scaled series");
  zxi->add_option("--pair", z_pair)->required();
  zxi->add_option("--pair2", z_pair2);
  zxi->add_option("--xi", xi, "Scale factor")->required();
  auto* zp = zr->add_subcommand("probe", "Growth-scale probe on the line");
  zp->add_option("--pair", z_pair);
  zp->add_option("--k", k, "Composition depth 0..2");
  zp->add_option("--t", t)->required();
  zp->add_option("--mode", z_mode, "hecke8: degree-4 coefficient probe")
      ->check(CLI::IsMember({"hecke8"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (ev->parsed())
      return run_eval(pair_spec, pair2_spec, form_spec, s_spec, method);
    if (vf->parsed()) return run_verify(identity, grid_path, tol);
    if (zs->parsed()) return run_zeros_scan(z_pair, t_min, t_max, step);
    if (zreal->parsed()) return run_zeros_real(z_form);
    if (zxi->parsed()) return run_zeros_xi(z_pair, z_pair2, xi);
    if (zp->parsed()) return run_zeros_probe(z_pair, z_mode, k, t);
  } catch (const parse_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
