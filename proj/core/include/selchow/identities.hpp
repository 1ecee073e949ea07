#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "selchow/epstein.hpp"
#include "selchow/pair.hpp"

namespace selchow {

// Outcome of one identity evaluation at one parameter point.
struct identity_certificate {
  std::string identity;
  std::vector<std::pair<std::string, std::string>> params;
  cx lhs = 0.0;
  cx rhs = 0.0;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

// Fills the residuals and the pass flag: relative check against
// max(|lhs|, |rhs|) when that scale exceeds 1e-8, else absolute <= 1e-10.
identity_certificate make_certificate(
    std::string identity,
    std::vector<std::pair<std::string, std::string>> params, cx lhs, cx rhs,
    double tol);

// ---------------------------------------------------------------------------
// Identity families.  Each evaluates both sides independently and returns a
// certificate; tolerances default to 1e-8 relative.

// Delta(s) phi(s) = Delta(rfe - s) psi(rfe - s), rfe = r (class A) or 1.
identity_certificate verify_fe(const functional_equation_pair& p, cx s,
                               double tol = 1e-8,
                               const eval_options& opt = {});

// Modular relation of the exponential series: sum a(n) e^{-lambda_n z} =
// z^{-r} sum b(n) e^{-mu_n / z} + phi(0) + sum_p Gamma(p) rho_p z^{-p}
// (class A), z > 0.
identity_certificate verify_bochner(const functional_equation_pair& p,
                                    double z, double tol = 1e-8,
                                    const eval_options& opt = {});

// Gauss-kernel reflection of a half-gamma pair's theta series, with scale
// alpha > 0, shift beta and argument x > 0.
identity_certificate verify_theta(const functional_equation_pair& p, double x,
                                  double alpha, double beta,
                                  double tol = 1e-8,
                                  const eval_options& opt = {});

// Cross-checks of the Z2 expansion.  Modes: "swap" (first-pair vs
// second-pair expansion), "fe" (Gamma(s) Z2(s; a1, a2) against
// Gamma(r1+r2-s) Z2(r1+r2-s; b1, b2)), "hrefl" (reflection of the Bessel
// part alone).
identity_certificate verify_selberg_chowla(const functional_equation_pair& p1,
                                           const functional_equation_pair& p2,
                                           cx s, const std::string& mode,
                                           double tol = 1e-8,
                                           const eval_options& opt = {});

// Same cross-checks for the quadratic-form double series.  Modes: "swap"
// (transposed form with the pairs exchanged) and "fe" (completed series
// against its reflection through the inverse form).
identity_certificate verify_selberg_chowla_q(
    const functional_equation_pair& p1, const functional_equation_pair& p2,
    const quadratic_form& q, cx s, const std::string& mode, double tol = 1e-8,
    const eval_options& opt = {});

// Quadratic-argument transformation: sum a(n) over (a lambda_n^2 +- b
// lambda_n + c)^{-nu} against the cosine/sine Bessel expansion.
identity_certificate verify_watson(const functional_equation_pair& p,
                                   const quadratic_form& q, double nu,
                                   double tol = 1e-8,
                                   const eval_options& opt = {});

// Two-pair Bessel-kernel reflection with parameter x > 0.
identity_certificate verify_guinand(const functional_equation_pair& p1,
                                    const functional_equation_pair& p2, cx s,
                                    double x, double tol = 1e-8,
                                    const eval_options& opt = {});

// Classical divisor-function case, alpha beta = pi^2.
identity_certificate verify_guinand_classical(cx s, double alpha,
                                              double tol = 1e-8,
                                              const eval_options& opt = {});

// Even-primitive-character case with fundamental discriminants d1, d2 > 0.
identity_certificate verify_guinand_two_characters(long d1, long d2, cx s,
                                                   double a,
                                                   double tol = 1e-8,
                                                   const eval_options& opt = {});

// Equal-r K0-kernel reflection (logarithmic secondary terms).
identity_certificate verify_koshliakov(const functional_equation_pair& p1,
                                       const functional_equation_pair& p2,
                                       double x, double tol = 1e-8,
                                       const eval_options& opt = {});

// K0 reflection for a product of two even characters.
identity_certificate verify_koshliakov_double(long d1, long d2, double x,
                                              double tol = 1e-8,
                                              const eval_options& opt = {});

// Divisor sum with logarithmic weights against a K0 series, parameter
// alpha > 0 (excluded_point_error on alpha in 2 pi Z).
identity_certificate verify_soni(double alpha, double tol = 1e-8,
                                 const eval_options& opt = {});

// Same shape for a product of two even characters, both sides summable.
identity_certificate verify_soni_double(long d1, long d2, double alpha,
                                        double tol = 1e-8,
                                        const eval_options& opt = {});

// Sum-of-squares coefficient identities: mode "r4" (four squares against
// the zeta product) or "hecke8" (octonary form enumeration against
// 240 sigma_3 and the zeta product).
identity_certificate verify_jacobi4(const std::string& mode,
                                    double tol = 1e-8,
                                    const eval_options& opt = {});

// ---------------------------------------------------------------------------
// Grid files: one row per check, "key=value" tokens separated by spaces,
// '#' comments.  Every row carries family=<name>; remaining keys are the
// family's parameters.

using grid_row = std::map<std::string, std::string>;

std::vector<grid_row> parse_grid(const std::string& text);

// Text of the compiled-in grid for a family; parse_error for unknown names.
const char* embedded_grid(const std::string& family);

// All compiled-in family names.
std::vector<std::string> grid_families();

// Dispatches one row to its family (tol key optional, tol_override > 0
// wins over both).
identity_certificate run_grid_row(const grid_row& row,
                                  double tol_override = 0.0,
                                  const eval_options& opt = {});

// Runs every row of a grid text.
std::vector<identity_certificate> run_grid(const std::string& text,
                                           double tol_override = 0.0,
                                           const eval_options& opt = {});

}  // namespace selchow
