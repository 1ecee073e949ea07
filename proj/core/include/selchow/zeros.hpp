#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "selchow/identities.hpp"
#include "selchow/pair.hpp"

namespace selchow {

// Completed-function value on the critical line of a self-dual pair:
// Z(t) = Delta(rho_c + it) phi(rho_c + it) with rho_c = r/2 (class A) or
// 1/2.  Raises reality_error when the value has a non-real part beyond
// rounding scale (non-self-dual input).
double hardy_z(const functional_equation_pair& p, double t,
               const eval_options& opt = {});

struct zero_bracket {
  double t_left = 0.0;
  double t_right = 0.0;
  double t_zero = 0.0;    // bisected to 1e-8
  double residual = 0.0;  // |f(t_zero)|
};

// Sign-change scan of a real function over [t_min, t_max]; step <= 0 picks
// one from a coarse prescan.  Sign changes below the noise floor
// (3 rel_tol median |f|) are discarded.  Grid evaluation is parallel.
std::vector<zero_bracket> scan_zeros(const std::function<double(double)>& f,
                                     double t_min, double t_max,
                                     double step = 0.0,
                                     const eval_options& opt = {});

// Real zero of Z(sigma; m^2 + c n^2) on the critical interval (1/2, 1);
// nullopt when the values at both ends share their sign.
std::optional<double> bateman_zero(double c, const eval_options& opt = {});

// Real zero of Z2^xi on (r1, r1 + r2) for a scaled first pair; requires
// phi2(0) < 0 (hypothesis_error otherwise).
double real_zero_xi(const functional_equation_pair& p1,
                    const functional_equation_pair& p2, double xi,
                    const eval_options& opt = {});

// F(t) = sum_j c_j Z(t + tau_j) for a self-dual pair.
double shift_combination(const functional_equation_pair& p,
                         const std::vector<double>& coeffs,
                         const std::vector<double>& taus, double t,
                         const eval_options& opt = {});

// |Z2 of the k-fold composed pair on its critical line| divided by the
// growth scale |t|^{(2^{k+1}-1)/2}.
double lower_bound_probe(const functional_equation_pair& p, int k, double t,
                         const eval_options& opt = {});

// Same probe for the degree-4 octonary coefficient series
// 240 2^{-s} zeta(s) zeta(s-3) at s = 2 + it (scale |t|^{3/2}).
double hecke8_probe(double t);

// Contour-integral identity for Gamma(s) Z2(s) of the k-fold composed pair
// at s = r_L + 2 i t: residue terms plus the critical-line convolution
// integral.  Returns a certificate at relative tolerance tol.
identity_certificate critical_line_integral_check(
    const functional_equation_pair& p, int k, double t, double tol = 1e-6,
    const eval_options& opt = {});

}  // namespace selchow
