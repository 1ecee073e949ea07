#pragma once

#include <complex>

#include "selchow/errors.hpp"
#include "selchow/options.hpp"

namespace selchow {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243104;

// Gamma function (Lanczos, reflection for Re s < 1/2).  Throws pole_error at
// non-positive integers.
cx gamma(cx s);

// Reciprocal gamma: entire; returns exactly 0 within 5e-13 of a
// non-positive integer, else 1/gamma(s).
cx rgamma(cx s);

// Digamma (reflection for Re s < 1/2, recurrence up to Re s > 10, then the
// asymptotic Bernoulli series).
cx digamma(cx s);

// Riemann zeta via Euler-Maclaurin with reflection for Re s < -1/2.
// Throws pole_error at s = 1.
cx riemann_zeta(cx s);

// Hurwitz zeta(s, a) for a > 0, same Euler-Maclaurin core.  Throws
// pole_error at s = 1 and non_positive_argument_error for a <= 0.
cx hurwitz_zeta(cx s, double a);

// d/ds zeta(s): complex-step for real s, central differences otherwise.
cx riemann_zeta_deriv(cx s);

// Upper incomplete gamma(a, x) for x > 0 and complex a: continued fraction
// when x dominates, recursion through E1 near non-positive integer a,
// else series complement.
cx gamma_upper(cx a, double x);

// Modified Bessel K_nu(x) for x > 0, complex order (|Im nu| <= 500),
// via tanh-sinh quadrature of the cosh integral representation.
cx bessel_k(cx nu, double x, const quadrature_spec& q = {});

}  // namespace selchow
