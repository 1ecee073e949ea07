#pragma once

#include "selchow/pair.hpp"

namespace selchow {

// Positive definite binary quadratic form a m^2 + b m n + c n^2.
struct quadratic_form {
  double a = 1.0, b = 0.0, c = 1.0;
  double discriminant() const { return b * b - 4.0 * a * c; }
  quadratic_form transpose() const { return {c, b, a}; }
  quadratic_form inverse() const { return {c, -b, a}; }
  double operator()(double m, double n) const {
    return a * m * m + b * m * n + c * n * n;
  }
};

// ---------------------------------------------------------------------------
// Diagonal double series Z2(s) = sum_{(m,n) != 0} a1(m) a2(n)
// (lambda_m + lambda'_n)^{-s} over n >= 0 with the edge coefficients
// a(0) = -phi(0) (class A).

// Direct summation inside the joint absolute-convergence half-plane
// (outside_absolute_convergence_error otherwise); square shells with a
// power-law tail estimate.
cx z2_direct(const functional_equation_pair& p1,
             const functional_equation_pair& p2, cx s,
             const eval_options& opt = {});

// Bessel part of the Selberg--Chowla-type expansion:
//   h_sum(P, Q, sigma) = sum b_P(m) a_Q(n) (mu_P(m)/lambda_Q(n))^{(sigma-r_P)/2}
//                        K_{r_P - sigma}(2 sqrt(mu_P(m) lambda_Q(n))).
cx h_sum(const functional_equation_pair& P, const functional_equation_pair& Q,
         cx sigma, const eval_options& opt = {});

// Analytic continuation of Z2 by the Selberg--Chowla-type expansion that
// resolves the first pair (the "swap" symmetry Z2(p1,p2) = Z2(p2,p1) gives
// the second expansion).  Throws pole_error at s = r1 + r2 and guards the
// internally singular window around s = r1.
cx z2_sc(const functional_equation_pair& p1,
         const functional_equation_pair& p2, cx s,
         const eval_options& opt = {});

// Z2 for the xi-scaled first pair evaluated exactly at s = r1, where the
// expansion above is singular term-by-term.
cx value_at_r1(const functional_equation_pair& p1,
               const functional_equation_pair& p2, double xi = 1.0,
               const eval_options& opt = {});

// Scale factor at which Z2^xi(r1) changes sign (closed form from the
// Laurent data); needs a simple pole of phi1 at r1.
double xi_threshold(const functional_equation_pair& p1,
                    const functional_equation_pair& p2,
                    const eval_options& opt = {});

// ---------------------------------------------------------------------------
// Dyadic towers: Z2 of a pair with itself is again a class-A pair.

// sum_{k'} over the 2^k-fold knot sums: k = 1 is z2_sc(p, p, s); k >= 2
// composes the pair first.  k is capped at 3.
cx zk_dyadic(const functional_equation_pair& p, int k, cx s,
             const eval_options& opt = {});

// Closed product form 8 (1 - 2^{2-2s}) zeta(s) zeta(s-1) of the
// four-square counting series, with the Laurent expansion near s = 1 and a
// pole_error at s = 2.
cx zeta4_product(cx s);

// ---------------------------------------------------------------------------
// Quadratic-form double series ZQ(s) = sum_{(m,n) != 0} a1(m) a2(n)
// Q(lambda_m, lambda'_n)^{-s}, lambda here meaning the half-gamma pair's
// knot index weights; both pairs must share parity (parity_error).

// Selberg--Chowla-type continuation of ZQ; even parity has the single pole
// at s = 1 (guarded with its residue 2 pi rho1 rho2 / sqrt(|d|)), odd
// parity is entire.
cx zq_sc(const functional_equation_pair& p1,
         const functional_equation_pair& p2, const quadratic_form& q, cx s,
         const eval_options& opt = {});

// Weighted odd variant: coefficients picked up by one knot factor each,
// entire in s.
cx zq_weighted(const functional_equation_pair& p1,
               const functional_equation_pair& p2, const quadratic_form& q,
               cx s, const eval_options& opt = {});

// ---------------------------------------------------------------------------
// Classical Epstein zeta function of a positive form, normalized as
// Z(s; Q) = sum_{(m,n) != 0} Q(m, n)^{-s}.

// Incomplete-gamma representation: entire continuation apart from the
// simple pole at s = 1 (residue pi / sqrt(det)); Z(0) = -1.
cx ep_ig(const quadratic_form& q, cx s, const eval_options& opt = {});

// Fourier--Bessel expansion of Z(s; Q) (fast for moderate |s|).
cx classical_sc(const quadratic_form& q, cx s, const eval_options& opt = {});

// Direct shell summation with tail extrapolation; needs Re s > 1.05.
cx classical_epstein_direct(const quadratic_form& q, cx s,
                            const eval_options& opt = {});

}  // namespace selchow
