#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "selchow/errors.hpp"
#include "selchow/options.hpp"

namespace selchow {

// Gamma factor completing the Dirichlet series: Gamma(s), Gamma(s/2) or
// Gamma((s+1)/2).
enum class delta_factor_kind { gamma, gamma_half0, gamma_half1 };

struct pair_pole {
  double location;
  cx residue;
};

// One arithmetical side: coefficients a(n) against a strictly increasing
// sequence of positive knots lambda(n), n >= 1.  Sequences can carry
// generators so they extend on demand.
struct coefficient_sequence {
  mutable std::vector<double> lambda;  // knot n stored at index n-1
  mutable std::vector<cx> a;
  double tail_bound_exponent = 0.0;  // |a(n)| = O(lambda_n^expo) truncation bound

  std::function<double(std::size_t)> gen_lambda;  // 1-based
  std::function<cx(std::size_t)> gen_a;
  // Optional batch filler (sieves): writes a(lo..hi) into out[0..hi-lo].
  std::function<void(std::size_t, std::size_t, std::vector<cx>&)> gen_a_block;
  std::size_t hard_cap = 2000000;

  std::size_t size() const { return lambda.size(); }
  bool extendable() const { return static_cast<bool>(gen_lambda); }
  void ensure(std::size_t n) const;
  // Number of knots with lambda <= x, extending as needed; accuracy_error
  // if the stored list ends before x and cannot be extended.
  std::size_t count_below(double x) const;
  double lam(std::size_t n) const { return lambda[n - 1]; }
  cx coef(std::size_t n) const { return a[n - 1]; }
};

// A Dirichlet series phi(s) = sum a(n) lambda_n^{-s} together with its
// partner psi under the gamma-factor functional equation
//   Delta(s) phi(s) = Delta(r - s) psi(r - s)        (Delta = Gamma)
//   Delta(s) phi(s) = Delta(1 - s) psi(1 - s)        (Delta = Gamma((s+d)/2))
struct functional_equation_pair {
  std::string name;
  coefficient_sequence phi_seq;  // a(n), lambda(n)
  coefficient_sequence psi_seq;  // b(n), mu(n)
  double r = 1.0;                // reflection parameter (1 for half-gamma kinds)
  double sigma_a = 1.0;          // abscissa of absolute convergence of phi
  double sigma_b = 1.0;
  delta_factor_kind delta = delta_factor_kind::gamma;
  std::vector<pair_pole> phi_poles;  // poles of phi (empty if entire)
  std::vector<pair_pole> psi_poles;
  cx phi_at_zero = 0.0;
  cx psi_at_zero = 0.0;
  std::function<cx(cx)> phi_closed;  // optional analytic hooks
  std::function<cx(cx)> psi_closed;
  std::optional<cx> laurent_r;       // constant Laurent term of phi at r
  std::optional<cx> laurent_r_dual;  // same for psi
  std::optional<cx> phi_prime_at_zero;

  bool class_a() const { return delta == delta_factor_kind::gamma; }
  double delta_param() const {
    return delta == delta_factor_kind::gamma_half1 ? 1.0 : 0.0;
  }
  // Edge coefficients of the associated theta/double series.
  cx a0() const;
  cx b0() const;
  // Residue of phi (resp. psi) at s = r; 0 when entire.
  cx rho() const;
  cx rho_dual() const;
};

// The pair's gamma factor Delta(s) evaluated at s.
cx delta_factor(const functional_equation_pair& p, cx s);

// Swap the two sides of the functional equation.
functional_equation_pair dual(const functional_equation_pair& p);

// Knot scaling lambda -> xi lambda (class A only): the partner picks up
// b -> xi^{-r} b, mu -> mu/xi, and the analytic data transforms alongside.
functional_equation_pair scale_pair(const functional_equation_pair& p,
                                    double xi);

// Diagonal square of a class-A pair: the edge-inclusive double series over
// (lambda_m + lambda_n) becomes a new class-A pair with r doubled.  Knots
// are kept up to lambda_cap.
functional_equation_pair compose_pair(const functional_equation_pair& p,
                                      double lambda_cap = 4000.0,
                                      const eval_options& opt = {});

// Weighted lift of a half-gamma odd pair to a class-A pair:
// A(n) = a(n) lambda_n against lambda_n^2, with r = 3/2.
functional_equation_pair induced_pair(const functional_equation_pair& p);

// Built-in pairs: zeta2, sigma3, sigma5, sigma:<k> (odd k >= 3),
// dchi4, dchi:<d>, leven:<d>, zcomp (= leven:1), lodd4, lodd:<d>.
functional_equation_pair builtin_pair(const std::string& name);

// Self-dual pair from a coefficient file (see README for the format).
functional_equation_pair load_pair(const std::string& path);

// Analytic continuation of phi(s) via the incomplete-gamma splitting of
// Delta(s) phi(s); dispatches to closed hooks or the direct sum when they
// are cheaper.  Throws pole_error within 1e-4 of a pole of phi.
cx eval_phi(const functional_equation_pair& p, cx s,
            const eval_options& opt = {});

// Completed function Delta(s) phi(s).  Finite at the poles of Delta that
// the trivial zeros of phi cancel; poles of the completed function itself
// (s = 0 when phi(0) != 0, and the poles of phi) raise pole_error.
cx eval_gamma_phi(const functional_equation_pair& p, cx s,
                  const eval_options& opt = {});

// Delta(s) phi(s) with no pole guards: near a pole of the completed
// function the value carries the true Laurent growth (and is infinite
// exactly at one).  Building block for expansions that assemble several
// singular pieces whose poles cancel.
cx completed_total(const functional_equation_pair& p, cx s,
                   const eval_options& opt = {});

// Constant Laurent term of phi at its pole r (stored value if available,
// else symmetric-mean Richardson extrapolation).  missing_laurent_error if
// phi is entire.
cx laurent_constant(const functional_equation_pair& p,
                    const eval_options& opt = {});

// phi'(0) (stored value if available, else central Richardson).
cx phi_deriv_at_zero(const functional_equation_pair& p,
                     const eval_options& opt = {});

// Residue of f at s0 by h * odd-part sampling with Richardson refinement;
// throws not_simple_pole_error when a double-pole probe trips.
cx extract_residue(const std::function<cx(cx)>& f, cx s0);

// Grouped combinations of two knot sequences.
struct product_entry {
  double value;  // nu = x_m * y_n (product) or x_m + y_n (sum)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> contrib;  // 1-based
};

enum class combine_mode { product, sum };

// All (m, n), m,n >= 1, with combined knot <= limit, grouped by equal knot
// value (exact integer keys for pure-power grids c n^p, else a sorted merge
// with relative tolerance opt.merge_tol).
std::vector<product_entry> product_sequence(const coefficient_sequence& x,
                                            const coefficient_sequence& y,
                                            combine_mode mode, double limit,
                                            const eval_options& opt = {});

}  // namespace selchow
