#pragma once

#include <cstddef>

namespace selchow {

// Controls for the tanh-sinh quadrature behind the modified Bessel function.
struct quadrature_spec {
  std::size_t node_budget = 360;   // trapezoid nodes per refinement level
  double target_rel_err = 1e-13;   // refinement stops once two levels agree
  double cutoff_t_max = 60.0;      // hard cap on the integration interval
};

// Knobs shared by series evaluation, identity verification and zero scans.
struct eval_options {
  double rel_tol = 1e-10;             // requested relative accuracy
  std::size_t max_bessel_terms = 5000;  // cap on Bessel-sum terms per side
  std::size_t lattice_radius = 2000;    // cap on direct-lattice shell radius
  double merge_tol = 1e-12;           // relative tol for merging close knots
  std::size_t coeff_count = 10000;    // cap on generated coefficient entries
  quadrature_spec quadrature{};
};

}  // namespace selchow
