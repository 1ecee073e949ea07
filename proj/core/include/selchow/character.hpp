#pragma once

#include <vector>

#include "selchow/errors.hpp"

namespace selchow {

// Real primitive Dirichlet character chi_d = (d/.) for a fundamental
// discriminant d.  Modulus |d|; modulus 1 is the principal character.
struct dirichlet_character {
  long modulus = 1;
  std::vector<double> values;  // chi(r) for r = 0..modulus-1
  bool even = true;            // chi(-1) = +1

  double operator()(long n) const {
    long r = n % modulus;
    if (r < 0) r += modulus;
    return values[static_cast<std::size_t>(r)];
  }
  bool principal() const { return modulus == 1; }
};

// Kronecker symbol (a/n), full extension of the Jacobi symbol.
int kronecker_symbol(long a, long n);

// True when d is a fundamental discriminant (d = 1 included).
bool is_fundamental_discriminant(long d);

// Character attached to a fundamental discriminant, |d| <= 24.
dirichlet_character kronecker_character(long d);

// Gauss sum: sum_r chi(r) e^{2 pi i r / modulus}.
cx gauss_sum(const dirichlet_character& chi);

// L(s, chi) = modulus^{-s} sum_r chi(r) zeta(s, r/modulus); at s = 1 the
// digamma limit is used for non-principal chi.  Principal character gives
// the Riemann zeta (pole at 1).
cx dirichlet_l(cx s, const dirichlet_character& chi);

// d/ds L(s, chi) for real s: complex-step, with Richardson refinement of
// the step near s = 1 where the character sum must cancel the Hurwitz
// poles numerically.
double dirichlet_l_deriv(double s, const dirichlet_character& chi);

}  // namespace selchow
