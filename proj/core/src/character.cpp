#include "selchow/character.hpp"

#include <cmath>
#include <utility>

#include "selchow/specfun.hpp"

namespace selchow {

int kronecker_symbol(long a, long n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  while (n % 2 == 0) {
    n /= 2;
    if (a % 2 == 0) return 0;
    long r = a % 8;
    if (r < 0) r += 8;
    if (r == 3 || r == 5) result = -result;
  }
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

namespace {

bool squarefree(long m) {
  if (m < 0) m = -m;
  for (long p = 2; p * p <= m; ++p)
    while (m % p == 0) {
      m /= p;
      if (m % p == 0) return false;
    }
  return true;
}

}  // namespace

bool is_fundamental_discriminant(long d) {
  if (d == 0) return false;
  long m4 = ((d % 4) + 4) % 4;
  if (m4 == 1) return squarefree(d);
  if (m4 == 0) {
    long m = d / 4;
    long mm4 = ((m % 4) + 4) % 4;
    return (mm4 == 2 || mm4 == 3) && squarefree(m);
  }
  return false;
}

dirichlet_character kronecker_character(long d) {
  if (!is_fundamental_discriminant(d))
    throw non_primitive_character_error(
        "discriminant is not fundamental: character would be imprimitive");
  if (std::abs(d) > 24)
    throw outside_domain_error("kronecker_character supports |d| <= 24");
  dirichlet_character chi;
  chi.modulus = std::abs(d);
  chi.even = d > 0;
  chi.values.resize(static_cast<std::size_t>(chi.modulus));
  for (long r = 0; r < chi.modulus; ++r)
    chi.values[static_cast<std::size_t>(r)] =
        static_cast<double>(kronecker_symbol(d, r));
  return chi;
}

cx gauss_sum(const dirichlet_character& chi) {
  if (chi.principal()) return 1.0;
  constexpr double two_pi = 6.28318530717958647692528676655900577;
  cx g = 0.0;
  for (long r = 0; r < chi.modulus; ++r) {
    double c = chi(r);
    if (c == 0.0) continue;
    double ang = two_pi * static_cast<double>(r) / static_cast<double>(chi.modulus);
    g += c * cx(std::cos(ang), std::sin(ang));
  }
  return g;
}

cx dirichlet_l(cx s, const dirichlet_character& chi) {
  if (chi.principal()) return riemann_zeta(s);
  double len = static_cast<double>(chi.modulus);
  if (s == cx(1.0)) {
    // The simple poles of zeta(s, r/l) cancel against sum chi(r) = 0,
    // leaving -(1/l) sum chi(r) digamma(r/l).
    double acc = 0.0;
    for (long r = 1; r <= chi.modulus; ++r) {
      double c = chi(r);
      if (c == 0.0) continue;
      acc += c * digamma(static_cast<double>(r) / len).real();
    }
    return -acc / len;
  }
  cx acc = 0.0;
  for (long r = 1; r <= chi.modulus; ++r) {
    double c = chi(r);
    if (c == 0.0) continue;
    acc += c * hurwitz_zeta(s, static_cast<double>(r) / len);
  }
  return std::exp(-s * std::log(len)) * acc;
}

double dirichlet_l_deriv(double s, const dirichlet_character& chi) {
  if (chi.principal()) return riemann_zeta_deriv(s).real();
  if (std::abs(s - 1.0) < 0.25) {
    // Near the cancelled pole a tiny imaginary step would magnify the
    // cancellation noise; use a moderate step and extrapolate in h^2.
    auto g = [&](double h) { return dirichlet_l(cx(s, h), chi).imag() / h; };
    double g1 = g(0.04), g2 = g(0.02), g3 = g(0.01);
    double r1 = (4.0 * g2 - g1) / 3.0;
    double r2 = (4.0 * g3 - g2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
  }
  const double h = 1e-80;
  return dirichlet_l(cx(s, h), chi).imag() / h;
}

}  // namespace selchow
