#include "selchow/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "selchow/reduce.hpp"

namespace selchow {

namespace {

constexpr double pi = 3.14159265358979323846264338327950288;

// B_{2k} for k = 1..12; enough Euler-Maclaurin corrections for sigma > -23.
constexpr std::array<double, 12> bern2k = {
    1.0 / 6,        -1.0 / 30,       1.0 / 42,      -1.0 / 30,
    5.0 / 66,       -691.0 / 2730,   7.0 / 6,       -3617.0 / 510,
    43867.0 / 798,  -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730};

const std::array<double, 12>& bern_over_fact() {
  static const std::array<double, 12> tab = [] {
    std::array<double, 12> t{};
    double fact = 1.0;  // (2k)!
    for (int k = 0; k < 12; ++k) {
      fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
      t[k] = bern2k[k] / fact;
    }
    return t;
  }();
  return tab;
}

bool at_nonpositive_integer(cx s, double tol) {
  if (std::abs(s.imag()) > tol) return false;
  double r = std::round(s.real());
  return r <= 0.0 && std::abs(s.real() - r) <= tol;
}

// Sum side + boundary + Bernoulli corrections of Euler-Maclaurin for
// zeta(s, a) with split point N; caller guarantees s != 1 and a > 0.
cx em_hurwitz(cx s, double a, std::size_t terms) {
  neumaier_cx acc;
  for (std::size_t n = 0; n < terms; ++n)
    acc.add(std::exp(-s * std::log(static_cast<double>(n) + a)));
  double na = static_cast<double>(terms) + a;
  cx na_ms = std::exp(-s * std::log(na));  // (N+a)^{-s}
  cx res = acc.value() + na_ms * na / (s - 1.0) + 0.5 * na_ms;
  cx rising = s;           // s(s+1)...(s+2k-2), one factor at k = 1
  cx npow = na_ms / na;    // (N+a)^{-s-2k+1}, k = 1
  const auto& bf = bern_over_fact();
  for (int k = 0; k < 12; ++k) {
    res += bf[k] * rising * npow;
    rising *= (s + static_cast<double>(2 * k + 1)) *
              (s + static_cast<double>(2 * k + 2));
    npow /= na * na;
  }
  return res;
}

std::size_t em_terms(cx s) {
  double n = std::max({16.0, 1.3 * std::abs(s.imag()),
                       0.7 * (std::abs(s) + 26.0)});
  // Left of sigma = 0 the correction series needs a larger split point.
  if (s.real() < 0.0) n = std::max(n, 4.0 * (-s.real() + 28.0));
  return static_cast<std::size_t>(std::ceil(n));
}

}  // namespace

cx gamma(cx s) {
  // Lanczos, g = 7, 9 coefficients.
  static constexpr std::array<double, 9> p = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  if (at_nonpositive_integer(s, 0.0))
    throw pole_error(s);
  if (s.real() < 0.5) {
    // Reflection; sin(pi s) is nonzero away from integers.
    return pi / (std::sin(pi * s) * gamma(1.0 - s));
  }
  cx z = s - 1.0;
  cx x = p[0];
  for (int i = 1; i < 9; ++i) x += p[i] / (z + static_cast<double>(i));
  cx t = z + 7.5;
  return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

cx rgamma(cx s) {
  if (at_nonpositive_integer(s, 5e-13)) return 0.0;
  return 1.0 / gamma(s);
}

cx digamma(cx s) {
  if (at_nonpositive_integer(s, 0.0))
    throw pole_error(s);
  if (s.real() < 0.5) {
    cx ps = pi * s;
    return digamma(1.0 - s) - pi * std::cos(ps) / std::sin(ps);
  }
  cx shift = 0.0;
  while (s.real() <= 10.0) {
    shift -= 1.0 / s;
    s += 1.0;
  }
  cx inv2 = 1.0 / (s * s);
  cx res = std::log(s) - 0.5 / s;
  cx power = inv2;
  for (int k = 0; k < 8; ++k) {
    res -= bern2k[k] / (2.0 * (k + 1)) * power;
    power *= inv2;
  }
  return res + shift;
}

cx riemann_zeta(cx s) {
  if (s == cx(1.0)) throw pole_error(1.0, cx(1.0));
  if (s.real() < -0.5) {
    cx u = 1.0 - s;
    return std::pow(2.0, s) * std::pow(pi, s - 1.0) * std::sin(pi * s / 2.0) *
           gamma(u) * riemann_zeta(u);
  }
  return em_hurwitz(s, 1.0, em_terms(s));
}

cx hurwitz_zeta(cx s, double a) {
  if (!(a > 0.0))
    throw non_positive_argument_error("hurwitz zeta needs a > 0");
  if (s == cx(1.0)) throw pole_error(1.0, cx(1.0));
  return em_hurwitz(s, a, em_terms(s));
}

cx riemann_zeta_deriv(cx s) {
  if (s.imag() == 0.0) {
    // Complex step: zeta is real on the real axis, so the imaginary part
    // of zeta(s + ih) is h zeta'(s) with no subtractive cancellation.
    const double h = 1e-80;
    return riemann_zeta(s + cx(0.0, h)).imag() / h;
  }
  const double h = 1e-4;
  auto d = [&](double step) {
    return (riemann_zeta(s + step) - riemann_zeta(s - step)) / (2.0 * step);
  };
  cx d1 = d(h), d2 = d(h / 2.0);
  return (4.0 * d2 - d1) / 3.0;
}

namespace {

// E1(x) for 0 < x <~ 4 by the alternating series.
double expint_e1(double x) {
  neumaier acc;
  double term = 1.0;
  for (int k = 1; k < 80; ++k) {
    term *= -x / k;
    acc.add(-term / k);
    if (std::abs(term) < 1e-18 * k) break;
  }
  return -euler_gamma - std::log(x) + acc.value();
}

// Lentz continued fraction for Gamma(a, x), valid for x > |a| + 2.
cx upper_gamma_cf(cx a, double x) {
  const double fpmin = 1e-300;
  cx b = x + 1.0 - a;
  cx c = 1.0 / fpmin;
  cx d = 1.0 / b;
  cx h = d;
  for (int i = 1; i <= 400; ++i) {
    cx an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    cx del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x)) * h;
}

// Series for the lower incomplete gamma, then complement.
cx upper_gamma_series(cx a, double x) {
  cx term = 1.0 / a;
  neumaier_cx acc;
  acc.add(term);
  for (int n = 1; n <= 2000; ++n) {
    term *= x / (a + static_cast<double>(n));
    acc.add(term);
    if (std::abs(term) < 1e-18 * std::abs(acc.value())) break;
  }
  cx lower = std::exp(-x + a * std::log(x)) * acc.value();
  return gamma(a) - lower;
}

}  // namespace

cx gamma_upper(cx a, double x) {
  if (!(x > 0.0))
    throw non_positive_argument_error("gamma_upper needs x > 0");
  if (x > std::abs(a) + 2.0) return upper_gamma_cf(a, x);
  if (at_nonpositive_integer(a, 1e-12)) {
    // Gamma(-j, x) by downward recursion from Gamma(0, x) = E1(x).
    long j = std::lround(-a.real());
    double g = expint_e1(x);
    double xp = 1.0;  // x^{-k}
    for (long k = 1; k <= j; ++k) {
      xp /= x;
      g = (xp * std::exp(-x) - g) / static_cast<double>(k);
    }
    return g;
  }
  return upper_gamma_series(a, x);
}

cx bessel_k(cx nu, double x, const quadrature_spec& q) {
  if (!(x > 0.0))
    throw non_positive_argument_error("bessel_k needs x > 0");
  if (std::abs(nu.imag()) > 500.0)
    throw outside_domain_error("bessel_k order imaginary part too large");
  if (nu.real() < 0.0) nu = -nu;  // K_{-nu} = K_{nu}
  const double rho = nu.real();
  const double L = std::log(1.0 / q.target_rel_err) + 40.0;

  // Smallest T with x cosh(T) - rho T >= L, so the truncated tail is
  // below the target accuracy.
  double T = 1.0;
  for (int i = 0; i < 60; ++i) {
    double arg = (L + rho * T) / x;
    double nt = arg > 1.0 ? std::acosh(arg) : 1.0;
    if (std::abs(nt - T) < 1e-12 * std::max(1.0, T)) {
      T = nt;
      break;
    }
    T = nt;
  }
  T = std::min(T, q.cutoff_t_max);

  // exp(-x cosh t) cosh(nu t) as a sum of two exponentials so that a huge
  // cosh factor never multiplies an underflowed envelope.
  auto f = [&](double t) -> cx {
    cx e = -x * std::cosh(t);
    return 0.5 * (std::exp(e + nu * t) + std::exp(e - nu * t));
  };

  // tanh-sinh map of [0, T]; the integrand is smooth, the map just packs
  // nodes where the envelope still matters.
  const double U = 3.7;
  auto level = [&](std::size_t n) -> cx {
    double h = 2.0 * U / static_cast<double>(n);
    neumaier_cx acc;
    for (std::size_t jj = 0; jj <= n; ++jj) {
      double u = -U + h * static_cast<double>(jj);
      double su = std::sinh(u);
      double th = std::tanh(pi / 2.0 * su);
      double t = T / 2.0 * (1.0 + th);
      double sech = 1.0 - th * th;
      double w = T / 2.0 * (pi / 2.0) * std::cosh(u) * sech;
      double scale = (jj == 0 || jj == n) ? 0.5 : 1.0;
      if (w == 0.0) continue;
      acc.add(scale * w * f(t));
    }
    return h * acc.value();
  };

  cx i1 = level(q.node_budget);
  cx i2 = level(2 * q.node_budget);
  cx i3 = level(4 * q.node_budget);
  double tol = q.target_rel_err * std::max(std::abs(i3), 1e-280);
  if (std::abs(i3 - i2) > 8.0 * tol || !std::isfinite(std::abs(i3)))
    throw accuracy_error("bessel_k quadrature failed to converge");
  (void)i1;
  return i3;
}

}  // namespace selchow
