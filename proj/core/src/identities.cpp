#include "selchow/identities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "selchow/character.hpp"
#include "selchow/reduce.hpp"
#include "selchow/specfun.hpp"

namespace selchow {

namespace {

constexpr double kpi = std::numbers::pi;

// Bessel arguments beyond this contribute below rel_tol even against the
// polynomial growth of the coefficients and of K_nu in its order.
double bessel_len(const eval_options& opt, cx s) {
  return std::log(1.0 / opt.rel_tol) + 0.5 * kpi * std::abs(s.imag()) + 40.0;
}

cx cpow(double base, cx e) { return std::exp(e * std::log(base)); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string fmt(cx v) {
  if (v.imag() == 0.0) return fmt(v.real());
  return fmt(v.real()) + "," + fmt(v.imag());
}

std::string fmt(long v) { return std::to_string(v); }

std::string fmt(const quadratic_form& q) {
  return fmt(q.a) + "," + fmt(q.b) + "," + fmt(q.c);
}

void require_class_a(const functional_equation_pair& p, const char* what) {
  if (!p.class_a())
    throw not_class_a_error(std::string(what) + " needs a Gamma(s) pair, got " +
                            p.name);
}

void require_half(const functional_equation_pair& p, const char* what) {
  if (p.class_a())
    throw unsupported_pair_error(std::string(what) +
                                 " needs a half-gamma pair, got " + p.name);
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw outside_domain_error(std::string(what) + " must be > 0");
}

// Constant Laurent term of phi at r when phi has a pole there, else the
// plain value phi(r).
cx laurent0(const functional_equation_pair& p, const eval_options& opt) {
  for (const auto& pl : p.phi_poles)
    if (std::abs(pl.location - p.r) < 1e-9) return laurent_constant(p, opt);
  return eval_phi(p, cx(p.r), opt);
}

// sum over the product grid mu_P(m) lambda_Q(n) = nu of
//   b_P(m) a_Q(n) (mu/lambda)^{(s - r_P)/2} K_{r_P - s}(scale * 2 sqrt(nu)),
// the Bessel part of the two-pair expansions with a scaled argument.
cx h_scaled(const functional_equation_pair& P, const functional_equation_pair& Q,
            cx s, double scale, const eval_options& opt) {
  const double ell = bessel_len(opt, s);
  const double cut = (ell / (2.0 * scale)) * (ell / (2.0 * scale));
  auto grid = product_sequence(P.psi_seq, Q.phi_seq, combine_mode::product, cut,
                               opt);
  if (grid.size() > opt.max_bessel_terms)
    throw accuracy_error("Bessel grid needs " + std::to_string(grid.size()) +
                         " knots, cap is " +
                         std::to_string(opt.max_bessel_terms));
  const cx order = cx(P.r) - s;
  return parallel_sum(grid.size(), [&](std::size_t i) {
    const auto& e = grid[i];
    const cx kv = bessel_k(order, 2.0 * scale * std::sqrt(e.value),
                           opt.quadrature);
    cx inner = 0.0;
    for (auto [m, n] : e.contrib) {
      const double ratio = P.psi_seq.lam(m) / Q.phi_seq.lam(n);
      inner += P.psi_seq.coef(m) * Q.phi_seq.coef(n) *
               cpow(ratio, (s - P.r) / 2.0);
    }
    return inner * kv;
  });
}

// sum over the product grid of b_P(m) a_Q(n) K_0(scale * 2 sqrt(nu)).
cx k0_grid(const functional_equation_pair& P, const functional_equation_pair& Q,
           double scale, const eval_options& opt) {
  const double ell = bessel_len(opt, 0.0);
  const double cut = (ell / (2.0 * scale)) * (ell / (2.0 * scale));
  auto grid = product_sequence(P.psi_seq, Q.phi_seq, combine_mode::product, cut,
                               opt);
  if (grid.size() > opt.max_bessel_terms)
    throw accuracy_error("Bessel grid needs " + std::to_string(grid.size()) +
                         " knots, cap is " +
                         std::to_string(opt.max_bessel_terms));
  return parallel_sum(grid.size(), [&](std::size_t i) {
    const auto& e = grid[i];
    const cx kv = bessel_k(0.0, 2.0 * scale * std::sqrt(e.value),
                           opt.quadrature);
    cx inner = 0.0;
    for (auto [m, n] : e.contrib)
      inner += P.psi_seq.coef(m) * Q.phi_seq.coef(n);
    return inner * kv;
  });
}

std::vector<long> divisors_of(long n) {
  std::vector<long> out;
  for (long d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

}  // namespace

identity_certificate make_certificate(
    std::string identity, std::vector<std::pair<std::string, std::string>> params,
    cx lhs, cx rhs, double tol) {
  identity_certificate c;
  c.identity = std::move(identity);
  c.params = std::move(params);
  c.lhs = lhs;
  c.rhs = rhs;
  c.tol = tol;
  c.abs_residual = std::abs(lhs - rhs);
  const double denom = std::max(std::abs(lhs), std::abs(rhs));
  c.rel_residual = denom > 0.0 ? c.abs_residual / denom : 0.0;
  c.pass = denom >= 1e-8 ? c.rel_residual <= tol : c.abs_residual <= 1e-10;
  return c;
}

// ---------------------------------------------------------------------------

identity_certificate verify_fe(const functional_equation_pair& p, cx s,
                               double tol, const eval_options& opt) {
  const double rfe = p.class_a() ? p.r : 1.0;
  const cx lhs = eval_gamma_phi(p, s, opt);
  const cx rhs = eval_gamma_phi(dual(p), rfe - s, opt);
  return make_certificate("fe", {{"pair", p.name}, {"s", fmt(s)}}, lhs, rhs,
                          tol);
}

identity_certificate verify_bochner(const functional_equation_pair& p,
                                    double z, double tol,
                                    const eval_options& opt) {
  require_class_a(p, "exponential-series reflection");
  require_positive(z, "z");
  const double cut = std::log(1.0 / opt.rel_tol) + 45.0;

  const std::size_t na = p.phi_seq.count_below(cut / z);
  const cx lhs = parallel_sum(na, [&](std::size_t i) {
    return p.phi_seq.coef(i + 1) * std::exp(cx(-p.phi_seq.lam(i + 1) * z));
  });

  const std::size_t nb = p.psi_seq.count_below(cut * z);
  cx rhs = cpow(z, cx(-p.r)) * parallel_sum(nb, [&](std::size_t i) {
             return p.psi_seq.coef(i + 1) *
                    std::exp(cx(-p.psi_seq.lam(i + 1) / z));
           });
  rhs += p.phi_at_zero;
  for (const auto& pl : p.phi_poles)
    rhs += gamma(cx(pl.location)) * pl.residue * cpow(z, cx(-pl.location));
  return make_certificate("bochner", {{"pair", p.name}, {"z", fmt(z)}}, lhs,
                          rhs, tol);
}

identity_certificate verify_theta(const functional_equation_pair& p, double x,
                                  double alpha, double beta, double tol,
                                  const eval_options& opt) {
  require_half(p, "theta reflection");
  require_positive(x, "x");
  require_positive(alpha, "alpha");
  const bool even = p.delta == delta_factor_kind::gamma_half0;
  const double cut = std::log(1.0 / opt.rel_tol) + 45.0;

  const double lam_max = std::sqrt(cut / alpha) / x;
  const std::size_t na = p.phi_seq.count_below(lam_max);
  const cx lhs = parallel_sum(na, [&](std::size_t i) {
    const double lam = p.phi_seq.lam(i + 1);
    const double trig = even ? std::cos(beta * lam * x) : std::sin(beta * lam * x);
    return p.phi_seq.coef(i + 1) * std::exp(-alpha * lam * lam * x * x) * trig;
  });

  const double mu_max = x * (std::sqrt(cut * alpha) + 0.5 * std::abs(beta));
  const std::size_t nb = p.psi_seq.count_below(mu_max);
  const double sa = std::sqrt(alpha);
  cx rhs = 0.0;
  if (even) {
    rhs = p.phi_at_zero + std::sqrt(kpi / alpha) * p.rho() / (2.0 * x) *
                              std::exp(-beta * beta / (4.0 * alpha));
    rhs += parallel_sum(nb, [&](std::size_t i) {
             const double w = p.psi_seq.lam(i + 1) / x;
             const double ep = std::exp(-(w + 0.5 * beta) * (w + 0.5 * beta) / alpha);
             const double em = std::exp(-(w - 0.5 * beta) * (w - 0.5 * beta) / alpha);
             return p.psi_seq.coef(i + 1) * (ep + em);
           }) /
           (2.0 * sa * x);
  } else {
    rhs = parallel_sum(nb, [&](std::size_t i) {
            const double w = p.psi_seq.lam(i + 1) / x;
            const double ep = std::exp(-(w + 0.5 * beta) * (w + 0.5 * beta) / alpha);
            const double em = std::exp(-(w - 0.5 * beta) * (w - 0.5 * beta) / alpha);
            return p.psi_seq.coef(i + 1) * (em - ep);
          }) /
          (2.0 * sa * x);
  }
  return make_certificate("theta",
                          {{"pair", p.name},
                           {"x", fmt(x)},
                           {"alpha", fmt(alpha)},
                           {"beta", fmt(beta)}},
                          lhs, rhs, tol);
}

identity_certificate verify_selberg_chowla(const functional_equation_pair& p1,
                                           const functional_equation_pair& p2,
                                           cx s, const std::string& mode,
                                           double tol,
                                           const eval_options& opt) {
  cx lhs, rhs;
  if (mode == "swap") {
    lhs = z2_sc(p1, p2, s, opt);
    rhs = z2_sc(p2, p1, s, opt);
  } else if (mode == "fe") {
    const double rr = p1.r + p2.r;
    lhs = gamma(s) * z2_sc(p1, p2, s, opt);
    rhs = gamma(rr - s) * z2_sc(dual(p1), dual(p2), rr - s, opt);
  } else if (mode == "hrefl") {
    const double rr = p1.r + p2.r;
    lhs = h_sum(p1, p2, s, opt);
    rhs = h_sum(p2, p1, rr - s, opt);
  } else {
    throw parse_error("unknown selberg-chowla mode: " + mode);
  }
  return make_certificate(
      "selberg-chowla",
      {{"pair", p1.name}, {"pair2", p2.name}, {"s", fmt(s)}, {"mode", mode}},
      lhs, rhs, tol);
}

identity_certificate verify_selberg_chowla_q(
    const functional_equation_pair& p1, const functional_equation_pair& p2,
    const quadratic_form& q, cx s, const std::string& mode, double tol,
    const eval_options& opt) {
  cx lhs, rhs;
  if (mode == "swap") {
    lhs = zq_sc(p1, p2, q, s, opt);
    rhs = zq_sc(p2, p1, q.transpose(), s, opt);
  } else if (mode == "fe") {
    const double rootd = std::sqrt(-q.discriminant());
    const double sign = p1.delta == delta_factor_kind::gamma_half1 ? -1.0 : 1.0;
    lhs = cpow(2.0 / rootd, -s) * gamma(s) * zq_sc(p1, p2, q, s, opt);
    rhs = sign * cpow(2.0 / rootd, s - 1.0) * gamma(1.0 - s) *
          zq_sc(dual(p1), dual(p2), q.inverse(), 1.0 - s, opt);
  } else {
    throw parse_error("unknown selberg-chowla form mode: " + mode);
  }
  return make_certificate("selberg-chowla",
                          {{"pair", p1.name},
                           {"pair2", p2.name},
                           {"form", fmt(q)},
                           {"s", fmt(s)},
                           {"mode", mode}},
                          lhs, rhs, tol);
}

identity_certificate verify_watson(const functional_equation_pair& p,
                                   const quadratic_form& q, double nu,
                                   double tol, const eval_options& opt) {
  require_half(p, "quadratic-argument transformation");
  if (!(q.a > 0.0) || !(q.discriminant() < 0.0))
    throw outside_domain_error("form must be positive definite");
  const bool even = p.delta == delta_factor_kind::gamma_half0;
  const double a = q.a, b = q.b, c = q.c;
  const double k = std::sqrt(-q.discriminant()) / (2.0 * a);

  // Algebraic decay (a lambda^2)^{-nu} against lambda^{expo} growth: solve
  // the integral tail bound for the truncation knot.
  const double decay = 2.0 * nu - p.phi_seq.tail_bound_exponent - 1.0;
  if (decay < 0.2)
    throw outside_domain_error("nu too small for the direct side");
  const double target = 1e-4 * opt.rel_tol * std::pow(a, nu);
  const double lam_max =
      std::min(1e7, std::max(10.0, std::pow(1.0 / (target * decay), 1.0 / decay)));
  const std::size_t na = p.phi_seq.count_below(lam_max);
  cx lhs = parallel_sum(na, [&](std::size_t i) {
    const double lam = p.phi_seq.lam(i + 1);
    const double qp = (a * lam + b) * lam + c;
    const double qm = (a * lam - b) * lam + c;
    const cx both = even ? cx(std::pow(qp, -nu) + std::pow(qm, -nu))
                         : cx(std::pow(qp, -nu) - std::pow(qm, -nu));
    return p.phi_seq.coef(i + 1) * both;
  });
  if (even) lhs += p.a0() * std::pow(c, -nu);

  const double ell = bessel_len(opt, cx(nu));
  const std::size_t nb = p.psi_seq.count_below(ell / (2.0 * k));
  const cx tail = parallel_sum(nb, [&](std::size_t i) {
    const double mu = p.psi_seq.lam(i + 1);
    const double trig = even ? std::cos(b / a * mu) : std::sin(b / a * mu);
    return p.psi_seq.coef(i + 1) * trig * std::pow(mu, nu - 0.5) *
           bessel_k(cx(nu - 0.5), 2.0 * k * mu, opt.quadrature);
  });
  cx rhs = (even ? 4.0 : -4.0) * std::pow(k, 0.5 - nu) * std::pow(a, -nu) /
           gamma(cx(nu)) * tail;
  if (even)
    rhs += p.rho() * std::sqrt(kpi) * gamma(cx(nu - 0.5)) / gamma(cx(nu)) *
           std::pow(a, -nu) * std::pow(k, 1.0 - 2.0 * nu);
  return make_certificate(
      "watson", {{"pair", p.name}, {"form", fmt(q)}, {"nu", fmt(nu)}}, lhs,
      rhs, tol);
}

identity_certificate verify_guinand(const functional_equation_pair& p1,
                                    const functional_equation_pair& p2, cx s,
                                    double x, double tol,
                                    const eval_options& opt) {
  require_class_a(p1, "Bessel-kernel reflection");
  require_class_a(p2, "Bessel-kernel reflection");
  require_positive(x, "x");
  const cx t1 = h_scaled(p1, p2, s, x, opt);
  const cx t2 = h_scaled(p2, p1, s, 1.0 / x, opt);
  const cx lhs = 2.0 * cpow(x, cx(p1.r) - s) * t1 -
                 2.0 * cpow(x, -(cx(p2.r) + s)) * t2;

  cx rhs = p2.phi_at_zero * completed_total(p1, s, opt) -
           p1.phi_at_zero * cpow(x, -2.0 * s) * completed_total(p2, s, opt);
  if (p2.rho() != cx(0.0))
    rhs += p2.rho() * std::pow(x, -2.0 * p2.r) * gamma(cx(p2.r)) *
           completed_total(p1, s - p2.r, opt);
  if (p1.rho() != cx(0.0))
    rhs -= p1.rho() * cpow(x, 2.0 * p1.r - 2.0 * s) * gamma(cx(p1.r)) *
           completed_total(p2, s - p1.r, opt);
  return make_certificate(
      "guinand",
      {{"pair", p1.name}, {"pair2", p2.name}, {"s", fmt(s)}, {"x", fmt(x)}},
      lhs, rhs, tol);
}

identity_certificate verify_guinand_classical(cx s, double alpha, double tol,
                                              const eval_options& opt) {
  require_positive(alpha, "alpha");
  if (std::abs(s) < 1e-6)
    throw excluded_point_error("s = 0 is a removable point of both sides");
  const double beta = kpi * kpi / alpha;
  const double ell = bessel_len(opt, s);

  auto leg = [&](double aa) {
    const auto n_max = static_cast<std::size_t>(ell / (2.0 * aa)) + 1;
    return std::sqrt(aa) * parallel_sum(n_max, [&](std::size_t i) {
             const auto n = static_cast<long>(i) + 1;
             cx sig = 0.0;
             for (long d : divisors_of(n)) sig += cpow(double(d), -s);
             return sig * cpow(double(n), s / 2.0) *
                    bessel_k(s / 2.0, 2.0 * n * aa, opt.quadrature);
           });
  };
  const cx lhs = leg(alpha) - leg(beta);

  const cx za = cpow(beta, (1.0 + s) / 2.0) - cpow(alpha, (1.0 + s) / 2.0);
  const cx zb = cpow(beta, (1.0 - s) / 2.0) - cpow(alpha, (1.0 - s) / 2.0);
  const cx rhs = 0.25 * gamma(-s / 2.0) * riemann_zeta(-s) * za +
                 0.25 * gamma(s / 2.0) * riemann_zeta(s) * zb;
  return make_certificate("guinand", {{"kind", "classical"}, {"s", fmt(s)},
                                      {"alpha", fmt(alpha)}},
                          lhs, rhs, tol);
}

identity_certificate verify_guinand_two_characters(long d1, long d2, cx s,
                                                   double a, double tol,
                                                   const eval_options& opt) {
  if (d1 < 0 || d2 < 0)
    throw parity_error("two-character reflection needs even characters "
                       "(positive fundamental discriminants)");
  require_positive(a, "a");
  const auto chi1 = kronecker_character(d1);
  const auto chi2 = kronecker_character(d2);
  const cx g1 = gauss_sum(chi1), g2 = gauss_sum(chi2);
  const double l1 = double(chi1.modulus), l2 = double(chi2.modulus);
  const double b = kpi * kpi / a;
  const double ell = bessel_len(opt, s);

  auto leg = [&](const dirichlet_character& cs, const dirichlet_character& co,
                 double lm, cx g, double aa) {
    const auto n_max = static_cast<std::size_t>(ell * lm / (2.0 * aa)) + 1;
    return std::sqrt(aa) * g * cpow(lm, -s / 2.0 - 1.0) *
           parallel_sum(n_max, [&](std::size_t i) {
             const auto n = static_cast<long>(i) + 1;
             cx sig = 0.0;
             for (long d : divisors_of(n))
               sig += cs(d) * co(n / d) * cpow(double(d), -s);
             return sig * cpow(double(n), s / 2.0) *
                    bessel_k(s / 2.0, 2.0 * aa * n / lm, opt.quadrature);
           });
  };
  const cx lhs = leg(chi1, chi2, l1, g1, a);
  const cx rhs = leg(chi2, chi1, l2, g2, b);
  return make_certificate("guinand",
                          {{"kind", "two-characters"},
                           {"d1", fmt(d1)},
                           {"d2", fmt(d2)},
                           {"s", fmt(s)},
                           {"a", fmt(a)}},
                          lhs, rhs, tol);
}

identity_certificate verify_koshliakov(const functional_equation_pair& p1,
                                       const functional_equation_pair& p2,
                                       double x, double tol,
                                       const eval_options& opt) {
  require_class_a(p1, "K0 reflection");
  require_class_a(p2, "K0 reflection");
  require_positive(x, "x");
  if (std::abs(p1.r - p2.r) > 1e-12)
    throw hypothesis_error("K0 reflection needs equal reflection parameters");
  const double r = p1.r;

  const cx lhs = 2.0 * k0_grid(p1, p2, x, opt) -
                 2.0 * std::pow(x, -2.0 * r) * k0_grid(p2, p1, 1.0 / x, opt);

  const cx g = gamma(cx(r));
  const cx dg = digamma(cx(r));
  const cx rho1 = p1.rho(), rho2 = p2.rho();
  const cx rho1s = p1.rho_dual(), rho2s = p2.rho_dual();
  const cx l01 = laurent0(p1, opt), l02 = laurent0(p2, opt);
  const cx l01s = laurent0(dual(p1), opt), l02s = laurent0(dual(p2), opt);
  const double lx = std::log(x);
  const cx t1 = g * (p2.phi_at_zero * l01 + p2.phi_at_zero * rho1 * dg -
                     rho1 * (rho2s * dg + l02s) +
                     2.0 * lx * p2.phi_at_zero * rho1);
  const cx t2 = std::pow(x, -2.0 * r) * g *
                ((rho1s * dg + l01s) * rho2 - p1.phi_at_zero * l02 -
                 p1.phi_at_zero * rho2 * dg + 2.0 * lx * p1.phi_at_zero * rho2);
  return make_certificate(
      "koshliakov",
      {{"pair", p1.name}, {"pair2", p2.name}, {"x", fmt(x)}}, lhs, t1 + t2,
      tol);
}

identity_certificate verify_koshliakov_double(long d1, long d2, double x,
                                              double tol,
                                              const eval_options& opt) {
  if (d1 < 0 || d2 < 0)
    throw parity_error("double-character K0 reflection needs even characters "
                       "(positive fundamental discriminants)");
  require_positive(x, "x");
  const auto chi1 = kronecker_character(d1);
  const auto chi2 = kronecker_character(d2);
  const double root = std::sqrt(double(chi1.modulus) * double(chi2.modulus));
  const double ell = bessel_len(opt, 0.0);

  auto side = [&](double scale) {
    const auto n_max = static_cast<std::size_t>(ell * root / (2.0 * kpi * scale)) + 1;
    return parallel_sum(n_max, [&](std::size_t i) {
      const auto n = static_cast<long>(i) + 1;
      double dd = 0.0;
      for (long d : divisors_of(n)) dd += chi1(d) * chi2(n / d);
      return cx(dd) * bessel_k(0.0, 2.0 * kpi * n * scale / root,
                               opt.quadrature);
    });
  };
  const cx lhs = side(x);
  const cx rhs = chi1(-1) * gauss_sum(chi1) * gauss_sum(chi2) / (x * root) *
                 side(1.0 / x);
  return make_certificate(
      "koshliakov",
      {{"kind", "double"}, {"d1", fmt(d1)}, {"d2", fmt(d2)}, {"x", fmt(x)}},
      lhs, rhs, tol);
}

identity_certificate verify_soni(double alpha, double tol,
                                 const eval_options& opt) {
  require_positive(alpha, "alpha");
  const double ratio = alpha / (2.0 * kpi);
  if (std::abs(ratio - std::round(ratio)) < 1e-3 * std::max(1.0, ratio) &&
      std::round(ratio) >= 1.0)
    throw excluded_point_error("alpha on the excluded set 2 pi Z");

  // Divisor-count table; closed zeta tails take over past the cutoff.
  constexpr long kcut = 2500;
  std::vector<double> dtab(kcut + 1, 0.0);
  for (long d = 1; d <= kcut; ++d)
    for (long m = d; m <= kcut; m += d) dtab[m] += 1.0;

  double t1 = 0.0;
  for (long k = 1; k <= kcut; ++k)
    t1 += dtab[k] * std::log(alpha / (2.0 * kpi * k)) /
          (alpha * alpha - 4.0 * kpi * kpi * k * k);
  for (int j = 0; j < 6; ++j) {
    const double s0 = 2.0 * j + 2.0;
    const double zz = riemann_zeta(cx(s0)).real();
    double part_d = 0.0, part_dln = 0.0;
    for (long k = 1; k <= kcut; ++k) {
      const double pw = std::pow(double(k), -s0);
      part_d += dtab[k] * pw;
      part_dln += dtab[k] * std::log(double(k)) * pw;
    }
    const double tail_d = zz * zz - part_d;
    const double tail_dln =
        -2.0 * zz * riemann_zeta_deriv(cx(s0)).real() - part_dln;
    t1 += -std::pow(alpha, 2.0 * j) / std::pow(4.0 * kpi * kpi, j + 1.0) *
          (std::log(alpha / (2.0 * kpi)) * tail_d - tail_dln);
  }

  const double ell = bessel_len(opt, 0.0);
  const auto k_max =
      static_cast<std::size_t>(ell * ell / (8.0 * kpi * alpha)) + 1;
  const cx t2 = parallel_sum(k_max, [&](std::size_t i) {
    const auto k = static_cast<long>(i) + 1;
    const double dd = k <= kcut ? dtab[k] : double(divisors_of(k).size());
    return cx(dd) * bessel_k(0.0, 2.0 * std::sqrt(2.0 * kpi * k * alpha),
                             opt.quadrature);
  });
  const cx lhs = 2.0 * t1 - (2.0 * kpi / alpha) * t2;

  const auto p = builtin_pair("zeta2");
  const cx phi0 = p.phi_at_zero;
  const cx rho = p.rho();
  const cx l0 = laurent_constant(p, opt);
  const cx l0s = laurent_constant(dual(p), opt);
  const cx ta = std::sqrt(kpi) / (alpha * alpha) *
                (phi0 * l0 - std::sqrt(kpi) * rho * l0s -
                 2.0 * rho * phi0 * (2.0 * euler_gamma + std::log(2.0 * alpha)));
  const cx tb = std::pow(kpi, 1.5) / (2.0 * alpha) *
                (-phi0 * l0 + std::sqrt(kpi) * rho * l0s +
                 2.0 * rho * phi0 * std::log(2.0 / alpha));
  return make_certificate("soni", {{"alpha", fmt(alpha)}}, lhs, ta + tb, tol);
}

identity_certificate verify_soni_double(long d1, long d2, double alpha,
                                        double tol, const eval_options& opt) {
  if (d1 < 0 || d2 < 0)
    throw parity_error("double-character divisor reflection needs even "
                       "characters (positive fundamental discriminants)");
  require_positive(alpha, "alpha");
  const auto chi1 = kronecker_character(d1);
  const auto chi2 = kronecker_character(d2);
  const double l1 = double(chi1.modulus), l2 = double(chi2.modulus);
  const double big_a = l1 * l2 * alpha;
  if (std::abs(big_a - std::round(big_a)) < 1e-3 && std::round(big_a) >= 1.0)
    throw excluded_point_error("l1 l2 alpha on the excluded integer set");

  constexpr long kcut = 3000;
  std::vector<double> dtab(kcut + 1, 0.0);
  for (long d = 1; d <= kcut; ++d) {
    const double cv = chi1(d);
    if (cv == 0.0) continue;
    for (long m = d; m <= kcut; m += d) dtab[m] += cv * chi2(m / d);
  }

  double lhs_r = 0.0;
  for (long n = 1; n <= kcut; ++n)
    lhs_r += dtab[n] * std::log(big_a / n) / (big_a * big_a - double(n) * n);
  for (int j = 0; j < 3; ++j) {
    const double s0 = 2.0 * j + 2.0;
    const double la = dirichlet_l(cx(s0), chi1).real();
    const double lb = dirichlet_l(cx(s0), chi2).real();
    double part_d = 0.0, part_dln = 0.0;
    for (long n = 1; n <= kcut; ++n) {
      const double pw = std::pow(double(n), -s0);
      part_d += dtab[n] * pw;
      part_dln += dtab[n] * std::log(double(n)) * pw;
    }
    const double tail_d = la * lb - part_d;
    const double tail_dln = -(dirichlet_l_deriv(s0, chi1) * lb +
                              la * dirichlet_l_deriv(s0, chi2)) -
                            part_dln;
    lhs_r += -std::pow(big_a, 2.0 * j) *
             (std::log(big_a) * tail_d - tail_dln);
  }

  const double ell = bessel_len(opt, 0.0);
  const auto n_max = static_cast<std::size_t>(
                         ell * ell / (16.0 * kpi * kpi * alpha)) +
                     1;
  const cx kb = parallel_sum(n_max, [&](std::size_t i) {
    const auto n = static_cast<long>(i) + 1;
    double dd = 0.0;
    for (long d : divisors_of(n)) dd += chi1(d) * chi2(n / d);
    return cx(dd) * bessel_k(0.0, 4.0 * kpi * std::sqrt(alpha * n),
                             opt.quadrature);
  });
  const cx rhs = 2.0 * kpi * kpi * gauss_sum(chi1) * gauss_sum(chi2) /
                 (alpha * l1 * l1 * l2 * l2) * kb;
  return make_certificate("soni",
                          {{"kind", "double"},
                           {"d1", fmt(d1)},
                           {"d2", fmt(d2)},
                           {"alpha", fmt(alpha)}},
                          cx(lhs_r), rhs, tol);
}

namespace {

// Number of (u, v) in Z^4 x Z^4 with 2|u + Sv/2|^2 + |v|^2/2 = q for the
// skew matrix S below; the form is even, so only q = 2, 4, ..., cap occur.
std::vector<long> octonary_counts(int cap) {
  std::vector<long> tally(cap + 1, 0);
  const int vmax = static_cast<int>(std::sqrt(2.0 * cap)) + 1;
  for (int v0 = -vmax; v0 <= vmax; ++v0)
    for (int v1 = -vmax; v1 <= vmax; ++v1)
      for (int v2 = -vmax; v2 <= vmax; ++v2)
        for (int v3 = -vmax; v3 <= vmax; ++v3) {
          const int vv = v0 * v0 + v1 * v1 + v2 * v2 + v3 * v3;
          if (vv > 2 * cap) continue;
          const int sv0 = v1 + v2 + v3;
          const int sv1 = -v0 - v2 + v3;
          const int sv2 = -v0 + v1 - v3;
          const int sv3 = -v0 - v1 + v2;
          // |u + Sv/2| <= sqrt(cap/2), so a box of half-width 4 around the
          // rounded center covers every contributing u (cap <= 24).
          const int c0 = static_cast<int>(std::lround(-0.5 * sv0));
          const int c1 = static_cast<int>(std::lround(-0.5 * sv1));
          const int c2 = static_cast<int>(std::lround(-0.5 * sv2));
          const int c3 = static_cast<int>(std::lround(-0.5 * sv3));
          for (int u0 = c0 - 4; u0 <= c0 + 4; ++u0)
            for (int u1 = c1 - 4; u1 <= c1 + 4; ++u1)
              for (int u2 = c2 - 4; u2 <= c2 + 4; ++u2)
                for (int u3 = c3 - 4; u3 <= c3 + 4; ++u3) {
                  const int uu = u0 * u0 + u1 * u1 + u2 * u2 + u3 * u3;
                  const int usv = u0 * sv0 + u1 * sv1 + u2 * sv2 + u3 * sv3;
                  const int qv = 2 * (uu + usv + vv);
                  if (qv >= 1 && qv <= cap) ++tally[qv];
                }
        }
  return tally;
}

}  // namespace

identity_certificate verify_jacobi4(const std::string& mode, double tol,
                                    const eval_options& opt) {
  (void)opt;
  std::string kind = mode;
  double s = 4.0;
  if (auto pos = mode.find(':'); pos != std::string::npos) {
    kind = mode.substr(0, pos);
    try {
      s = std::stod(mode.substr(pos + 1));
    } catch (const std::exception&) {
      throw parse_error("bad mode parameter: " + mode);
    }
  }

  if (kind == "r4") {
    if (s < 3.0)
      throw outside_domain_error("r4 partial sums need s >= 3");
    constexpr std::size_t cap = 1000000;
    std::vector<double> sig(cap + 1, 0.0);
    for (std::size_t d = 1; d <= cap; ++d)
      for (std::size_t m = d; m <= cap; m += d) sig[m] += double(d);
    const cx lhs = parallel_sum(cap, [&](std::size_t i) {
      const std::size_t n = i + 1;
      double r4 = 8.0 * sig[n];
      if (n % 4 == 0) r4 -= 32.0 * sig[n / 4];
      return cx(r4 * std::pow(double(n), -s));
    });
    const cx rhs = 8.0 * (1.0 - std::pow(4.0, 1.0 - s)) *
                   riemann_zeta(cx(s)) * riemann_zeta(cx(s - 1.0));
    return make_certificate("jacobi4", {{"mode", mode}}, lhs, rhs, tol);
  }
  if (kind == "hecke8") {
    if (!(s > 0.0))
      throw outside_domain_error("mode parameter must be positive");
    constexpr int cap = 24;
    const auto tally = octonary_counts(cap);
    cx lhs = 0.0;
    for (int n = 1; n <= cap; ++n)
      lhs += double(tally[n]) * std::pow(double(n), -s);
    cx rhs = 0.0;
    for (long m = 1; 2 * m <= cap; ++m) {
      double s3 = 0.0;
      for (long d : divisors_of(m)) s3 += double(d) * d * d;
      rhs += 240.0 * s3 * std::pow(2.0 * m, -s);
    }
    return make_certificate("jacobi4", {{"mode", mode}}, lhs, rhs, tol);
  }
  throw parse_error("unknown jacobi4 mode: " + mode);
}

// ---------------------------------------------------------------------------
// Grid files.

std::vector<grid_row> parse_grid(const std::string& text) {
  std::vector<grid_row> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    grid_row row;
    std::string token;
    while (ls >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos || eq == 0)
        throw parse_error("grid line " + std::to_string(lineno) +
                          ": expected key=value, got '" + token + "'");
      row[token.substr(0, eq)] = token.substr(eq + 1);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

#include "grids_embedded.inc"

const std::string& grid_get(const grid_row& row, const std::string& key) {
  const auto it = row.find(key);
  if (it == row.end())
    throw parse_error("grid row missing key '" + key + "'");
  return it->second;
}

std::string grid_get_or(const grid_row& row, const std::string& key,
                        const std::string& fallback) {
  const auto it = row.find(key);
  return it == row.end() ? fallback : it->second;
}

double grid_double(const grid_row& row, const std::string& key) {
  const auto& text = grid_get(row, key);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw parse_error("grid key '" + key + "': bad number '" + text + "'");
  }
  if (used != text.size())
    throw parse_error("grid key '" + key + "': bad number '" + text + "'");
  return v;
}

long grid_long(const grid_row& row, const std::string& key) {
  const auto& text = grid_get(row, key);
  try {
    return std::stol(text);
  } catch (const std::exception&) {
    throw parse_error("grid key '" + key + "': bad integer '" + text + "'");
  }
}

std::vector<double> split_numbers(const std::string& text,
                                  const std::string& key) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw parse_error("grid key '" + key + "': bad number '" + item + "'");
    }
  }
  return out;
}

cx grid_cx(const grid_row& row, const std::string& key) {
  const auto parts = split_numbers(grid_get(row, key), key);
  if (parts.size() == 1) return cx(parts[0]);
  if (parts.size() == 2) return cx(parts[0], parts[1]);
  throw parse_error("grid key '" + key + "': expected re[,im]");
}

quadratic_form grid_form(const grid_row& row, const std::string& key) {
  const auto parts = split_numbers(grid_get(row, key), key);
  if (parts.size() != 3)
    throw parse_error("grid key '" + key + "': expected a,b,c");
  return {parts[0], parts[1], parts[2]};
}

}  // namespace

const char* embedded_grid(const std::string& family) {
  for (const auto& e : k_embedded_grids)
    if (family == e.name) return e.text;
  throw parse_error("no embedded grid for family '" + family + "'");
}

std::vector<std::string> grid_families() {
  std::vector<std::string> out;
  for (const auto& e : k_embedded_grids) out.emplace_back(e.name);
  return out;
}

identity_certificate run_grid_row(const grid_row& row, double tol_override,
                                  const eval_options& opt) {
  const auto& family = grid_get(row, "family");
  double tol = 1e-8;
  if (const auto it = row.find("tol"); it != row.end())
    tol = grid_double(row, "tol");
  if (tol_override > 0.0) tol = tol_override;

  if (family == "fe")
    return verify_fe(builtin_pair(grid_get(row, "pair")), grid_cx(row, "s"),
                     tol, opt);
  if (family == "bochner")
    return verify_bochner(builtin_pair(grid_get(row, "pair")),
                          grid_double(row, "z"), tol, opt);
  if (family == "theta")
    return verify_theta(builtin_pair(grid_get(row, "pair")),
                        grid_double(row, "x"), grid_double(row, "alpha"),
                        grid_double(row, "beta"), tol, opt);
  if (family == "selberg-chowla") {
    const auto p1 = builtin_pair(grid_get(row, "pair"));
    const auto p2 = builtin_pair(grid_get_or(row, "pair2", grid_get(row, "pair")));
    const auto mode = grid_get_or(row, "mode", "swap");
    if (row.count("form"))
      return verify_selberg_chowla_q(p1, p2, grid_form(row, "form"),
                                     grid_cx(row, "s"), mode, tol, opt);
    return verify_selberg_chowla(p1, p2, grid_cx(row, "s"), mode, tol, opt);
  }
  if (family == "watson")
    return verify_watson(builtin_pair(grid_get(row, "pair")),
                         grid_form(row, "form"), grid_double(row, "nu"), tol,
                         opt);
  if (family == "guinand") {
    const auto kind = grid_get_or(row, "kind", "param");
    if (kind == "param")
      return verify_guinand(
          builtin_pair(grid_get(row, "pair")),
          builtin_pair(grid_get_or(row, "pair2", grid_get(row, "pair"))),
          grid_cx(row, "s"), grid_double(row, "x"), tol, opt);
    if (kind == "classical")
      return verify_guinand_classical(grid_cx(row, "s"),
                                      grid_double(row, "alpha"), tol, opt);
    if (kind == "two-characters")
      return verify_guinand_two_characters(grid_long(row, "d1"),
                                           grid_long(row, "d2"),
                                           grid_cx(row, "s"),
                                           grid_double(row, "a"), tol, opt);
    throw parse_error("unknown guinand kind: " + kind);
  }
  if (family == "koshliakov") {
    const auto kind = grid_get_or(row, "kind", "pair");
    if (kind == "pair")
      return verify_koshliakov(
          builtin_pair(grid_get(row, "pair")),
          builtin_pair(grid_get_or(row, "pair2", grid_get(row, "pair"))),
          grid_double(row, "x"), tol, opt);
    if (kind == "double")
      return verify_koshliakov_double(grid_long(row, "d1"),
                                      grid_long(row, "d2"),
                                      grid_double(row, "x"), tol, opt);
    throw parse_error("unknown koshliakov kind: " + kind);
  }
  if (family == "soni") {
    const auto kind = grid_get_or(row, "kind", "single");
    if (kind == "single")
      return verify_soni(grid_double(row, "alpha"), tol, opt);
    if (kind == "double")
      return verify_soni_double(grid_long(row, "d1"), grid_long(row, "d2"),
                                grid_double(row, "alpha"), tol, opt);
    throw parse_error("unknown soni kind: " + kind);
  }
  if (family == "jacobi4")
    return verify_jacobi4(grid_get(row, "mode"), tol, opt);
  throw parse_error("unknown identity family: " + family);
}

std::vector<identity_certificate> run_grid(const std::string& text,
                                           double tol_override,
                                           const eval_options& opt) {
  std::vector<identity_certificate> out;
  for (const auto& row : parse_grid(text))
    out.push_back(run_grid_row(row, tol_override, opt));
  return out;
}

}  // namespace selchow
