#include "selchow/epstein.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "selchow/errors.hpp"
#include "selchow/reduce.hpp"
#include "selchow/specfun.hpp"

namespace selchow {

namespace {

constexpr double kpi = 3.14159265358979323846;

// Truncation length for exponentially decaying Bessel tails.
double bessel_len(const eval_options& opt, cx s) {
  return std::log(1.0 / opt.rel_tol) + 0.5 * kpi * std::abs(s.imag()) + 40.0;
}

cx cpow(double base, cx e) {  // base > 0
  return std::exp(e * std::log(base));
}

const pair_pole* pole_at_r(const functional_equation_pair& p) {
  for (const auto& pp : p.phi_poles)
    if (std::abs(pp.location - p.r) < 1e-9) return &pp;
  return nullptr;
}

void require_class_a(const functional_equation_pair& p) {
  if (!p.class_a())
    throw not_class_a_error(p.name +
                            ": the diagonal double series needs Gamma(s) pairs");
}

void check_form(const quadratic_form& q) {
  if (!(q.a > 0.0) || !(q.c > 0.0) || !(q.discriminant() < 0.0))
    throw outside_domain_error("quadratic form must be positive definite");
}

// Values of f across a point where the expansion is termwise singular but
// the sum is analytic: symmetric means kill the odd error, two Richardson
// stages the h^2 and h^4 parts.  Samples stay outside the singular window.
cx removable_point(const std::function<cx(cx)>& f, cx s) {
  const double h = 0.016;
  cx g1 = (f(s + h) + f(s - h)) / 2.0;
  cx g2 = (f(s + h / 2.0) + f(s - h / 2.0)) / 2.0;
  cx g3 = (f(s + h / 4.0) + f(s - h / 4.0)) / 2.0;
  cx r1 = (4.0 * g2 - g1) / 3.0;
  cx r2 = (4.0 * g3 - g2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

// sum over one product-grid knot of b(m) a(n) mu_m^z.
cx sigma_entry(const product_entry& e, const coefficient_sequence& bs,
               const coefficient_sequence& as, cx z) {
  cx acc = 0.0;
  for (auto [m, n] : e.contrib) {
    cx cc = bs.coef(m) * as.coef(n);
    if (cc != cx(0.0)) acc += cc * cpow(bs.lam(m), z);
  }
  return acc;
}

void check_grid_size(std::size_t have, const eval_options& opt) {
  if (have > opt.max_bessel_terms)
    throw accuracy_error("Bessel grid needs " + std::to_string(have) +
                         " knots, cap is " +
                         std::to_string(opt.max_bessel_terms));
}

}  // namespace

// ---------------------------------------------------------------------------
// Diagonal double series.

cx z2_direct(const functional_equation_pair& p1,
             const functional_equation_pair& p2, cx s,
             const eval_options& opt) {
  require_class_a(p1);
  require_class_a(p2);
  double need = 2.0 * std::max(p1.sigma_a, p2.sigma_a) + 0.1;
  if (s.real() < need)
    throw outside_absolute_convergence_error(
        "direct double sum needs Re s >= " + std::to_string(need));
  const cx e1 = p1.a0(), e2 = p2.a0();
  const auto& s1 = p1.phi_seq;
  const auto& s2 = p2.phi_seq;
  neumaier_cx acc;
  double prev_mag = 0.0;
  for (std::size_t ring = 1;; ++ring) {
    if (ring > opt.lattice_radius)
      throw accuracy_error("direct double sum did not settle within " +
                           std::to_string(opt.lattice_radius) + " shells");
    s1.ensure(ring);
    s2.ensure(ring);
    neumaier_cx shell;
    shell.add(s1.coef(ring) * e2 * cpow(s1.lam(ring), -s));
    shell.add(e1 * s2.coef(ring) * cpow(s2.lam(ring), -s));
    for (std::size_t n = 1; n <= ring; ++n)
      shell.add(s1.coef(ring) * s2.coef(n) * cpow(s1.lam(ring) + s2.lam(n), -s));
    for (std::size_t m = 1; m < ring; ++m)
      shell.add(s1.coef(m) * s2.coef(ring) * cpow(s1.lam(m) + s2.lam(ring), -s));
    acc.add(shell.value());
    double mag = std::abs(shell.value());
    if (ring >= 8 && mag > 0.0 && prev_mag > mag) {
      // |shell| ~ ring^{-p}: geometric-free tail bound ~ mag * ring/(p-1).
      double p = std::log(prev_mag / mag) /
                 std::log(double(ring) / double(ring - 1));
      if (p > 1.1) {
        double tail = mag * double(ring) / (p - 1.0);
        if (tail <= opt.rel_tol * std::abs(acc.value())) break;
      }
    }
    if (mag > 0.0) prev_mag = mag;
  }
  return acc.value();
}

cx h_sum(const functional_equation_pair& P, const functional_equation_pair& Q,
         cx sigma, const eval_options& opt) {
  require_class_a(P);
  require_class_a(Q);
  double L = bessel_len(opt, sigma);
  double nu_cut = 0.25 * L * L;
  auto grid =
      product_sequence(P.psi_seq, Q.phi_seq, combine_mode::product, nu_cut, opt);
  check_grid_size(grid.size(), opt);
  const double r1 = P.r;
  const cx expo = (sigma - r1) / 2.0;
  return parallel_sum(grid.size(), [&](std::size_t i) -> cx {
    const auto& e = grid[i];
    cx acc = 0.0;
    for (auto [m, n] : e.contrib) {
      cx cc = P.psi_seq.coef(m) * Q.phi_seq.coef(n);
      if (cc != cx(0.0))
        acc += cc * std::exp(expo * std::log(P.psi_seq.lam(m) / Q.phi_seq.lam(n)));
    }
    if (acc == cx(0.0)) return acc;
    return acc * bessel_k(cx(r1) - sigma, 2.0 * std::sqrt(e.value), opt.quadrature);
  });
}

cx z2_sc(const functional_equation_pair& p1,
         const functional_equation_pair& p2, cx s, const eval_options& opt) {
  require_class_a(p1);
  require_class_a(p2);
  const double rr = p1.r + p2.r;
  const cx rho1 = p1.rho(), rho2 = p2.rho();
  if (rho1 != cx(0.0) && rho2 != cx(0.0) && std::abs(s - rr) < 1e-4)
    throw pole_error(rr, gamma(cx(p1.r)) * gamma(cx(p2.r)) * rho1 * rho2 *
                             rgamma(cx(rr)));
  if (std::abs(s) < 1e-12) return -p1.phi_at_zero * p2.phi_at_zero;

  auto plain = [&](cx ss) -> cx {
    cx bracket = -p2.phi_at_zero * completed_total(p1, ss, opt);
    for (const auto& pp : p1.phi_poles)
      bracket += pp.residue * gamma(cx(pp.location)) *
                 completed_total(p2, ss - pp.location, opt);
    bracket += 2.0 * h_sum(p1, p2, ss, opt);
    return rgamma(ss) * bracket;
  };

  if (pole_at_r(p1) != nullptr && std::abs(s - p1.r) < 1e-3) {
    // The pole of phi1 at r1 and the edge term of phi2 at 0 cancel; the
    // limit point itself has a closed form.
    if (std::abs(s - p1.r) < 1e-12) return value_at_r1(p1, p2, 1.0, opt);
    return removable_point(plain, s);
  }
  return plain(s);
}

cx value_at_r1(const functional_equation_pair& p1,
               const functional_equation_pair& p2, double xi,
               const eval_options& opt) {
  require_class_a(p1);
  require_class_a(p2);
  if (!(xi > 0.0))
    throw non_positive_argument_error("knot scale xi must be positive");
  const pair_pole* pp = pole_at_r(p1);
  if (pp == nullptr)
    throw hypothesis_error(p1.name + ": value at s = r needs phi's pole at r");
  const double r1 = p1.r;
  cx rho1 = pp->residue;
  cx lead = -p2.phi_at_zero * (laurent_constant(p1, opt) +
                               rho1 * (std::log(xi) + euler_gamma +
                                       digamma(cx(r1)))) +
            rho1 * phi_deriv_at_zero(p2, opt);
  double L = bessel_len(opt, cx(r1));
  double cut = 0.25 * L * L / xi;
  auto grid =
      product_sequence(p1.psi_seq, p2.phi_seq, combine_mode::product, cut, opt);
  check_grid_size(grid.size(), opt);
  cx ks = parallel_sum(grid.size(), [&](std::size_t i) -> cx {
    const auto& e = grid[i];
    cx d = 0.0;
    for (auto [m, n] : e.contrib)
      d += p1.psi_seq.coef(m) * p2.phi_seq.coef(n);
    if (d == cx(0.0)) return d;
    return d * bessel_k(cx(0.0), 2.0 * std::sqrt(xi * e.value), opt.quadrature);
  });
  return lead + 2.0 * rgamma(cx(r1)) * ks;
}

double xi_threshold(const functional_equation_pair& p1,
                    const functional_equation_pair& p2,
                    const eval_options& opt) {
  require_class_a(p1);
  require_class_a(p2);
  const pair_pole* pp = pole_at_r(p1);
  if (pp == nullptr)
    throw hypothesis_error(p1.name + ": threshold needs phi's pole at r");
  if (p2.phi_at_zero == cx(0.0))
    throw hypothesis_error(p2.name + ": threshold needs phi(0) != 0");
  cx e = phi_deriv_at_zero(p2, opt) / p2.phi_at_zero -
         laurent_constant(p1, opt) / pp->residue - euler_gamma -
         digamma(cx(p1.r));
  return std::exp(e.real());
}

// ---------------------------------------------------------------------------
// Dyadic towers.

functional_equation_pair compose_pair(const functional_equation_pair& p,
                                      double lambda_cap,
                                      const eval_options& opt) {
  require_class_a(p);
  functional_equation_pair base = p;
  auto freeze = [&](coefficient_sequence& seq) {
    try {
      seq.count_below(std::max(2.0 * lambda_cap, 8000.0));
    } catch (const accuracy_error&) {
      // keep whatever a fixed-row sequence holds
    }
    seq.gen_lambda = nullptr;
    seq.gen_a = nullptr;
    seq.gen_a_block = nullptr;
  };
  freeze(base.phi_seq);
  freeze(base.psi_seq);

  auto side = [&](const coefficient_sequence& seq,
                  cx edge) -> coefficient_sequence {
    auto sums = product_sequence(seq, seq, combine_mode::sum, lambda_cap, opt);
    std::size_t singles = 0;
    try {
      singles = seq.count_below(lambda_cap);
    } catch (const accuracy_error&) {
      singles = seq.size();
    }
    struct item {
      double v;
      cx c;
    };
    std::vector<item> items;
    items.reserve(sums.size() + singles);
    for (const auto& e : sums) {
      cx c = 0.0;
      for (auto [m, n] : e.contrib) c += seq.coef(m) * seq.coef(n);
      items.push_back({e.value, c});
    }
    for (std::size_t n = 1; n <= singles; ++n)
      items.push_back({seq.lam(n), 2.0 * edge * seq.coef(n)});
    std::sort(items.begin(), items.end(),
              [](const item& a, const item& b) { return a.v < b.v; });
    coefficient_sequence out;
    for (const auto& it : items) {
      if (!out.lambda.empty() &&
          it.v - out.lambda.back() <= opt.merge_tol * it.v)
        out.a.back() += it.c;
      else {
        out.lambda.push_back(it.v);
        out.a.push_back(it.c);
      }
    }
    return out;
  };

  functional_equation_pair q;
  q.name = p.name + " composed";
  q.phi_seq = side(base.phi_seq, base.a0());
  q.psi_seq = side(base.psi_seq, base.b0());
  q.phi_seq.tail_bound_exponent = 2.0 * p.r - 1.0 + 0.3;
  q.psi_seq.tail_bound_exponent = 2.0 * p.r - 1.0 + 0.3;
  q.r = 2.0 * p.r;
  q.sigma_a = 2.0 * p.r + 0.2;
  q.sigma_b = 2.0 * p.r + 0.2;
  q.delta = delta_factor_kind::gamma;
  cx g = gamma(cx(p.r));
  cx rg2 = rgamma(cx(2.0 * p.r));
  if (p.rho() != cx(0.0))
    q.phi_poles = {{2.0 * p.r, g * g * p.rho() * p.rho() * rg2}};
  if (p.rho_dual() != cx(0.0))
    q.psi_poles = {{2.0 * p.r, g * g * p.rho_dual() * p.rho_dual() * rg2}};
  q.phi_at_zero = -base.a0() * base.a0();
  q.psi_at_zero = -base.b0() * base.b0();
  functional_equation_pair dbase = dual(base);
  q.phi_closed = [base, opt](cx s) { return z2_sc(base, base, s, opt); };
  q.psi_closed = [dbase, opt](cx s) { return z2_sc(dbase, dbase, s, opt); };
  return q;
}

cx zk_dyadic(const functional_equation_pair& p, int k, cx s,
             const eval_options& opt) {
  if (k < 1 || k > 3)
    throw outside_domain_error("dyadic tower depth must be 1, 2 or 3");
  if (k == 1) return z2_sc(p, p, s, opt);
  return zk_dyadic(compose_pair(p, 4000.0, opt), k - 1, s, opt);
}

cx zeta4_product(cx s) {
  if (std::abs(s - 2.0) < 1e-4)
    throw pole_error(2.0, 6.0 * riemann_zeta(cx(2.0)));
  cx u = s - 1.0;
  if (std::abs(u) < 1e-4) {
    // (1 - 2^{2-2s}) zeta(s) is analytic at s = 1; expand both factors.
    const double l2 = std::log(2.0);
    const double stieltjes1 = -0.0728158454836767;
    cx f = 2.0 * l2 + u * (2.0 * euler_gamma * l2 - 2.0 * l2 * l2) +
           u * u * ((4.0 / 3.0) * l2 * l2 * l2 - 2.0 * euler_gamma * l2 * l2 -
                    2.0 * stieltjes1 * l2);
    return f * 8.0 * riemann_zeta(s - 1.0);
  }
  return 8.0 * (1.0 - std::exp((2.0 - 2.0 * s) * std::log(2.0))) *
         riemann_zeta(s) * riemann_zeta(s - 1.0);
}

// ---------------------------------------------------------------------------
// Quadratic-form double series.

cx zq_sc(const functional_equation_pair& p1,
         const functional_equation_pair& p2, const quadratic_form& q, cx s,
         const eval_options& opt) {
  check_form(q);
  if (p1.class_a() || p2.class_a())
    throw unsupported_pair_error(
        "quadratic-form double series needs half-gamma pairs");
  if (p1.delta != p2.delta)
    throw parity_error("mixed-parity quadratic-form series vanishes; "
                       "use the weighted variant");
  const bool even = p1.delta == delta_factor_kind::gamma_half0;
  const double absd = -q.discriminant();
  const double k = std::sqrt(absd) / (2.0 * q.a);
  const double ba = q.b / q.a;

  auto total = [&](cx ss) -> cx {
    double L = bessel_len(opt, ss);
    auto grid = product_sequence(p1.psi_seq, p2.phi_seq,
                                 combine_mode::product, L / (2.0 * k), opt);
    check_grid_size(grid.size(), opt);
    cx bes = parallel_sum(grid.size(), [&](std::size_t i) -> cx {
      const auto& e = grid[i];
      cx sig = sigma_entry(e, p1.psi_seq, p2.phi_seq, 2.0 * ss - 1.0);
      if (sig == cx(0.0)) return sig;
      double nu = e.value;
      double trig = even ? std::cos(ba * nu) : std::sin(ba * nu);
      if (trig == 0.0) return cx(0.0);
      return sig * trig * cpow(nu, 0.5 - ss) *
             bessel_k(ss - 0.5, 2.0 * k * nu, opt.quadrature);
    });
    cx t = (even ? 8.0 : -8.0) * cpow(k, 0.5 - ss) * bes;
    if (even)
      t += -4.0 * p2.phi_at_zero * completed_total(p1, 2.0 * ss, opt) +
           2.0 * std::sqrt(kpi) * p1.rho() * cpow(k, 1.0 - 2.0 * ss) *
               completed_total(p2, 2.0 * ss - 1.0, opt);
    return t * rgamma(ss) * cpow(q.a, -ss);
  };

  if (even) {
    if (p1.rho() != cx(0.0) && p2.rho() != cx(0.0) &&
        std::abs(s - 1.0) < 1e-4)
      throw pole_error(1.0, 2.0 * kpi * p1.rho() * p2.rho() / std::sqrt(absd));
    if (std::abs(s) < 1e-12) return -4.0 * p1.phi_at_zero * p2.phi_at_zero;
    if (std::abs(s - 0.5) < 2.5e-3) return removable_point(total, s);
  }
  return total(s);
}

cx zq_weighted(const functional_equation_pair& p1,
               const functional_equation_pair& p2, const quadratic_form& q,
               cx s, const eval_options& opt) {
  check_form(q);
  if (p1.class_a() || p2.class_a())
    throw unsupported_pair_error(
        "quadratic-form double series needs half-gamma pairs");
  if (p1.delta != delta_factor_kind::gamma_half1 ||
      p2.delta != delta_factor_kind::gamma_half1)
    throw parity_error("the weighted variant needs two odd pairs");
  const double absd = -q.discriminant();
  const double sd = std::sqrt(absd);
  const double k = sd / (2.0 * q.a);
  const double ba = q.b / q.a;
  double L = bessel_len(opt, s);
  auto grid = product_sequence(p1.psi_seq, p2.phi_seq, combine_mode::product,
                               L / (2.0 * k), opt);
  check_grid_size(grid.size(), opt);
  cx tot = parallel_sum(grid.size(), [&](std::size_t i) -> cx {
    const auto& e = grid[i];
    cx sig = sigma_entry(e, p1.psi_seq, p2.phi_seq, 2.0 * s - 3.0);
    if (sig == cx(0.0)) return sig;
    double nu = e.value;
    cx t = std::cos(ba * nu) *
               bessel_k(1.5 - s, 2.0 * k * nu, opt.quadrature) +
           (q.b / sd) * std::sin(ba * nu) *
               bessel_k(0.5 - s, 2.0 * k * nu, opt.quadrature);
    return sig * cpow(nu, 2.5 - s) * t;
  });
  return 8.0 * cpow(k, 1.5 - s) * tot * rgamma(s) * cpow(q.a, -s);
}

// ---------------------------------------------------------------------------
// Classical Epstein zeta function.

cx ep_ig(const quadratic_form& q, cx s, const eval_options& opt) {
  (void)opt;
  check_form(q);
  const double absd = -q.discriminant();
  const double bigd = absd / 4.0;
  const double sd = std::sqrt(bigd);
  if (std::abs(s - 1.0) < 1e-4) throw pole_error(1.0, kpi / sd);
  const double cut = 47.0;  // exp(-47) is below any double tolerance
  const long mb = static_cast<long>(
      std::max(std::sqrt(4.0 * q.c * cut / (kpi * absd)),
               std::sqrt(q.a * cut / kpi)) + 2.0);
  const long nb = static_cast<long>(
      std::max(std::sqrt(4.0 * q.a * cut / (kpi * absd)),
               std::sqrt(q.c * cut / kpi)) + 2.0);
  cx cells = parallel_sum(2 * mb + 1, [&](std::size_t idx) -> cx {
    const double m = static_cast<double>(static_cast<long>(idx) - mb);
    neumaier_cx row;
    for (long nn = -nb; nn <= nb; ++nn) {
      const double n = static_cast<double>(nn);
      if (m == 0.0 && n == 0.0) continue;
      double q1 = kpi * q(m, n);
      if (q1 < cut) row.add(cpow(q1, -s) * gamma_upper(s, q1));
      double q2 = kpi * (q.c * m * m - q.b * m * n + q.a * n * n) / bigd;
      if (q2 < cut)
        row.add(cpow(q2, s - 1.0) * gamma_upper(1.0 - s, q2) / sd);
    }
    return row.value();
  });
  cx bracket = 1.0 / (sd * (s - 1.0)) + cells;
  return cpow(kpi, s) * (-rgamma(s + 1.0) + rgamma(s) * bracket);
}

cx classical_sc(const quadratic_form& q, cx s, const eval_options& opt) {
  check_form(q);
  const double absd = -q.discriminant();
  const double k = std::sqrt(absd) / (2.0 * q.a);
  const double ba = q.b / q.a;
  if (std::abs(s - 1.0) < 1e-4) throw pole_error(1.0, 2.0 * kpi / std::sqrt(absd));
  if (std::abs(s) < 1e-12) return cx(-1.0);

  auto total = [&](cx ss) -> cx {
    cx t = 2.0 * gamma(ss) * cpow(kpi, -ss) * riemann_zeta(2.0 * ss) +
           2.0 * gamma(ss - 0.5) * cpow(k, 1.0 - 2.0 * ss) *
               cpow(kpi, 0.5 - ss) * riemann_zeta(2.0 * ss - 1.0);
    double L = bessel_len(opt, ss);
    neumaier_cx bes;
    for (long n = 1; 2.0 * kpi * k * n <= L; ++n) {
      cx sig = 0.0;  // sum_{d | n} d^{2s-1}
      for (long d = 1; d * d <= n; ++d)
        if (n % d == 0) {
          sig += cpow(double(d), 2.0 * ss - 1.0);
          if (d * d != n) sig += cpow(double(n / d), 2.0 * ss - 1.0);
        }
      bes.add(sig * cpow(kpi, ss - 0.5) * std::cos(kpi * ba * n) *
              cpow(kpi * n, 0.5 - ss) *
              bessel_k(ss - 0.5, 2.0 * kpi * k * n, opt.quadrature));
    }
    t += 8.0 * cpow(k, 0.5 - ss) * bes.value();
    return t * cpow(kpi, ss) * rgamma(ss) * cpow(q.a, -ss);
  };

  if (std::abs(s - 0.5) < 2.5e-3) return removable_point(total, s);
  return total(s);
}

cx classical_epstein_direct(const quadratic_form& q, cx s,
                            const eval_options& opt) {
  check_form(q);
  if (s.real() <= 1.05)
    throw outside_absolute_convergence_error(
        "shell summation needs Re s > 1.05");
  neumaier_cx acc;
  cx f_back2 = 0.0, f_back1 = 0.0;  // S_R R^{2s-1} for the last two shells
  cx prev_total = 0.0;
  int settled = 0;
  for (long ring = 1;; ++ring) {
    if (ring > 600)
      throw accuracy_error("shell extrapolation did not settle by ring 600");
    neumaier_cx shell;
    const double R = static_cast<double>(ring);
    for (long n = -ring; n <= ring; ++n) {
      shell.add(cpow(q(R, double(n)), -s));
      shell.add(cpow(q(-R, double(n)), -s));
    }
    for (long m = -ring + 1; m <= ring - 1; ++m) {
      shell.add(cpow(q(double(m), R), -s));
      shell.add(cpow(q(double(m), -R), -s));
    }
    acc.add(shell.value());
    cx f = shell.value() * cpow(R, 2.0 * s - 1.0);
    if (ring >= 24 && ring % 2 == 0) {
      const double rm2 = R - 2.0;
      cx a1 = (f_back2 - f) / (1.0 / (rm2 * rm2) - 1.0 / (R * R));
      cx a0 = f - a1 / (R * R);
      cx tail = a0 * hurwitz_zeta(2.0 * s - 1.0, R + 1.0) +
                a1 * hurwitz_zeta(2.0 * s + 1.0, R + 1.0);
      cx tot = acc.value() + tail;
      if (std::abs(tot - prev_total) <=
          0.3 * opt.rel_tol * (std::abs(tot) + 1e-300)) {
        if (++settled >= 2) return tot;
      } else {
        settled = 0;
      }
      prev_total = tot;
    }
    f_back2 = f_back1;
    f_back1 = f;
  }
}

}  // namespace selchow
