#include "selchow/zeros.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "selchow/epstein.hpp"
#include "selchow/reduce.hpp"
#include "selchow/specfun.hpp"

namespace selchow {

namespace {

constexpr double kpi = std::numbers::pi;

// Blocked parallel map.  Callers warm any lazily extending caches with a
// serial evaluation at the extreme arguments first; the workers then only
// read them.
void parallel_apply(std::size_t count,
                    const std::function<void(std::size_t)>& fn) {
  const std::size_t nt =
      std::min<std::size_t>(thread_count(), std::max<std::size_t>(count, 1));
  if (nt <= 1 || count < 32) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (std::size_t w = 0; w < nt; ++w)
    pool.emplace_back([&] {
      constexpr std::size_t block = 16;
      for (;;) {
        const std::size_t lo = next.fetch_add(block);
        if (lo >= count) return;
        const std::size_t hi = std::min(count, lo + block);
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      }
    });
  for (auto& th : pool) th.join();
}

double bisect_sign(const std::function<double(double)>& f, double a, double b,
                   double fa, double width) {
  while (b - a > width) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fa < 0.0) == (fm < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double hardy_z(const functional_equation_pair& p, double t,
               const eval_options& opt) {
  const double rho_c = p.class_a() ? 0.5 * p.r : 0.5;
  const cx s(rho_c, t);
  const cx v = eval_gamma_phi(p, s, opt);
  const double scale =
      std::max({std::abs(v.real()), std::abs(delta_factor(p, s)), std::abs(v)});
  if (std::abs(v.imag()) > 1e-9 * std::max(scale, 1e-300))
    throw reality_error("completed value is not real on the critical line: "
                        "pair is not real self-dual");
  return v.real();
}

std::vector<zero_bracket> scan_zeros(const std::function<double(double)>& f,
                                     double t_min, double t_max, double step,
                                     const eval_options& opt) {
  if (!(t_min < t_max))
    throw outside_domain_error("scan needs t_min < t_max");
  // Serial warm-up at the extremes: any internal truncation caches grow
  // monotonically with |t|, so later parallel calls only read them.
  f(std::abs(t_min) >= std::abs(t_max) ? t_min : t_max);
  f(std::abs(t_min) >= std::abs(t_max) ? t_max : t_min);

  const double range = t_max - t_min;
  if (step <= 0.0) {
    const std::size_t pre = 256;
    std::vector<double> pv(pre + 1);
    parallel_apply(pre + 1, [&](std::size_t i) {
      pv[i] = f(t_min + range * double(i) / double(pre));
    });
    std::size_t changes = 0;
    for (std::size_t i = 0; i < pre; ++i)
      if ((pv[i] < 0.0) != (pv[i + 1] < 0.0)) ++changes;
    const double gap = range / double(std::max<std::size_t>(changes, 1));
    step = std::max(std::min(0.05, gap / 4.0), range / 200000.0);
  }

  const auto n = static_cast<std::size_t>(std::ceil(range / step));
  std::vector<double> val(n + 1);
  parallel_apply(n + 1, [&](std::size_t i) {
    val[i] = f(t_min + range * double(i) / double(n));
  });

  std::vector<double> mag(n + 1);
  for (std::size_t i = 0; i <= n; ++i) mag[i] = std::abs(val[i]);
  std::vector<double> sorted = mag;
  std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2,
                   sorted.end());
  const double floor_mag = 3.0 * opt.rel_tol * sorted[sorted.size() / 2];

  std::vector<zero_bracket> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(val[i]) || std::isnan(val[i + 1])) continue;
    if ((val[i] < 0.0) == (val[i + 1] < 0.0)) continue;
    if (std::max(mag[i], mag[i + 1]) < floor_mag) continue;
    zero_bracket zb;
    zb.t_left = t_min + range * double(i) / double(n);
    zb.t_right = t_min + range * double(i + 1) / double(n);
    zb.t_zero = bisect_sign(f, zb.t_left, zb.t_right, val[i], 1e-8);
    zb.residual = std::abs(f(zb.t_zero));
    out.push_back(zb);
  }
  return out;
}

std::optional<double> bateman_zero(double c, const eval_options& opt) {
  if (!(c > 0.0)) throw outside_domain_error("c must be > 0");
  const quadratic_form q{1.0, 0.0, c};
  auto f = [&](double sigma) { return ep_ig(q, cx(sigma), opt).real(); };
  double prev_s = 0.505;
  double prev_v = f(prev_s);
  for (int i = 1; i <= 98; ++i) {
    const double sg = 0.505 + 0.005 * i;
    const double v = f(sg);
    if (v == 0.0) return sg;
    if ((prev_v < 0.0) != (v < 0.0))
      return bisect_sign(f, prev_s, sg, prev_v, 1e-13);
    prev_s = sg;
    prev_v = v;
  }
  return std::nullopt;
}

double real_zero_xi(const functional_equation_pair& p1,
                    const functional_equation_pair& p2, double xi,
                    const eval_options& opt) {
  if (!(xi > 0.0)) throw outside_domain_error("xi must be > 0");
  if (!(p2.phi_at_zero.real() < 0.0))
    throw hypothesis_error("sign change needs phi2(0) < 0 (positive edge)");
  const auto sp = scale_pair(p1, xi);
  auto f = [&](double sigma) { return z2_sc(sp, p2, cx(sigma), opt).real(); };
  const double lo = p1.r + std::max(2e-3, 2e-3 * p2.r);
  const double hi = p1.r + p2.r - std::max(5e-4, 5e-4 * p2.r);

  const int steps = 64;
  double prev_s = lo;
  double prev_v = f(lo);
  for (int i = 1; i <= steps; ++i) {
    const double sg = lo + (hi - lo) * double(i) / steps;
    const double v = f(sg);
    if (v == 0.0) return sg;
    if ((prev_v < 0.0) != (v < 0.0))
      return bisect_sign(f, prev_s, sg, prev_v, 1e-10);
    prev_s = sg;
    prev_v = v;
  }
  throw accuracy_error("no sign change found on (r1, r1 + r2)");
}

double shift_combination(const functional_equation_pair& p,
                         const std::vector<double>& coeffs,
                         const std::vector<double>& taus, double t,
                         const eval_options& opt) {
  if (coeffs.empty() || coeffs.size() != taus.size())
    throw invariant_violation("need matching, non-empty coefficient and "
                              "shift lists");
  double acc = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    acc += coeffs[j] * hardy_z(p, t + taus[j], opt);
  return acc;
}

double lower_bound_probe(const functional_equation_pair& p, int k, double t,
                         const eval_options& opt) {
  if (k < 0 || k > 2) throw outside_domain_error("k must be in 0..2");
  if (std::abs(t) < 1e-6)
    throw outside_domain_error("probe needs t away from 0");
  const cx s(std::ldexp(p.r, k), t);
  const double expo = 0.5 * (std::ldexp(1.0, k + 1) - 1.0);
  return std::abs(zk_dyadic(p, k + 1, s, opt)) / std::pow(std::abs(t), expo);
}

double hecke8_probe(double t) {
  if (std::abs(t) < 1e-6)
    throw outside_domain_error("probe needs t away from 0");
  const cx s(2.0, t);
  const cx v = 240.0 * std::exp(-s * std::log(2.0)) * riemann_zeta(s) *
               riemann_zeta(s - 3.0);
  return std::abs(v) / std::pow(std::abs(t), 1.5);
}

identity_certificate critical_line_integral_check(
    const functional_equation_pair& p, int k, double t, double tol,
    const eval_options& opt) {
  if (!p.class_a())
    throw not_class_a_error("contour identity needs a Gamma(s) pair");
  if (k < 0 || k > 2) throw outside_domain_error("k must be in 0..2");
  functional_equation_pair big = p;
  for (int i = 0; i < k; ++i) big = compose_pair(big, 4000.0, opt);
  const double rl = big.r;
  const auto big_dual = dual(big);

  auto integrand = [&](double y) {
    return eval_gamma_phi(big_dual, cx(0.5 * rl, y - t), opt) *
           eval_gamma_phi(big, cx(0.5 * rl, y + t), opt);
  };
  // Gamma decay e^{-pi(|y| - |t|)/1} bounds the truncated tail.
  const double half_len =
      std::abs(t) + std::log(1.0 / std::min(tol, 1e-3)) / kpi + 6.0;
  const auto half_n = static_cast<std::size_t>(half_len * 32.0) + 1;
  const std::size_t n = 2 * half_n;
  const double h = 2.0 * half_len / double(n);
  integrand(-half_len);  // serial cache warm-up before the parallel sweep
  integrand(half_len);
  const cx integral =
      parallel_sum(n + 1,
                   [&](std::size_t i) {
                     const double w =
                         (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
                     return w * integrand(-half_len + h * double(i));
                   }) *
      (h / 3.0);

  cx lhs, resid;
  const cx g_rl = gamma(cx(rl));
  if (std::abs(t) < 1e-8) {
    lhs = g_rl * z2_sc(big, big, cx(rl), opt);
    // Finite parts of the two residue terms, whose simple poles at t = 0
    // cancel against each other.
    cx br = g_rl * (big.phi_poles.empty() ? eval_phi(big, cx(rl), opt)
                                          : laurent_constant(big, opt));
    cx b0 = 0.0;
    if (big.rho() != cx(0.0)) {
      br += g_rl * digamma(cx(rl)) * big.rho();
      b0 = phi_deriv_at_zero(big, opt) - euler_gamma * big.phi_at_zero;
    }
    resid = -2.0 * big.phi_at_zero * br + 2.0 * g_rl * big.rho() * b0;
  } else {
    const cx s(rl, 2.0 * t);
    lhs = gamma(s) * z2_sc(big, big, s, opt);
    resid = -2.0 * big.phi_at_zero * completed_total(big, s, opt);
    if (big.rho() != cx(0.0))
      resid += 2.0 * g_rl * big.rho() *
               completed_total(big, cx(0.0, 2.0 * t), opt);
  }
  return make_certificate(
      "critical-line-integral",
      {{"pair", p.name}, {"k", std::to_string(k)}, {"t", std::to_string(t)}},
      lhs, resid + integral / (2.0 * kpi), tol);
}

}  // namespace selchow
