#include "selchow/pair.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "selchow/character.hpp"
#include "selchow/reduce.hpp"
#include "selchow/specfun.hpp"

namespace selchow {

namespace {
constexpr double pi = 3.14159265358979323846264338327950288;
constexpr double stieltjes_gamma1 = -0.0728158454836767;
}  // namespace

void coefficient_sequence::ensure(std::size_t n) const {
  if (n <= lambda.size()) return;
  if (!gen_lambda)
    throw index_error("coefficient sequence has only " +
                      std::to_string(lambda.size()) + " stored terms");
  if (n > hard_cap)
    throw sequence_overflow_error("coefficient sequence cap exceeded");
  std::size_t target = std::max({n, lambda.size() * 2, std::size_t{64}});
  target = std::min(target, hard_cap);
  std::size_t old = lambda.size();
  lambda.resize(target);
  for (std::size_t i = old; i < target; ++i)
    lambda[i] = gen_lambda(i + 1);
  a.resize(target);
  if (gen_a_block) {
    std::vector<cx> block;
    gen_a_block(old + 1, target, block);
    for (std::size_t i = old; i < target; ++i) a[i] = block[i - old];
  } else if (gen_a) {
    for (std::size_t i = old; i < target; ++i) a[i] = gen_a(i + 1);
  } else {
    throw invariant_violation("extendable sequence lacks a coefficient generator");
  }
}

std::size_t coefficient_sequence::count_below(double x) const {
  while (lambda.empty() || lambda.back() <= x) {
    if (!gen_lambda) {
      if (!lambda.empty() && lambda.back() > x) break;
      throw accuracy_error(
          "stored coefficient list ends before the required knot cutoff");
    }
    if (lambda.size() >= hard_cap)
      throw sequence_overflow_error("knot cutoff needs too many coefficients");
    ensure(std::max<std::size_t>(64, lambda.size() * 2));
  }
  return static_cast<std::size_t>(
      std::upper_bound(lambda.begin(), lambda.end(), x) - lambda.begin());
}

cx functional_equation_pair::a0() const {
  if (class_a()) return -phi_at_zero;
  if (delta == delta_factor_kind::gamma_half0) return -2.0 * phi_at_zero;
  return 0.0;
}

cx functional_equation_pair::b0() const {
  if (class_a()) return -psi_at_zero;
  if (delta == delta_factor_kind::gamma_half0) return -2.0 * psi_at_zero;
  return 0.0;
}

cx functional_equation_pair::rho() const {
  for (const auto& p : phi_poles)
    if (std::abs(p.location - r) < 1e-9) return p.residue;
  return 0.0;
}

cx functional_equation_pair::rho_dual() const {
  for (const auto& p : psi_poles)
    if (std::abs(p.location - r) < 1e-9) return p.residue;
  return 0.0;
}

cx delta_factor(const functional_equation_pair& p, cx s) {
  if (p.class_a()) return gamma(s);
  return gamma((s + p.delta_param()) / 2.0);
}

functional_equation_pair dual(const functional_equation_pair& p) {
  functional_equation_pair d = p;
  const std::string suffix = "_dual";
  if (d.name.size() > suffix.size() &&
      d.name.compare(d.name.size() - suffix.size(), suffix.size(), suffix) == 0)
    d.name.erase(d.name.size() - suffix.size());
  else
    d.name += suffix;
  std::swap(d.phi_seq, d.psi_seq);
  std::swap(d.phi_poles, d.psi_poles);
  std::swap(d.phi_at_zero, d.psi_at_zero);
  std::swap(d.phi_closed, d.psi_closed);
  std::swap(d.laurent_r, d.laurent_r_dual);
  std::swap(d.sigma_a, d.sigma_b);
  d.phi_prime_at_zero.reset();
  return d;
}

functional_equation_pair scale_pair(const functional_equation_pair& p,
                                    double xi) {
  if (!p.class_a())
    throw not_class_a_error("scale_pair needs Delta(s) = Gamma(s)");
  if (!(xi > 0.0))
    throw outside_domain_error("scale factor must be positive");
  functional_equation_pair q = p;
  q.name = p.name + "@xi";
  const double r = p.r;
  const double lx = std::log(xi);
  const double br = std::pow(xi, -r);

  for (auto& l : q.phi_seq.lambda) l *= xi;
  if (p.phi_seq.gen_lambda) {
    auto g = p.phi_seq.gen_lambda;
    q.phi_seq.gen_lambda = [g, xi](std::size_t n) { return xi * g(n); };
  }
  for (auto& m : q.psi_seq.lambda) m /= xi;
  if (p.psi_seq.gen_lambda) {
    auto g = p.psi_seq.gen_lambda;
    q.psi_seq.gen_lambda = [g, xi](std::size_t n) { return g(n) / xi; };
  }
  for (auto& b : q.psi_seq.a) b *= br;
  if (p.psi_seq.gen_a) {
    auto g = p.psi_seq.gen_a;
    q.psi_seq.gen_a = [g, br](std::size_t n) { return br * g(n); };
  }
  if (p.psi_seq.gen_a_block) {
    auto g = p.psi_seq.gen_a_block;
    q.psi_seq.gen_a_block = [g, br](std::size_t lo, std::size_t hi,
                                    std::vector<cx>& out) {
      g(lo, hi, out);
      for (auto& v : out) v *= br;
    };
  }

  for (auto& pp : q.phi_poles) pp.residue *= std::pow(xi, -pp.location);
  for (auto& pp : q.psi_poles) pp.residue *= std::pow(xi, pp.location - r);
  q.psi_at_zero = br * p.psi_at_zero;

  if (p.phi_closed) {
    auto h = p.phi_closed;
    q.phi_closed = [h, lx](cx s) { return std::exp(-s * lx) * h(s); };
  }
  if (p.psi_closed) {
    auto h = p.psi_closed;
    q.psi_closed = [h, lx, r](cx u) { return std::exp((u - r) * lx) * h(u); };
  }
  if (p.laurent_r) q.laurent_r = br * (*p.laurent_r - p.rho() * lx);
  if (p.laurent_r_dual)
    q.laurent_r_dual = *p.laurent_r_dual + p.rho_dual() * lx;
  if (p.phi_prime_at_zero)
    q.phi_prime_at_zero = *p.phi_prime_at_zero - lx * p.phi_at_zero;
  return q;
}

functional_equation_pair induced_pair(const functional_equation_pair& p) {
  if (p.delta != delta_factor_kind::gamma_half1)
    throw parity_error("induced_pair needs an odd half-gamma pair");
  functional_equation_pair q;
  q.name = p.name + "_induced";
  q.delta = delta_factor_kind::gamma;
  q.r = 1.5;
  q.sigma_a = (p.sigma_a + 1.0) / 2.0;
  q.sigma_b = (p.sigma_b + 1.0) / 2.0;

  auto lift = [](const coefficient_sequence& s) {
    coefficient_sequence t;
    t.tail_bound_exponent = (s.tail_bound_exponent + 1.0) / 2.0;
    t.lambda.reserve(s.lambda.size());
    t.a.reserve(s.a.size());
    for (std::size_t i = 0; i < s.lambda.size(); ++i) {
      t.lambda.push_back(s.lambda[i] * s.lambda[i]);
      t.a.push_back(s.a[i] * s.lambda[i]);
    }
    if (s.gen_lambda) {
      auto gl = s.gen_lambda;
      t.gen_lambda = [gl](std::size_t n) {
        double l = gl(n);
        return l * l;
      };
      if (s.gen_a) {
        auto ga = s.gen_a;
        t.gen_a = [ga, gl](std::size_t n) { return ga(n) * gl(n); };
      }
    }
    return t;
  };
  q.phi_seq = lift(p.phi_seq);
  q.psi_seq = lift(p.psi_seq);
  for (const auto& pp : p.phi_poles)
    q.phi_poles.push_back({(pp.location + 1.0) / 2.0, pp.residue / 2.0});
  for (const auto& pp : p.psi_poles)
    q.psi_poles.push_back({(pp.location + 1.0) / 2.0, pp.residue / 2.0});
  // phi_ind(0) = phi(-1), a trivial zero of the odd series.
  q.phi_at_zero = 0.0;
  q.psi_at_zero = 0.0;
  if (p.phi_closed) {
    auto h = p.phi_closed;
    q.phi_closed = [h](cx w) { return h(2.0 * w - 1.0); };
  }
  if (p.psi_closed) {
    auto h = p.psi_closed;
    q.psi_closed = [h](cx w) { return h(2.0 * w - 1.0); };
  }
  return q;
}

// ---------------------------------------------------------------------------
// Incomplete-gamma splitting of the completed function.

namespace {

double afe_len(const eval_options& opt, cx s) {
  return std::log(1.0 / opt.rel_tol) + 0.6 * std::abs(s.imag()) + 40.0;
}

// Smallest x with x - c log x >= L.
double exp_cutoff(double L, double c) {
  double x = L + 10.0;
  for (int i = 0; i < 50; ++i) {
    double nx = L + c * std::log(std::max(x, 2.0));
    if (std::abs(nx - x) < 1e-9 * x) return nx;
    x = nx;
  }
  return x;
}

// sum_n coef(n) lambda_n^{-z} Gamma(z, lambda_n) over lambda_n <= cut.
cx afe_side_gamma(const coefficient_sequence& seq, cx z, double cut) {
  std::size_t count = seq.count_below(cut);
  neumaier_cx acc;
  for (std::size_t n = 1; n <= count; ++n) {
    cx c = seq.coef(n);
    if (c == cx(0.0)) continue;
    double lam = seq.lam(n);
    acc.add(c * std::exp(-z * std::log(lam)) * gamma_upper(z, lam));
  }
  return acc.value();
}

// sum_n coef(n) lambda_n^d (lambda_n^2)^{-z} Gamma(z, lambda_n^2) over
// lambda_n^2 <= cut2.
cx afe_side_gamma_half(const coefficient_sequence& seq, cx z, double d,
                       double cut2) {
  std::size_t count = seq.count_below(std::sqrt(cut2));
  neumaier_cx acc;
  for (std::size_t n = 1; n <= count; ++n) {
    cx c = seq.coef(n);
    if (c == cx(0.0)) continue;
    double lam = seq.lam(n);
    double l2 = lam * lam;
    cx term = c * std::exp(-z * std::log(l2)) * gamma_upper(z, l2);
    if (d != 0.0) term *= lam;
    acc.add(term);
  }
  return acc.value();
}

// Meromorphic total Gamma(s) phi(s) for Delta = Gamma.
cx afe_total_a(const functional_equation_pair& p, cx s,
               const eval_options& opt) {
  double L = afe_len(opt, s);
  double cut1 =
      exp_cutoff(L, std::max(p.phi_seq.tail_bound_exponent, 0.0) + 4.0);
  double cut2 =
      exp_cutoff(L, std::max(p.psi_seq.tail_bound_exponent, 0.0) + 4.0);
  cx total = afe_side_gamma(p.phi_seq, s, cut1) +
             afe_side_gamma(p.psi_seq, p.r - s, cut2);
  total += p.phi_at_zero / s;
  for (const auto& pp : p.phi_poles)
    total += gamma(cx(pp.location)) * pp.residue / (s - pp.location);
  return total;
}

// Meromorphic total Gamma((s+d)/2) phi(s) for the half-gamma kinds.
cx afe_total_b(const functional_equation_pair& p, cx s,
               const eval_options& opt) {
  double d = p.delta_param();
  cx w = (s + d) / 2.0;
  double L = afe_len(opt, s);
  double cut1 = exp_cutoff(
      L, std::max(p.phi_seq.tail_bound_exponent, 0.0) / 2.0 + 4.0);
  double cut2 = exp_cutoff(
      L, std::max(p.psi_seq.tail_bound_exponent, 0.0) / 2.0 + 4.0);
  cx total = afe_side_gamma_half(p.phi_seq, w, d, cut1) +
             afe_side_gamma_half(p.psi_seq, d + 0.5 - w, d, cut2);
  if (d == 0.0) total += p.phi_at_zero / w;
  for (const auto& pp : p.phi_poles) {
    double wp = (pp.location + d) / 2.0;
    total += gamma(cx(wp)) * (pp.residue / 2.0) / (w - wp);
  }
  return total;
}

cx afe_total(const functional_equation_pair& p, cx s,
             const eval_options& opt) {
  return p.class_a() ? afe_total_a(p, s, opt) : afe_total_b(p, s, opt);
}

bool near_nonpositive_integer(cx z, double rad) {
  double re = std::round(z.real());
  return re <= 0.0 && std::abs(z - cx(re)) < rad;
}

void check_phi_poles(const functional_equation_pair& p, cx s) {
  for (const auto& pp : p.phi_poles)
    if (std::abs(s - cx(pp.location)) < 1e-4)
      throw pole_error(cx(pp.location), pp.residue);
}

}  // namespace

cx eval_phi(const functional_equation_pair& p, cx s,
            const eval_options& opt) {
  check_phi_poles(p, s);
  if (std::abs(s) < 1e-13) return p.phi_at_zero;
  if (p.phi_closed) return p.phi_closed(s);
  if (p.class_a()) return afe_total_a(p, s, opt) * rgamma(s);
  cx w = (s + p.delta_param()) / 2.0;
  return afe_total_b(p, s, opt) * rgamma(w);
}

cx completed_total(const functional_equation_pair& p, cx s,
                   const eval_options& opt) {
  if (p.phi_closed) {
    cx w = p.class_a() ? s : (s + p.delta_param()) / 2.0;
    if (!near_nonpositive_integer(w, 0.1))
      return delta_factor(p, s) * p.phi_closed(s);
  }
  return afe_total(p, s, opt);
}

cx eval_gamma_phi(const functional_equation_pair& p, cx s,
                  const eval_options& opt) {
  check_phi_poles(p, s);
  if (p.phi_at_zero != cx(0.0) && std::abs(s) < 1e-4) {
    // Residue of Delta(s) phi(s) at s = 0 (Gamma(s/2) carries 2/s there).
    cx res = p.delta == delta_factor_kind::gamma_half0 ? 2.0 * p.phi_at_zero
                                                       : p.phi_at_zero;
    throw pole_error(0.0, res);
  }
  return completed_total(p, s, opt);
}

cx laurent_constant(const functional_equation_pair& p,
                    const eval_options& opt) {
  if (p.laurent_r) return *p.laurent_r;
  if (p.phi_poles.empty())
    throw missing_laurent_error("phi is entire: no Laurent data at r");
  auto g = [&](double h) {
    return (eval_phi(p, cx(p.r + h), opt) + eval_phi(p, cx(p.r - h), opt)) /
           2.0;
  };
  cx g1 = g(0.04), g2 = g(0.02), g3 = g(0.01);
  cx r1 = (4.0 * g2 - g1) / 3.0;
  cx r2 = (4.0 * g3 - g2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

cx phi_deriv_at_zero(const functional_equation_pair& p,
                     const eval_options& opt) {
  if (p.phi_prime_at_zero) return *p.phi_prime_at_zero;
  auto g = [&](double h) {
    return (eval_phi(p, cx(h), opt) - eval_phi(p, cx(-h), opt)) / (2.0 * h);
  };
  cx g1 = g(0.04), g2 = g(0.02), g3 = g(0.01);
  cx r1 = (4.0 * g2 - g1) / 3.0;
  cx r2 = (4.0 * g3 - g2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

cx extract_residue(const std::function<cx(cx)>& f, cx s0) {
  const std::array<double, 4> hs = {0.04, 0.02, 0.01, 0.005};
  std::array<cx, 4> fp, fm, g;
  for (std::size_t i = 0; i < 4; ++i) {
    fp[i] = f(s0 + hs[i]);
    fm[i] = f(s0 - hs[i]);
    g[i] = hs[i] * (fp[i] - fm[i]) / 2.0;
  }
  std::array<cx, 3> r1;
  for (std::size_t i = 0; i < 3; ++i) r1[i] = (4.0 * g[i + 1] - g[i]) / 3.0;
  std::array<cx, 2> r2;
  for (std::size_t i = 0; i < 2; ++i)
    r2[i] = (16.0 * r1[i + 1] - r1[i]) / 15.0;
  cx r3 = (64.0 * r2[1] - r2[0]) / 63.0;
  // A double pole leaves an h^2-resistant even part.
  cx even = hs[3] * hs[3] * (fp[3] + fm[3]) / 2.0;
  if (std::abs(even) > 1e-6 * std::max(1.0, std::abs(r3)))
    throw not_simple_pole_error("pole at the sample point is not simple");
  return r3;
}

// ---------------------------------------------------------------------------
// Knot combination grids.

namespace {

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// lambda(n) = c n^p with integer p?
bool pure_power(const coefficient_sequence& s, double& c, int& p) {
  std::size_t probe = 8;
  if (!s.extendable()) {
    if (s.size() < 3) return false;
    probe = std::min<std::size_t>(probe, s.size());
  } else {
    s.ensure(probe);
  }
  c = s.lam(1);
  if (!(c > 0.0)) return false;
  for (int cand = 1; cand <= 3; ++cand) {
    bool ok = true;
    for (std::size_t n = 2; n <= probe; ++n) {
      double expect = c * std::pow(static_cast<double>(n), cand);
      if (std::abs(s.lam(n) - expect) > 1e-12 * expect) {
        ok = false;
        break;
      }
    }
    if (ok) {
      p = cand;
      return true;
    }
  }
  return false;
}

constexpr std::size_t entry_cap = 200000;

}  // namespace

std::vector<product_entry> product_sequence(const coefficient_sequence& x,
                                            const coefficient_sequence& y,
                                            combine_mode mode, double limit,
                                            const eval_options& opt) {
  double cx1 = 0.0, cy1 = 0.0;
  int px = 0, py = 0;
  bool ppx = pure_power(x, cx1, px);
  bool ppy = pure_power(y, cy1, py);

  std::vector<product_entry> out;

  if (mode == combine_mode::product && ppx && ppy) {
    double kmax = limit / (cx1 * cy1);
    if (kmax < 1.0) return out;
    if (kmax > 4e15)
      throw sequence_overflow_error("product grid key range too large");
    std::map<std::int64_t, product_entry> grouped;
    std::size_t max_m = 1, max_n = 1, pairs = 0;
    for (std::int64_t m = 1;; ++m) {
      double mk = std::pow(static_cast<double>(m), px);
      if (mk > kmax) break;
      std::int64_t km = ipow(m, px);
      for (std::int64_t n = 1;; ++n) {
        double nk = std::pow(static_cast<double>(n), py);
        if (mk * nk > kmax) break;
        std::int64_t key = km * ipow(n, py);
        if (static_cast<double>(key) > kmax * (1.0 + 1e-12)) break;
        auto& e = grouped[key];
        e.value = cx1 * cy1 * static_cast<double>(key);
        e.contrib.push_back({static_cast<std::uint32_t>(m),
                             static_cast<std::uint32_t>(n)});
        max_m = std::max<std::size_t>(max_m, m);
        max_n = std::max<std::size_t>(max_n, n);
        if (++pairs > 4000000)
          throw sequence_overflow_error("product grid pair count too large");
      }
      if (grouped.size() > entry_cap)
        throw sequence_overflow_error("product grid entry cap exceeded");
    }
    x.ensure(max_m);
    y.ensure(max_n);
    out.reserve(grouped.size());
    for (auto& kv : grouped) out.push_back(std::move(kv.second));
    return out;
  }

  if (mode == combine_mode::sum && ppx && ppy && px == py &&
      std::abs(cx1 - cy1) < 1e-12 * cx1) {
    double kmax = limit / cx1;
    if (kmax > 4e15)
      throw sequence_overflow_error("sum grid key range too large");
    std::map<std::int64_t, product_entry> grouped;
    std::size_t max_m = 1, max_n = 1, pairs = 0;
    for (std::int64_t m = 1;; ++m) {
      double mk = std::pow(static_cast<double>(m), px);
      if (mk + 1.0 > kmax) break;
      std::int64_t km = ipow(m, px);
      for (std::int64_t n = 1;; ++n) {
        double nk = std::pow(static_cast<double>(n), px);
        if (mk + nk > kmax) break;
        std::int64_t key = km + ipow(n, px);
        auto& e = grouped[key];
        e.value = cx1 * static_cast<double>(key);
        e.contrib.push_back({static_cast<std::uint32_t>(m),
                             static_cast<std::uint32_t>(n)});
        max_m = std::max<std::size_t>(max_m, m);
        max_n = std::max<std::size_t>(max_n, n);
        if (++pairs > 4000000)
          throw sequence_overflow_error("sum grid pair count too large");
      }
      if (grouped.size() > entry_cap)
        throw sequence_overflow_error("sum grid entry cap exceeded");
    }
    x.ensure(max_m);
    y.ensure(max_n);
    out.reserve(grouped.size());
    for (auto& kv : grouped) out.push_back(std::move(kv.second));
    return out;
  }

  // General case: enumerate and merge near-equal knots.
  struct triple {
    double v;
    std::uint32_t m, n;
  };
  std::vector<triple> all;
  double y1 = (y.size() || y.extendable()) ? (y.ensure(1), y.lam(1)) : 0.0;
  if (!(y1 > 0.0)) throw invariant_violation("empty knot sequence");
  double xlim =
      mode == combine_mode::product ? limit / y1 : limit - y1;
  std::size_t mcount = x.count_below(xlim);
  for (std::size_t m = 1; m <= mcount; ++m) {
    double xv = x.lam(m);
    double ylim =
        mode == combine_mode::product ? limit / xv : limit - xv;
    std::size_t ncount = y.count_below(ylim);
    for (std::size_t n = 1; n <= ncount; ++n) {
      double v = mode == combine_mode::product ? xv * y.lam(n)
                                               : xv + y.lam(n);
      all.push_back({v, static_cast<std::uint32_t>(m),
                     static_cast<std::uint32_t>(n)});
      if (all.size() > 4000000)
        throw sequence_overflow_error("combination pair count too large");
    }
  }
  std::sort(all.begin(), all.end(),
            [](const triple& a, const triple& b) { return a.v < b.v; });
  for (const auto& t : all) {
    if (out.empty() ||
        std::abs(t.v - out.back().value) > opt.merge_tol * t.v) {
      out.push_back({t.v, {}});
      if (out.size() > entry_cap)
        throw sequence_overflow_error("combination entry cap exceeded");
    }
    out.back().contrib.push_back({t.m, t.n});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Built-in pairs.

namespace {

double sigma_k_exact(std::size_t n, long k) {
  double s = 0.0;
  for (std::size_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    s += std::pow(static_cast<double>(d), static_cast<double>(k));
    std::size_t q = n / d;
    if (q != d) s += std::pow(static_cast<double>(q), static_cast<double>(k));
  }
  return s;
}

functional_equation_pair make_zeta2() {
  functional_equation_pair p;
  p.name = "zeta2";
  p.r = 0.5;
  p.sigma_a = p.sigma_b = 0.5;
  p.delta = delta_factor_kind::gamma;
  p.phi_seq.gen_lambda = [](std::size_t n) {
    return pi * static_cast<double>(n) * static_cast<double>(n);
  };
  p.phi_seq.gen_a = [](std::size_t) { return cx(1.0); };
  p.phi_seq.tail_bound_exponent = 0.0;
  p.psi_seq = p.phi_seq;
  double rho = 0.5 / std::sqrt(pi);
  p.phi_poles = {{0.5, rho}};
  p.psi_poles = {{0.5, rho}};
  p.phi_at_zero = p.psi_at_zero = -0.5;
  auto hook = [](cx s) {
    return std::exp(-s * std::log(pi)) * riemann_zeta(2.0 * s);
  };
  p.phi_closed = hook;
  p.psi_closed = hook;
  cx rho0 = (euler_gamma - std::log(pi) / 2.0) / std::sqrt(pi);
  p.laurent_r = rho0;
  p.laurent_r_dual = rho0;
  p.phi_prime_at_zero = -std::log(2.0 * std::sqrt(pi));
  return p;
}

functional_equation_pair make_sigma(long k) {
  if (k < 3 || k % 2 == 0)
    throw unsupported_pair_error("sigma pair needs odd k >= 3");
  if (k > 15) throw unsupported_pair_error("sigma pair exponent cap is 15");
  functional_equation_pair p;
  p.name = "sigma:" + std::to_string(k);
  p.r = static_cast<double>(k + 1);
  p.sigma_a = p.sigma_b = static_cast<double>(k + 1);
  p.delta = delta_factor_kind::gamma;
  double sign = (k % 4 == 3) ? 1.0 : -1.0;  // (-1)^{(k+1)/2}

  auto lam = [](std::size_t n) { return 2.0 * pi * static_cast<double>(n); };
  auto block = [k](std::size_t lo, std::size_t hi, std::vector<cx>& out) {
    out.assign(hi - lo + 1, cx(0.0));
    for (std::size_t d = 1; d <= hi; ++d) {
      double dk = std::pow(static_cast<double>(d), static_cast<double>(k));
      std::size_t m = ((lo + d - 1) / d) * d;
      for (; m <= hi; m += d) out[m - lo] += dk;
    }
  };
  p.phi_seq.gen_lambda = lam;
  p.phi_seq.gen_a = [k](std::size_t n) { return cx(sigma_k_exact(n, k)); };
  p.phi_seq.gen_a_block = block;
  p.phi_seq.tail_bound_exponent = static_cast<double>(k) + 0.1;
  p.psi_seq.gen_lambda = lam;
  p.psi_seq.gen_a = [k, sign](std::size_t n) {
    return cx(sign * sigma_k_exact(n, k));
  };
  p.psi_seq.gen_a_block = [block, sign](std::size_t lo, std::size_t hi,
                                        std::vector<cx>& out) {
    block(lo, hi, out);
    for (auto& v : out) v *= sign;
  };
  p.psi_seq.tail_bound_exponent = static_cast<double>(k) + 0.1;

  double zk1 = riemann_zeta(cx(static_cast<double>(k + 1))).real();
  double rho = std::pow(2.0 * pi, -static_cast<double>(k + 1)) * zk1;
  p.phi_poles = {{p.r, rho}};
  p.psi_poles = {{p.r, sign * rho}};
  cx phi0 = -0.5 * riemann_zeta(cx(-static_cast<double>(k)));
  p.phi_at_zero = phi0;
  p.psi_at_zero = sign * phi0;

  double l2p = std::log(2.0 * pi);
  cx zd = riemann_zeta_deriv(cx(static_cast<double>(k + 1)));
  cx rho0 = std::pow(2.0 * pi, -static_cast<double>(k + 1)) *
            ((euler_gamma - l2p) * zk1 + zd);
  p.laurent_r = rho0;
  p.laurent_r_dual = sign * rho0;
  cx zmk = riemann_zeta(cx(-static_cast<double>(k)));
  p.phi_prime_at_zero = -l2p * phi0 + riemann_zeta_deriv(0.0) * zmk +
                        cx(-0.5) * riemann_zeta_deriv(cx(-static_cast<double>(k)));

  // Laurent data of the hook near s = 1, where the zeta pole meets the
  // trivial zero of zeta(s - k).
  double x = 1.0 - static_cast<double>(k);
  double h = 1e-3;
  auto zp = [&](double t) { return riemann_zeta_deriv(cx(t)).real(); };
  double d1 = zp(x);
  double d2a = (zp(x + h) - zp(x - h)) / (2.0 * h);
  double d2b = (zp(x + h / 2) - zp(x - h / 2)) / h;
  double d2 = (4.0 * d2b - d2a) / 3.0;
  double hh = 1e-2;
  double d3 = (zp(x + hh) - 2.0 * zp(x) + zp(x - hh)) / (hh * hh);
  double ca = d1, cb = d2 / 2.0, cc = d3 / 6.0;
  long kk = k;
  p.phi_closed = [ca, cb, cc, kk, l2p](cx s) {
    cx pre = std::exp(-s * l2p);
    cx u = s - 1.0;
    if (std::abs(u) < 1e-4) {
      cx zl = 1.0 / u + euler_gamma - stieltjes_gamma1 * u;
      cx fl = u * (ca + u * (cb + u * cc));
      return pre * zl * fl;
    }
    return pre * riemann_zeta(s) *
           riemann_zeta(s - static_cast<double>(kk));
  };
  double sg = sign;
  auto base = p.phi_closed;
  p.psi_closed = [base, sg](cx s) { return sg * base(s); };
  return p;
}

functional_equation_pair make_dchi(long d) {
  if (d >= 0)
    throw unsupported_pair_error(
        "divisor-character pair needs an odd character (d < 0)");
  dirichlet_character chi = kronecker_character(d);
  long l = chi.modulus;
  double sl = std::sqrt(static_cast<double>(l));
  functional_equation_pair p;
  p.name = "dchi:" + std::to_string(d);
  p.r = 1.0;
  p.sigma_a = p.sigma_b = 1.0;
  p.delta = delta_factor_kind::gamma;

  auto dcoef = [chi](std::size_t n) {
    double s = 0.0;
    for (std::size_t dd = 1; dd * dd <= n; ++dd) {
      if (n % dd) continue;
      s += chi(static_cast<long>(dd));
      std::size_t q = n / dd;
      if (q != dd) s += chi(static_cast<long>(q));
    }
    return cx(s);
  };
  auto dblock = [chi](std::size_t lo, std::size_t hi, std::vector<cx>& out) {
    out.assign(hi - lo + 1, cx(0.0));
    for (std::size_t dd = 1; dd <= hi; ++dd) {
      double c = chi(static_cast<long>(dd));
      if (c == 0.0) continue;
      std::size_t m = ((lo + dd - 1) / dd) * dd;
      for (; m <= hi; m += dd) out[m - lo] += c;
    }
  };
  p.phi_seq.gen_lambda = [](std::size_t n) { return static_cast<double>(n); };
  p.phi_seq.gen_a = dcoef;
  p.phi_seq.gen_a_block = dblock;
  p.phi_seq.tail_bound_exponent = 0.2;

  double mu_scale = 4.0 * pi * pi / static_cast<double>(l);
  double b_scale = 2.0 * pi / sl;
  p.psi_seq.gen_lambda = [mu_scale](std::size_t n) {
    return mu_scale * static_cast<double>(n);
  };
  p.psi_seq.gen_a = [dcoef, b_scale](std::size_t n) {
    return b_scale * dcoef(n);
  };
  p.psi_seq.gen_a_block = [dblock, b_scale](std::size_t lo, std::size_t hi,
                                            std::vector<cx>& out) {
    dblock(lo, hi, out);
    for (auto& v : out) v *= b_scale;
  };
  p.psi_seq.tail_bound_exponent = 0.2;

  double l1 = dirichlet_l(cx(1.0), chi).real();
  double l0 = dirichlet_l(cx(0.0), chi).real();
  double lp1 = dirichlet_l_deriv(1.0, chi);
  double lp0 = dirichlet_l_deriv(0.0, chi);
  p.phi_poles = {{1.0, l1}};
  p.psi_poles = {{1.0, sl / (2.0 * pi) * l1}};
  p.phi_at_zero = -0.5 * l0;
  p.psi_at_zero = -l1;  // = -rho Gamma(r)
  p.laurent_r = euler_gamma * l1 + lp1;
  p.laurent_r_dual =
      sl / (2.0 * pi) *
      ((euler_gamma - std::log(mu_scale)) * l1 + lp1);
  p.phi_prime_at_zero =
      riemann_zeta_deriv(0.0).real() * l0 + cx(-0.5) * lp0;

  p.phi_closed = [chi](cx s) {
    return riemann_zeta(s) * dirichlet_l(s, chi);
  };
  double lms = std::log(mu_scale);
  p.psi_closed = [chi, b_scale, lms](cx u) {
    return b_scale * std::exp(-u * lms) * riemann_zeta(u) *
           dirichlet_l(u, chi);
  };
  return p;
}

functional_equation_pair make_dirichlet_theta(long d, bool odd) {
  if (odd && d >= 0)
    throw parity_error("odd half-gamma pair needs d < 0");
  if (!odd && d < 0)
    throw parity_error("even half-gamma pair needs d > 0");
  dirichlet_character chi = kronecker_character(d);
  long l = chi.modulus;
  double sl = std::sqrt(static_cast<double>(l));
  functional_equation_pair p;
  p.name = (odd ? "lodd:" : "leven:") + std::to_string(d);
  p.r = 1.0;
  p.sigma_a = p.sigma_b = 1.0;
  p.delta = odd ? delta_factor_kind::gamma_half1
                : delta_factor_kind::gamma_half0;

  double sp = std::sqrt(pi);
  p.phi_seq.gen_lambda = [sp](std::size_t n) {
    return sp * static_cast<double>(n);
  };
  p.phi_seq.gen_a = [chi](std::size_t n) {
    return cx(chi(static_cast<long>(n)));
  };
  p.phi_seq.tail_bound_exponent = 0.0;
  double mu_c = sp / static_cast<double>(l);
  p.psi_seq.gen_lambda = [mu_c](std::size_t n) {
    return mu_c * static_cast<double>(n);
  };
  double b_c = 1.0 / sl;
  p.psi_seq.gen_a = [chi, b_c](std::size_t n) {
    return cx(b_c * chi(static_cast<long>(n)));
  };
  p.psi_seq.tail_bound_exponent = 0.0;

  if (chi.principal()) {
    double rho = 1.0 / sp;
    p.phi_poles = {{1.0, rho}};
    p.psi_poles = {{1.0, rho}};
    p.phi_at_zero = p.psi_at_zero = -0.5;
    cx rho0 = (euler_gamma - std::log(pi) / 2.0) / sp;
    p.laurent_r = rho0;
    p.laurent_r_dual = rho0;
    p.phi_prime_at_zero =
        -std::log(pi) / 2.0 * cx(-0.5) + riemann_zeta_deriv(0.0);
  } else if (!odd) {
    p.phi_at_zero = 0.0;  // trivial zero of the even L-series at s = 0
    p.psi_at_zero = 0.0;
    p.phi_prime_at_zero = dirichlet_l_deriv(0.0, chi);
  } else {
    double l0 = dirichlet_l(cx(0.0), chi).real();
    p.phi_at_zero = l0;
    p.psi_at_zero = b_c * l0;
    p.phi_prime_at_zero =
        -std::log(pi) / 2.0 * l0 + dirichlet_l_deriv(0.0, chi);
  }

  double lpi = std::log(pi);
  p.phi_closed = [chi, lpi](cx s) {
    return std::exp(-s / 2.0 * lpi) * dirichlet_l(s, chi);
  };
  double ll = std::log(static_cast<double>(l));
  p.psi_closed = [chi, lpi, ll](cx u) {
    return std::exp((u - 0.5) * ll - u / 2.0 * lpi) *
           dirichlet_l(u, chi);
  };
  return p;
}

}  // namespace

functional_equation_pair builtin_pair(const std::string& name) {
  auto num = [&](std::size_t prefix) {
    try {
      return std::stol(name.substr(prefix));
    } catch (const std::exception&) {
      throw parse_error("bad numeric suffix in pair name: " + name);
    }
  };
  if (name == "zeta2") return make_zeta2();
  if (name == "sigma3") return make_sigma(3);
  if (name == "sigma5") return make_sigma(5);
  if (name.rfind("sigma:", 0) == 0) return make_sigma(num(6));
  if (name == "dchi4") return make_dchi(-4);
  if (name.rfind("dchi:", 0) == 0) return make_dchi(num(5));
  if (name == "zcomp") return make_dirichlet_theta(1, false);
  if (name.rfind("leven:", 0) == 0) return make_dirichlet_theta(num(6), false);
  if (name == "lodd4") return make_dirichlet_theta(-4, true);
  if (name.rfind("lodd:", 0) == 0) return make_dirichlet_theta(num(5), true);
  throw unsupported_pair_error("unknown builtin pair: " + name);
}

functional_equation_pair load_pair(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open coefficient file: " + path);
  functional_equation_pair p;
  p.name = std::filesystem::path(path).stem().string();
  bool have_r = false, have_sigma = false, have_delta = false;
  double tail = 0.0;
  std::vector<pair_pole> poles;
  std::string line;
  std::size_t expect_n = 1;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    line = line.substr(b);
    auto eq = line.find('=');
    if (eq != std::string::npos &&
        line.find_first_of(" \t") > eq) {
      std::string key = line.substr(0, eq);
      std::string val = line.substr(eq + 1);
      try {
        if (key == "r") {
          p.r = std::stod(val);
          have_r = true;
        } else if (key == "sigma_a") {
          p.sigma_a = std::stod(val);
          have_sigma = true;
        } else if (key == "tail") {
          tail = std::stod(val);
        } else if (key == "delta_factor") {
          have_delta = true;
          if (val == "gamma")
            p.delta = delta_factor_kind::gamma;
          else if (val == "gamma_half0")
            p.delta = delta_factor_kind::gamma_half0;
          else if (val == "gamma_half1")
            p.delta = delta_factor_kind::gamma_half1;
          else
            throw parse_error("unknown delta_factor: " + val);
        } else if (key == "pole") {
          std::istringstream ps(val);
          double re, im, rre, rim;
          char c1, c2, c3;
          if (!(ps >> re >> c1 >> im >> c2 >> rre >> c3 >> rim) ||
              c1 != ',' || c2 != ',' || c3 != ',')
            throw parse_error("bad pole= line");
          if (im != 0.0)
            throw parse_error("complex pole locations are unsupported");
          poles.push_back({re, cx(rre, rim)});
        } else {
          throw parse_error("unknown header key: " + key);
        }
      } catch (const std::invalid_argument&) {
        throw parse_error("bad numeric value for key " + key);
      }
      continue;
    }
    std::istringstream row(line);
    std::size_t n;
    double lam, are, aim;
    if (!(row >> n >> lam >> are >> aim))
      throw parse_error("bad coefficient row: " + line);
    if (n != expect_n)
      throw parse_error("coefficient rows must be consecutive from n = 1");
    if (!(lam > 0.0) ||
        (!p.phi_seq.lambda.empty() && lam <= p.phi_seq.lambda.back()))
      throw parse_error("knots must be positive and strictly increasing");
    p.phi_seq.lambda.push_back(lam);
    p.phi_seq.a.push_back(cx(are, aim));
    ++expect_n;
  }
  if (!have_r || !have_sigma || !have_delta)
    throw parse_error("coefficient file needs r=, sigma_a=, delta_factor=");
  if (p.phi_seq.lambda.empty())
    throw parse_error("coefficient file has no rows");
  if (!p.class_a() && p.r != 1.0)
    throw parse_error("half-gamma pairs have r = 1");
  p.sigma_b = p.sigma_a;
  p.phi_seq.tail_bound_exponent = tail;
  p.psi_seq = p.phi_seq;  // self-dual format
  p.phi_poles = poles;
  p.psi_poles = poles;
  cx rho = p.rho();
  if (p.class_a())
    p.phi_at_zero = poles.empty() ? cx(0.0) : -rho * gamma(cx(p.r));
  else if (p.delta == delta_factor_kind::gamma_half0)
    p.phi_at_zero = poles.empty() ? cx(0.0) : -std::sqrt(pi) * rho / 2.0;
  else
    p.phi_at_zero = 0.0;
  p.psi_at_zero = p.phi_at_zero;
  return p;
}

}  // namespace selchow
