// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Every expected value is either exact arithmetic, an independent oracle
// from oracles.hpp, or a stated interval; nothing is tuned to the output.
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "specinv/cli.hpp"
#include "specinv/smoothk.hpp"
#include "specinv/spectra.hpp"
#include "specinv/verify.hpp"

using namespace specinv;

namespace {

int failures = 0;

void report(int idx, const char* what, bool ok, const std::string& detail) {
  std::printf("%s  criterion %2d  %-38s %s\n", ok ? "PASS" : "FAIL", idx, what, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string num(double v) {
  char b[40];
  std::snprintf(b, sizeof(b), "%.10g", v);
  return b;
}

ContextPtr scalar_ctx(const GroupDescriptor& gd) {
  auto group = make_group(gd);
  auto alg = scalar_algebra(8);
  return CrossedContext::make(group, alg, make_action(group, alg, "trivial"));
}

CrossedElement gen_walk(const ContextPtr& ctx, double amp) {
  CrossedElement phi(ctx);
  for (const Elem& g : ctx->group->generators()) phi.add_term(g, scalar_value(amp));
  return phi;
}

bool roots_all_equal(const SpectralReport& sr, double want) {
  if (sr.roots.empty()) return false;
  for (const auto& [n, r] : sr.roots)
    if (r != want) return false;
  return true;
}

double root_at(const SpectralReport& sr, std::uint32_t n) {
  for (const auto& [k, r] : sr.roots)
    if (k == n) return r;
  return -1.0;
}

// line walk: exact integer roots, symbol supremum, compression from below
void criterion1() {
  try {
    ContextPtr ctx = scalar_ctx({.kind = "free-abelian", .rank = 1});
    CrossedElement phi = gen_walk(ctx, 1.0);
    SpectralReport sr = spectral_radius(phi, 0, 0, {.n_max = 64});
    bool roots_ok = sr.integer_mode && sr.roots.size() == 64 && roots_all_equal(sr, 2.0);
    CstarEstimate four = cstar_fourier(phi, 1 << 16);
    bool fourier_ok = four.error_bound <= 1e-3 && std::abs(four.value - 2.0) <= 1e-3;
    CstarEstimate comp = cstar_compression(phi, 64);
    bool comp_ok = comp.value >= 1.99 && comp.value <= 2.0;
    report(1, "line walk spectral equality", roots_ok && fourier_ok && comp_ok,
           "roots_exact=" + std::string(roots_ok ? "yes" : "no") + " fourier=" + num(four.value) +
               " compression64=" + num(comp.value));
  } catch (const std::exception& e) {
    report(1, "line walk spectral equality", false, e.what());
  }
}

// quadratic weight: roots shrink towards the same radius
void criterion2() {
  try {
    ContextPtr ctx = scalar_ctx({.kind = "free-abelian", .rank = 1});
    CrossedElement phi = gen_walk(ctx, 1.0);
    SpectralReport sr = spectral_radius(phi, 2, 0, {.n_max = 64});
    double r8 = root_at(sr, 8), r16 = root_at(sr, 16), r32 = root_at(sr, 32),
           r64 = root_at(sr, 64);
    bool near = std::abs(r64 - 2.0) <= 0.2;
    bool decreasing = r8 > r16 && r16 > r32 && r32 > r64;
    report(2, "weighted roots decrease to the radius", near && decreasing,
           "r8=" + num(r8) + " r16=" + num(r16) + " r32=" + num(r32) + " r64=" + num(r64));
  } catch (const std::exception& e) {
    report(2, "weighted roots decrease to the radius", false, e.what());
  }
}

// rank-2 free walk: summable radius 1 exactly, operator norm well below it
void criterion3() {
  try {
    ContextPtr tree = scalar_ctx({.kind = "free", .rank = 2});
    CrossedElement h = gen_walk(tree, 0.25);
    SpectralReport sr = spectral_radius(h, 0, 0, {.n_max = 8});
    bool nu_one = sr.integer_mode && roots_all_equal(sr, 1.0);
    CstarEstimate comp = cstar_compression(h, 8);
    bool comp_ok = comp.value >= 0.83 && comp.value <= 0.86603;
    double gap = 1.0 - comp.value;
    report(3, "free walk keeps a spectral gap", nu_one && comp_ok && gap >= 0.13,
           "nu_l1=" + std::string(nu_one ? "1" : "off") + " compression8=" + num(comp.value) +
               " gap=" + num(gap));
  } catch (const std::exception& e) {
    report(3, "free walk keeps a spectral gap", false, e.what());
  }
}

// heisenberg balls: quartic growth, word-length axioms on sampled pairs
void criterion4() {
  try {
    GroupPtr h = make_group({.kind = "heisenberg"});
    Gauge gauge = Gauge::word_gauge(h, false);
    GrowthReport gr = ball_sizes(gauge, 14);
    bool degree_ok = gr.classification == "polynomial" && gr.degree >= 3.6 && gr.degree <= 4.4;
    Rng rng(13, "acceptance-gauge");
    GaugeAxiomReport ax = check_gauge_axioms(gauge, 8, 100000, rng);
    report(4, "heisenberg growth and gauge axioms", degree_ok && ax.pass,
           "degree=" + num(gr.degree) + " pairs=" + std::to_string(ax.pairs) +
               " max_defect=" + num(ax.max_defect));
  } catch (const std::exception& e) {
    report(4, "heisenberg growth and gauge axioms", false, e.what());
  }
}

// heisenberg walk: mass conservation pins the summable radius at 1; the
// compression at radius 6 is expected to reach 0.95
void criterion5() {
  try {
    ContextPtr hc = scalar_ctx({.kind = "heisenberg"});
    CrossedElement h = gen_walk(hc, 0.25);
    SpectralReport sr = spectral_radius(h, 0, 0, {.n_max = 16});
    bool nu_one = sr.integer_mode && roots_all_equal(sr, 1.0);
    CstarEstimate comp = cstar_compression(h, 6);
    bool comp_ok = comp.value >= 0.95;
    report(5, "heisenberg amenable equality", nu_one && comp_ok,
           "nu_l1=" + std::string(nu_one ? "1" : "off") + " compression6=" + num(comp.value) +
               " needed>=0.95");
  } catch (const std::exception& e) {
    report(5, "heisenberg amenable equality", false, e.what());
  }
}

// inversion of 1 - 0.3(right + left): certified residual, geometric
// coefficients against the exact quadratic-root rate, converging weights
void criterion6() {
  try {
    ContextPtr ctx = scalar_ctx({.kind = "free-abelian", .rank = 1});
    CrossedElement a(ctx);
    a.add_term(Elem{1}, scalar_value(-0.3));
    a.add_term(Elem{-1}, scalar_value(-0.3));
    NeumannResult res = neumann_inverse(unitize(a, Complex(1.0)),
                                        {.tol = 1e-10, .d_max = 6, .m_max = 0});
    bool verdict = res.certificate.verdict && res.certificate.residual <= 1e-10;
    bool coeff_ok = true;
    double worst_rel = 0.0;
    for (std::int64_t n = -20; n <= 20; ++n) {
      if (std::abs(n) < 5) continue;
      double want = 1.25 * std::pow(3.0, -static_cast<double>(std::llabs(n)));
      double got = std::abs(res.inverse.part.at(Elem{n})[0]);
      worst_rel = std::max(worst_rel, rel_err(got, want));
      if (rel_err(got, want) > 0.1) coeff_ok = false;
    }
    bool tails = !res.certificate.levels.empty();
    for (const auto& lv : res.certificate.levels)
      tails = tails && lv.converged && lv.tail_ratio < 0.9;
    report(6, "line inversion with geometric decay", verdict && coeff_ok && tails,
           "residual=" + num(res.certificate.residual) + " worst_rel=" + num(worst_rel) +
               " terms=" + std::to_string(res.certificate.terms));
  } catch (const std::exception& e) {
    report(6, "line inversion with geometric decay", false, e.what());
  }
}

// chain fit on rapidly decreasing sequences: the exact constants
void criterion7() {
  try {
    FitReport fit = check_strong_spec_inv(schwartz_algebra(24), 11, 200, 6, 4);
    bool exact = fit.pass && fit.constants.c == 1.0;
    for (std::size_t m = 0; m < fit.constants.d.size(); ++m)
      exact = exact && fit.constants.d[m] == 1.0 && fit.constants.p[m] == m;
    report(7, "schwartz chain constants are exact", exact,
           "c=" + num(fit.constants.c) + " chains=" + std::to_string(fit.sample_count) +
               " witnesses=" + std::to_string(fit.witnesses.size()));
  } catch (const std::exception& e) {
    report(7, "schwartz chain constants are exact", false, e.what());
  }
}

// unimodular exponentials: sup norm pinned at 1, summable norm unbounded,
// and the fitted two-level constants driven to violation
void criterion8() {
  try {
    std::vector<double> rs = {0.0, 1.0, 2.0, 2.5, 4.0, 7.0, 10.0};
    KatznelsonReport demo = katznelson_demo(rs, 1e-12);
    bool cstar_ok = demo.pass && demo.max_cstar_dev <= 1e-8;
    bool bessel_ok = true;
    for (const auto& row : demo.rows)
      bessel_ok = bessel_ok && std::abs(row.l1 - oracle::bessel_abs_sum(row.r)) <= 1e-8;
    bool exceeds = !demo.rows.empty() && demo.rows.back().l1 > 2.0;
    FitReport fit = check_strong_spec_inv_fourier_tower(23, 48, 3);
    RefutationReport rr = katznelson_refute(fit);
    report(8, "sup norm flat, sum norm unbounded",
           cstar_ok && bessel_ok && exceeds && fit.pass && rr.violated,
           "cstar_dev=" + num(demo.max_cstar_dev) + " l1_at_10=" + num(demo.rows.back().l1) +
               " violated_at_r=" + num(rr.r));
  } catch (const std::exception& e) {
    report(8, "sup norm flat, sum norm unbounded", false, e.what());
  }
}

// rapidly decreasing matrices: dense-product oracle, shifted-budget chain
// bound, and the translation crossed product acting as kernels
void criterion9() {
  try {
    AlgebraPtr sc = scalar_algebra();
    Rng rng(5, "acceptance-dense");
    auto random_sparse = [&](int window, int terms) {
      SkElement e(sc);
      for (int t = 0; t < terms; ++t)
        e.add_term(rng.uniform_int(-window, window), rng.uniform_int(-window, window),
                   scalar_value(rng.complex_gaussian()));
      return e;
    };
    auto dense_product = [&](const SkElement& a, const SkElement& b, int w) {
      int n = 2 * w + 1;
      std::vector<std::vector<Complex>> da(static_cast<std::size_t>(n),
                                           std::vector<Complex>(static_cast<std::size_t>(n)));
      auto db = da, dp = da;
      for (const auto& [k, c] : a.terms())
        da[static_cast<std::size_t>(k.first + w)][static_cast<std::size_t>(k.second + w)] = c[0];
      for (const auto& [k, c] : b.terms())
        db[static_cast<std::size_t>(k.first + w)][static_cast<std::size_t>(k.second + w)] = c[0];
      SkElement r(sc);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Complex s(0.0);
          for (int k = 0; k < n; ++k)
            s += da[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                 db[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
          if (s != Complex(0.0)) r.set_term(i - w, j - w, scalar_value(s));
        }
      return r;
    };
    bool dense_ok = true;
    for (int t = 0; t < 100; ++t) {
      SkElement a = random_sparse(10, 25);
      SkElement b = random_sparse(10, 25);
      SkElement want = dense_product(a, b, 10);
      double gap = sk_seminorm(sk_sub(sk_multiply(a, b), want), 0);
      dense_ok = dense_ok && gap < 1e-14 * (1.0 + sk_seminorm(want, 0));
    }

    FitReport chain = check_sk_chain(59, 60, 5, 4);
    bool chain_ok = chain.pass && chain.constants.c == 1.0;

    GroupPtr z = make_group({.kind = "free-abelian", .rank = 1});
    AlgebraPtr s = schwartz_algebra(24);
    ContextPtr ctx = CrossedContext::make(z, s, make_action(z, s, "translation"));
    Rng krng(21, "acceptance-kernel");
    bool twine_ok = true;
    for (int t = 0; t < 50; ++t) {
      CrossedElement a(ctx), b(ctx);
      for (std::int64_t j = -2; j <= 2; ++j) {
        std::map<std::int64_t, Complex> fa, fb;
        for (std::int64_t n = -8; n <= 8; ++n) {
          if (krng.uniform(0.0, 1.0) < 0.4) fa[n] = krng.complex_gaussian();
          if (krng.uniform(0.0, 1.0) < 0.4) fb[n] = krng.complex_gaussian();
        }
        if (!fa.empty()) a.add_term(Elem{j}, function_value(*s, fa));
        if (!fb.empty()) b.add_term(Elem{j}, function_value(*s, fb));
      }
      SkElement lhs = to_kernel(convolve(a, b));
      SkElement rhs = sk_multiply(to_kernel(a), to_kernel(b));
      double gap = sk_seminorm(sk_sub(lhs, rhs), 0);
      twine_ok = twine_ok && gap < 1e-12 * (1.0 + sk_seminorm(rhs, 0));
    }
    report(9, "rapidly decreasing matrix product laws", dense_ok && chain_ok && twine_ok,
           std::string("dense=") + (dense_ok ? "ok" : "off") + " chain_c=" +
               num(chain.constants.c) + " kernel=" + (twine_ok ? "ok" : "off"));
  } catch (const std::exception& e) {
    report(9, "rapidly decreasing matrix product laws", false, e.what());
  }
}

// translation crossed product: finite chain constants; order-two crossed
// product identified with its fixed-point matrix picture
void criterion10() {
  try {
    GroupPtr z = make_group({.kind = "free-abelian", .rank = 1});
    AlgebraPtr s = schwartz_algebra(32);
    ContextPtr sctx = CrossedContext::make(z, s, make_action(z, s, "translation"));
    FitReport fit = check_strong_spec_inv(sctx, 17, 200, 4, 3);

    GroupPtr c2 = make_group({.kind = "cyclic", .modulus = 2});
    AlgebraPtr two = scale_schwartz_algebra({1.0, 0.5}, 4);
    ContextPtr z2 = CrossedContext::make(
        c2, two, make_action(c2, two, "permutation", {{0, 1}, {1, 0}}));
    FiniteCrossedReport fin = check_finite_crossed(z2, 31, 24);
    report(10, "crossed chain fit and finite embedding", fit.pass && fin.pass,
           "c=" + num(fit.constants.c) + " witnesses=" + std::to_string(fit.witnesses.size()) +
               " finite_checked=" + std::to_string(fin.checked));
  } catch (const std::exception& e) {
    report(10, "crossed chain fit and finite embedding", false, e.what());
  }
}

// the small inequalities everything else leans on
void criterion11() {
  try {
    SumPowerReport sp = check_sum_power(6, 5, 10000, 29);

    bool corner = true;
    for (int q = 0; q <= 6; ++q)
      for (int r1 = -20; r1 <= 20; ++r1)
        for (int r2 = -20; r2 <= 20; ++r2) {
          double lhs = std::pow(1.0 + std::abs(r1) + std::abs(r2), q);
          double rhs = std::pow(2.0, q) *
                       (std::pow(1.0 + std::abs(r1), q) + std::pow(1.0 + std::abs(r2), q));
          corner = corner && leq_with_slack(lhs, rhs);
        }

    GroupPtr z = make_group({.kind = "free-abelian", .rank = 1});
    AlgebraPtr s32 = schwartz_algebra(32);
    ContextPtr sctx = CrossedContext::make(z, s32, make_action(z, s32, "translation"));
    FitReport uni = check_unitized_chain(sctx, 53, 100, 3, 2);

    FitReport lift = check_bc_implies_chain(matrix_lift(schwartz_algebra(16), 2), 67, 100, 4, 3);
    bool lift_ok = lift.pass && lift.constants.c == 2.0;

    ContextPtr zc = scalar_ctx({.kind = "free-abelian", .rank = 1});
    CrossedElement psi = gen_walk(zc, 1.0);
    CrossedElement f(zc);
    for (std::int64_t n = -3; n <= 3; ++n) f.add_term(Elem{n}, scalar_value(1.0));
    bool split_ok = true;
    for (double m : {0.5, 2.0, 8.0})
      split_ok = split_ok && pytlik_split_bound(psi, f, f, 2, m).verdict;
    ContextPtr hc = scalar_ctx({.kind = "heisenberg"});
    CrossedElement psih = gen_walk(hc, 0.25);
    Gauge hgauge = Gauge::word_gauge(hc->group, false);
    CrossedElement fh(hc);
    for (const Elem& g : hgauge.ball(2)) fh.add_term(g, scalar_value(1.0));
    for (double m : {0.5, 8.0})
      split_ok = split_ok && pytlik_split_bound(psih, fh, fh, 2, m).verdict;

    CrossedElement phi(zc);
    phi.add_term(Elem{1}, scalar_value(Complex(0.5, 0.25)));
    phi.add_term(Elem{-1}, scalar_value(0.5));
    phi.add_term(Elem{0}, scalar_value(-1.0));
    DerivationReport d1 = derivation_check(phi, 1, 5, Coeff{Complex(1.0)}, 1e-12);
    DerivationReport d2 = derivation_check(phi, 2, 5, Coeff{Complex(1.0)}, 1e-12);
    bool deriv_ok = d1.pass && d2.pass;

    report(11, "inequality micro suite",
           sp.pass && corner && uni.pass && lift_ok && split_ok && deriv_ok,
           "tuples=" + std::to_string(sp.checked) + " lift_step=" + num(lift.constants.c) +
               " deriv_diff=" + num(std::max(d1.max_diff, d2.max_diff)));
  } catch (const std::exception& e) {
    report(11, "inequality micro suite", false, e.what());
  }
}

// exact ratio sequence of the line walk
void criterion12() {
  try {
    ContextPtr ctx = scalar_ctx({.kind = "free-abelian", .rank = 1});
    CrossedElement phi = gen_walk(ctx, 1.0);
    PytlikReport rep = pytlik_ratio(phi, 24);
    bool ok = rep.integer_mode && rep.a.size() == 24;
    for (double v : rep.a) ok = ok && v == 4.0;
    report(12, "ratio sequence locks at four", ok,
           "terms=" + std::to_string(rep.a.size()) + " limsup=" + num(rep.limsup_estimate));
  } catch (const std::exception& e) {
    report(12, "ratio sequence locks at four", false, e.what());
  }
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  criterion12();
  std::printf("acceptance: %d of 12 criteria passed\n", 12 - failures);
  return failures == 0 ? 0 : 1;
}
