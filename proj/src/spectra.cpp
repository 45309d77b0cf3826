#include "specinv/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "specinv/rng.hpp"

namespace specinv {

namespace {

double vec_norm(const std::vector<Complex>& v) {
  long double s = 0.0L;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(static_cast<double>(s));
}

double rayleigh(const std::vector<Complex>& x, const std::vector<Complex>& y) {
  Complex s(0.0);
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s.real();
}

bool roots_monotone(const std::vector<std::pair<std::uint32_t, double>>& roots) {
  for (std::size_t i = 1; i < roots.size(); ++i)
    if (roots[i].second > roots[i - 1].second * (1.0 + kRelSlack)) return false;
  return true;
}

void finalize(SpectralReport& rep) {
  if (rep.roots.empty()) fail(ErrorKind::domain, "spectral_radius: empty root sequence");
  rep.estimate = rep.roots.front().second;
  for (const auto& [n, r] : rep.roots) rep.estimate = std::min(rep.estimate, r);
  rep.last_value = rep.roots.back().second;
  rep.monotone = roots_monotone(rep.roots);
}

// Top singular value of the l x l matrix s (row major) via power iteration
// on s^* s; the start has positive overlap with every direction we care for.
double top_singular(const std::vector<Complex>& s, std::size_t l) {
  if (l == 1) return std::abs(s[0]);
  std::vector<Complex> h(l * l, Complex(0.0));
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      Complex acc(0.0);
      for (std::size_t r = 0; r < l; ++r) acc += std::conj(s[r * l + i]) * s[r * l + j];
      h[i * l + j] = acc;
    }
  std::vector<Complex> x(l), y(l);
  for (std::size_t i = 0; i < l; ++i)
    x[i] = Complex(1.0 / static_cast<double>(i + 1), 0.25 / static_cast<double>(i + 2));
  double nx = vec_norm(x);
  for (auto& z : x) z /= nx;
  double lam = 0.0;
  for (int it = 0; it < 512; ++it) {
    for (std::size_t i = 0; i < l; ++i) {
      Complex acc(0.0);
      for (std::size_t j = 0; j < l; ++j) acc += h[i * l + j] * x[j];
      y[i] = acc;
    }
    double r = rayleigh(x, y);
    double ny = vec_norm(y);
    if (ny == 0.0) return 0.0;
    for (std::size_t i = 0; i < l; ++i) x[i] = y[i] / ny;
    if (it > 0 && std::abs(r - lam) <= 1e-13 * std::max(std::abs(r), 1e-30)) {
      lam = r;
      break;
    }
    lam = r;
  }
  return std::sqrt(std::max(lam, 0.0));
}

}  // namespace

SpectralReport spectral_radius(const CrossedElement& phi, int d, std::size_t m,
                               const SpectralOptions& opts) {
  if (opts.n_max == 0) fail(ErrorKind::config, "spectral_radius: n_max must be positive");
  if (d < 0) fail(ErrorKind::domain, "spectral_radius: negative weight exponent");
  if (m == 0) {
    if (auto ie = try_exact(phi)) {
      try {
        SpectralReport rep;
        rep.d = d;
        rep.m = m;
        rep.integer_mode = true;
        IntegerElement p = *ie;
        for (std::uint32_t n = 1; n <= opts.n_max; ++n) {
          if (n > 1) p = int_convolve(p, *ie, opts.term_budget);
          double norm = int_weighted_norm(p, d);
          rep.roots.emplace_back(n, norm == 0.0 ? 0.0 : nth_root(norm, static_cast<int>(n)));
          if (norm == 0.0) break;
        }
        finalize(rep);
        return rep;
      } catch (const Error&) {
        // coefficient overflow in the exact lane; redo in floating point
      }
    }
  }
  SpectralReport rep;
  rep.d = d;
  rep.m = m;
  CrossedElement p = phi;
  for (std::uint32_t n = 1; n <= opts.n_max; ++n) {
    if (n > 1) {
      try {
        p = convolve(p, phi, opts.prune, opts.term_budget);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::support_budget) {
          rep.truncated = true;
          break;
        }
        throw;
      }
    }
    double norm = weighted_norm(p, d, m);
    rep.roots.emplace_back(n, norm == 0.0 ? 0.0 : nth_root(norm, static_cast<int>(n)));
    if (norm == 0.0) break;
  }
  finalize(rep);
  return rep;
}

CstarEstimate cstar_fourier(const CrossedElement& phi, std::size_t grid) {
  const auto& ctx = *phi.context();
  if (ctx.group->descriptor().kind != "free-abelian")
    fail(ErrorKind::domain, "cstar_fourier: needs a free-abelian group");
  if (!ctx.action->is_trivial()) fail(ErrorKind::domain, "cstar_fourier: needs the trivial action");
  const auto& ad = ctx.algebra->descriptor();
  const bool scalar = ad.kind == "scalar";
  const bool matrix = ad.kind == "matrix" && (ad.base.empty() || ad.base[0].kind == "scalar");
  if (!scalar && !matrix)
    fail(ErrorKind::domain, "cstar_fourier: scalar or matrix coefficients only");
  if (grid < 2) fail(ErrorKind::config, "cstar_fourier: grid too small");
  const auto rank = static_cast<std::size_t>(ctx.group->descriptor().rank);
  if (std::pow(static_cast<double>(grid), static_cast<double>(rank)) >
      static_cast<double>(1 << 24))
    fail(ErrorKind::config, "cstar_fourier: grid^rank too large");
  const std::size_t l = scalar ? 1 : static_cast<std::size_t>(ad.size);

  CstarEstimate est;
  est.method = "fourier";
  if (phi.terms().empty()) return est;

  double lip = 0.0;
  for (const auto& [g, c] : phi.terms())
    lip += static_cast<double>(ctx.gauge->raw(g)) * ctx.algebra->norm0(c);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(grid);
  est.error_bound = lip * step * static_cast<double>(rank);

  std::vector<std::size_t> t(rank, 0);
  std::vector<Complex> symbol(l * l);
  double best = 0.0;
  bool done = false;
  while (!done) {
    std::fill(symbol.begin(), symbol.end(), Complex(0.0));
    for (const auto& [g, c] : phi.terms()) {
      double phase = 0.0;
      for (std::size_t j = 0; j < rank; ++j)
        phase += static_cast<double>(g[j]) * step * static_cast<double>(t[j]);
      Complex e = std::polar(1.0, phase);
      for (std::size_t idx = 0; idx < l * l; ++idx) symbol[idx] += c[idx] * e;
    }
    best = std::max(best, top_singular(symbol, l));
    ++est.iterations;
    done = true;
    for (std::size_t j = 0; j < rank; ++j) {
      if (++t[j] < grid) {
        done = false;
        break;
      }
      t[j] = 0;
    }
    if (rank == 0) done = true;
  }
  est.value = best;
  return est;
}

CstarEstimate cstar_compression(const CrossedElement& phi, std::uint32_t radius,
                                const CompressionOptions& opts) {
  const auto& ctx = *phi.context();
  CrossedElement psi = convolve(involution(phi), phi);

  std::vector<Elem> ball = ctx.gauge->ball(radius);
  const std::size_t nb = ball.size();
  std::map<Elem, std::size_t> index;
  for (std::size_t i = 0; i < nb; ++i) index.emplace(ball[i], i);
  const std::size_t hd = ctx.algebra->hilbert_dim();
  const std::size_t dim = nb * hd;

  struct Triple {
    std::size_t row, col;
    Coeff block;
  };
  std::vector<Triple> triples;
  for (std::size_t i = 0; i < nb; ++i) {
    const Elem& g = ball[i];
    Elem ginv = ctx.group->inverse(g);
    for (const auto& [h, c] : psi.terms()) {
      Elem u = ctx.group->mul(ctx.group->inverse(h), g);
      auto it = index.find(u);
      if (it == index.end()) continue;
      Coeff b = ctx.action->apply(ginv, c);
      if (coeff_is_zero(b)) continue;
      triples.push_back({i, it->second, std::move(b)});
    }
  }

  auto matvec = [&](const std::vector<Complex>& x, std::vector<Complex>& y) {
    std::fill(y.begin(), y.end(), Complex(0.0));
    for (const auto& t : triples)
      ctx.algebra->apply_add(t.block, x.data() + t.col * hd, y.data() + t.row * hd);
  };

  CstarEstimate est;
  est.method = "compression";
  est.radius = radius;
  est.lower_bound_only = true;

  auto run = [&](std::vector<Complex> x) {
    double nx = vec_norm(x);
    if (nx == 0.0) return 0.0;
    for (auto& z : x) z /= nx;
    std::vector<Complex> y(dim);
    double lam = 0.0;
    for (std::size_t it = 0; it < opts.max_iter; ++it) {
      matvec(x, y);
      double r = rayleigh(x, y);
      ++est.iterations;
      double ny = vec_norm(y);
      if (ny == 0.0) {
        est.error_bound = 0.0;
        return 0.0;
      }
      for (std::size_t i = 0; i < dim; ++i) x[i] = y[i] / ny;
      if (it > 0 && std::abs(r - lam) <= opts.tol * std::max(std::abs(r), 1e-30)) {
        est.error_bound = std::abs(r - lam) / std::max(std::abs(r), 1e-30);
        return r;
      }
      lam = r;
    }
    est.error_bound = opts.tol;
    return lam;
  };

  std::vector<Complex> start(dim, Complex(0.0));
  auto eit = index.find(ctx.group->identity());
  if (eit == index.end()) fail(ErrorKind::domain, "cstar_compression: ball misses the identity");
  start[eit->second * hd] = Complex(1.0);
  double lam = run(std::move(start));

  std::vector<Complex> rand_start(dim);
  Rng rng(opts.restart_seed, "compression-restart");
  for (auto& z : rand_start) z = rng.complex_gaussian();
  lam = std::max(lam, run(std::move(rand_start)));

  est.value = std::sqrt(std::max(lam, 0.0));
  return est;
}

NeumannResult neumann_inverse(const UnitizedElement& x, const NeumannOptions& opts) {
  if (std::abs(x.lambda) == 0.0) fail(ErrorKind::domain, "neumann_inverse: no unit component");
  if (opts.d_max < 0 || opts.max_terms < 2)
    fail(ErrorKind::config, "neumann_inverse: bad certificate options");
  const Complex lam = x.lambda;
  CrossedElement a = scale(Complex(-1.0) / lam, x.part);

  std::vector<InversionLevel> levels;
  for (int d = 0; d <= opts.d_max; ++d)
    for (std::size_t m = 0; m <= opts.m_max; ++m) levels.push_back({d, m, 0.0, false});
  std::vector<double> prev(levels.size(), 0.0);
  std::vector<std::vector<double>> recent(levels.size());

  auto record = [&](const CrossedElement& p, bool first) {
    for (std::size_t i = 0; i < levels.size(); ++i) {
      double cur = weighted_norm(p, levels[i].d, levels[i].m);
      if (!first && prev[i] > 0.0) {
        auto& r = recent[i];
        r.push_back(cur / prev[i]);
        if (r.size() > 5) r.erase(r.begin());
      }
      prev[i] = cur;
    }
  };

  CrossedElement series = a;
  CrossedElement p = a;
  record(p, true);
  std::size_t terms = 1;
  double n00 = weighted_norm(p, 0, 0);
  while (n00 >= opts.tol && terms < opts.max_terms) {
    p = convolve(p, a, {}, opts.term_budget);
    series = add(series, p);
    ++terms;
    record(p, false);
    n00 = weighted_norm(p, 0, 0);
  }

  for (std::size_t i = 0; i < levels.size(); ++i) {
    auto& r = recent[i];
    levels[i].tail_ratio = r.empty() ? 0.0 : *std::max_element(r.begin(), r.end());
    levels[i].converged = r.empty() ? n00 < opts.tol : levels[i].tail_ratio < 1.0;
  }
  const auto& l00 = levels.front();
  if (n00 >= opts.tol && !l00.converged)
    fail(ErrorKind::convergence,
         "neumann_inverse: no observed decay, the element looks non-invertible");

  NeumannResult out{UnitizedElement{scale(Complex(1.0) / lam, series), Complex(1.0) / lam}, {}};
  UnitizedElement res = u_mul(x, out.inverse);
  double residual = std::abs(res.lambda - Complex(1.0)) + weighted_norm(res.part, 0, 0);

  out.certificate.terms = terms;
  out.certificate.residual = residual;
  out.certificate.levels = std::move(levels);
  bool all_conv = true;
  for (const auto& lv : out.certificate.levels) all_conv = all_conv && lv.converged;
  out.certificate.verdict = all_conv && residual <= opts.tol;
  return out;
}

PytlikReport pytlik_ratio(const CrossedElement& phi, std::uint32_t n_max,
                          const SpectralOptions& opts) {
  if (n_max == 0) fail(ErrorKind::config, "pytlik_ratio: n_max must be positive");
  CrossedElement diff = sub(phi, involution(phi));
  if (weighted_norm(diff, 0, 0) > 1e-12 * std::max(1.0, weighted_norm(phi, 0, 0)))
    fail(ErrorKind::domain, "pytlik_ratio: element is not self-adjoint");

  std::vector<double> l1(n_max + 3, 0.0);
  PytlikReport rep;
  if (auto ie = try_exact(phi)) {
    try {
      IntegerElement p = *ie;
      l1[1] = int_weighted_norm(p, 0);
      for (std::uint32_t n = 2; n <= n_max + 2; ++n) {
        p = int_convolve(p, *ie, opts.term_budget);
        l1[n] = int_weighted_norm(p, 0);
      }
      rep.integer_mode = true;
    } catch (const Error&) {
      rep.integer_mode = false;
    }
  }
  if (!rep.integer_mode) {
    CrossedElement p = phi;
    l1[1] = weighted_norm(p, 0, 0);
    for (std::uint32_t n = 2; n <= n_max + 2; ++n) {
      p = convolve(p, phi, opts.prune, opts.term_budget);
      l1[n] = weighted_norm(p, 0, 0);
    }
  }
  for (std::uint32_t n = 1; n <= n_max; ++n) {
    if (l1[n] == 0.0) break;
    rep.a.push_back(l1[n + 2] / l1[n]);
  }
  if (!rep.a.empty()) {
    std::size_t lo = rep.a.size() / 2;
    rep.limsup_estimate = *std::max_element(rep.a.begin() + static_cast<std::ptrdiff_t>(lo),
                                            rep.a.end());
  }
  return rep;
}

SplitReport pytlik_split_bound(const CrossedElement& psi, const CrossedElement& f1,
                               const CrossedElement& f2, int q, double m,
                               const SplitOptions& opts) {
  if (psi.context() != f1.context() || psi.context() != f2.context())
    fail(ErrorKind::domain, "pytlik_split_bound: mismatched contexts");
  const auto& ctx = *psi.context();
  if (ctx.algebra->descriptor().kind != "scalar" || !ctx.action->is_trivial())
    fail(ErrorKind::domain, "pytlik_split_bound: needs a scalar group algebra");
  if (q < 1) fail(ErrorKind::config, "pytlik_split_bound: q must be at least 1");
  if (!(m > 0.0)) fail(ErrorKind::config, "pytlik_split_bound: m must be positive");

  GrowthReport growth = ball_sizes(*ctx.gauge, opts.growth_radius);
  if (growth.classification != "polynomial")
    fail(ErrorKind::domain, "pytlik_split_bound: needs polynomial growth");

  SplitReport rep;
  rep.growth_r = growth.degree;
  CrossedElement f1s = involution(f1);
  rep.lhs = weighted_norm(convolve(convolve(f1s, psi), f2), 0, 0);

  auto l2norm = [&](const CrossedElement& e) {
    double s = 0.0;
    for (const auto& [g, c] : e.terms()) {
      double v = ctx.algebra->norm0(c);
      s += v * v;
    }
    return std::sqrt(s);
  };
  rep.big_m = l2norm(f1s) * l2norm(f2);
  rep.big_n = weighted_norm(gauge_multiplier(f1, q), 0, 0) *
              weighted_norm(gauge_multiplier(f2, q), 0, 0);
  rep.psi_l1 = weighted_norm(psi, 0, 0);
  rep.psi_compression = cstar_compression(psi, opts.compression_radius).value;
  double tail = weighted_norm(gauge_multiplier(psi, q), 0, 0);
  rep.rhs = rep.psi_l1 * rep.big_m * std::pow(m, rep.growth_r) +
            tail * rep.big_n * std::pow(m, -static_cast<double>(q));
  rep.verdict = leq_with_slack(rep.lhs, rep.rhs);
  return rep;
}

DerivationReport derivation_check(const CrossedElement& phi, int k, std::uint32_t radius,
                                  const Coeff& eta, double tol) {
  if (k < 0) fail(ErrorKind::config, "derivation_check: negative order");
  const auto& ctx = *phi.context();
  const std::size_t hd = ctx.algebra->hilbert_dim();
  if (eta.size() != hd)
    fail(ErrorKind::domain, "derivation_check: eta must live on the representation space");

  std::vector<Elem> ball = ctx.gauge->ball(radius);
  const std::size_t nb = ball.size();
  std::map<Elem, std::size_t> index;
  for (std::size_t i = 0; i < nb; ++i) index.emplace(ball[i], i);
  for (const auto& [g, c] : phi.terms())
    if (index.find(g) == index.end())
      fail(ErrorKind::domain, "derivation_check: ball does not cover the support");

  std::vector<double> tau(nb);
  for (std::size_t i = 0; i < nb; ++i) tau[i] = static_cast<double>(ctx.gauge->raw(ball[i]));

  struct Triple {
    std::size_t row, col;
    Coeff block;
  };
  std::vector<Triple> kernel;
  for (std::size_t i = 0; i < nb; ++i) {
    const Elem& g = ball[i];
    Elem ginv = ctx.group->inverse(g);
    for (const auto& [h, c] : phi.terms()) {
      Elem u = ctx.group->mul(ctx.group->inverse(h), g);
      auto it = index.find(u);
      if (it == index.end()) continue;
      Coeff b = ctx.action->apply(ginv, c);
      if (coeff_is_zero(b)) continue;
      kernel.push_back({i, it->second, std::move(b)});
    }
  }

  // Commuting with the diagonal iD, written out as the literal products
  // (iD)A and A(iD): a row scaling minus a column scaling per entry.
  for (int step = 0; step < k; ++step) {
    std::vector<Triple> next;
    next.reserve(kernel.size());
    for (auto& t : kernel) {
      Coeff row_scaled = coeff_scale(Complex(0.0, tau[t.row]), t.block);
      Coeff col_scaled = coeff_scale(Complex(0.0, tau[t.col]), t.block);
      Coeff c = coeff_sub(row_scaled, col_scaled);
      if (!coeff_is_zero(c)) next.push_back({t.row, t.col, std::move(c)});
    }
    kernel = std::move(next);
  }

  const std::size_t e_idx = index.at(ctx.group->identity());
  std::vector<Coeff> op_col(nb, Coeff(hd, Complex(0.0)));
  for (const auto& t : kernel)
    if (t.col == e_idx) ctx.algebra->apply_add(t.block, eta.data(), op_col[t.row].data());

  std::vector<Coeff> mult_col(nb, Coeff(hd, Complex(0.0)));
  for (const auto& [g, c] : phi.terms()) {
    std::size_t i = index.at(g);
    Complex f(1.0);
    for (int j = 0; j < k; ++j) f *= Complex(0.0, tau[i]);
    Coeff b = coeff_scale(f, ctx.action->apply(ctx.group->inverse(g), c));
    ctx.algebra->apply_add(b, eta.data(), mult_col[i].data());
  }

  DerivationReport rep;
  for (std::size_t i = 0; i < nb; ++i) {
    double row_max = 0.0;
    for (std::size_t j = 0; j < hd; ++j)
      row_max = std::max(row_max, std::abs(op_col[i][j] - mult_col[i][j]));
    rep.max_diff = std::max(rep.max_diff, row_max);
    bool keep = row_max > 0.0;
    for (std::size_t j = 0; j < hd && !keep; ++j)
      keep = std::abs(op_col[i][j]) > 0.0 || std::abs(mult_col[i][j]) > 0.0;
    if (keep) {
      rep.operator_side.emplace_back(ball[i], op_col[i]);
      rep.multiplier_side.emplace_back(ball[i], mult_col[i]);
    }
  }
  rep.pass = rep.max_diff <= tol;
  return rep;
}

}  // namespace specinv
