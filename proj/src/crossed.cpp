#include "specinv/crossed.hpp"

#include <algorithm>
#include <cmath>

namespace specinv {

ContextPtr CrossedContext::make(GroupPtr group, AlgebraPtr algebra, ActionPtr action,
                                BfsCaps caps) {
  if (action->group() != group || action->algebra() != algebra)
    fail(ErrorKind::config, "crossed context: action does not match group/algebra");
  auto ctx = std::make_shared<CrossedContext>();
  ctx->group = std::move(group);
  ctx->algebra = std::move(algebra);
  ctx->action = std::move(action);
  ctx->gauge = std::make_shared<Gauge>(Gauge::word_gauge(ctx->group, false, caps));
  return ctx;
}

void CrossedElement::set_term(const Elem& g, Coeff c) {
  ctx_->group->validate(g);
  ctx_->algebra->check_size(c);
  if (coeff_is_zero(c)) {
    terms_.erase(g);
  } else {
    terms_[g] = std::move(c);
  }
}

void CrossedElement::add_term(const Elem& g, const Coeff& c) {
  ctx_->group->validate(g);
  ctx_->algebra->check_size(c);
  auto it = terms_.find(g);
  if (it == terms_.end()) {
    if (!coeff_is_zero(c)) terms_[g] = c;
    return;
  }
  it->second = coeff_add(it->second, c);
  if (coeff_is_zero(it->second)) terms_.erase(it);
}

Coeff CrossedElement::at(const Elem& g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? ctx_->algebra->zero() : it->second;
}

CrossedElement delta(const ContextPtr& ctx, const Elem& g, const Coeff& c) {
  CrossedElement e(ctx);
  e.set_term(g, c);
  return e;
}

CrossedElement delta(const ContextPtr& ctx, const Elem& g, Complex scalar) {
  if (ctx->algebra->descriptor().kind != "scalar")
    fail(ErrorKind::domain, "delta: scalar coefficient on a non-scalar algebra");
  return delta(ctx, g, Coeff{scalar});
}

namespace {

void require_same_context(const CrossedElement& a, const CrossedElement& b) {
  if (a.context() != b.context())
    fail(ErrorKind::domain, "crossed elements come from different contexts");
}

}  // namespace

CrossedElement add(const CrossedElement& a, const CrossedElement& b) {
  require_same_context(a, b);
  CrossedElement r = a;
  for (const auto& [g, c] : b.terms()) r.add_term(g, c);
  r.note_pruning_error(b.pruning_error());
  return r;
}

CrossedElement sub(const CrossedElement& a, const CrossedElement& b) {
  return add(a, scale(Complex(-1.0), b));
}

CrossedElement scale(Complex s, const CrossedElement& a) {
  CrossedElement r(a.context());
  if (s == Complex(0.0)) return r;
  for (const auto& [g, c] : a.terms()) r.set_term(g, coeff_scale(s, c));
  r.note_pruning_error(std::abs(s) * a.pruning_error());
  return r;
}

CrossedElement convolve(const CrossedElement& a, const CrossedElement& b,
                        const PruneOptions& prune, std::size_t term_budget) {
  require_same_context(a, b);
  const auto& ctx = *a.context();
  bool trivial = ctx.action->is_trivial();
  CrossedElement r(a.context());
  for (const auto& [h, ca] : a.terms()) {
    for (const auto& [k, cb] : b.terms()) {
      Elem g = ctx.group->mul(h, k);
      Coeff moved = trivial ? cb : ctx.action->apply(h, cb);
      r.add_term(g, ctx.algebra->mul(ca, moved));
      if (r.support_size() > term_budget)
        fail(ErrorKind::support_budget,
             "convolve: support exceeded budget " + std::to_string(term_budget));
    }
  }
  double dropped = 0.0;
  if (prune.enabled && prune.threshold > 0.0) {
    std::vector<Elem> victims;
    for (const auto& [g, c] : r.terms())
      if (ctx.algebra->norm0(c) <= prune.threshold) victims.push_back(g);
    for (const Elem& g : victims) {
      dropped += ctx.algebra->norm0(r.at(g));
      r.set_term(g, ctx.algebra->zero());
    }
  }
  if (a.pruning_error() > 0.0 || b.pruning_error() > 0.0) {
    // First-order propagation: ||a'b' - ab|| <= e_a (||b'|| + e_b) + ||a'|| e_b.
    double na = weighted_norm(a, 0, 0), nb = weighted_norm(b, 0, 0);
    dropped += a.pruning_error() * (nb + b.pruning_error()) + na * b.pruning_error();
  }
  r.note_pruning_error(dropped);
  return r;
}

CrossedElement involution(const CrossedElement& a) {
  const auto& ctx = *a.context();
  CrossedElement r(a.context());
  for (const auto& [h, c] : a.terms()) {
    Elem g = ctx.group->inverse(h);
    Coeff starred = ctx.algebra->star(c);
    r.set_term(g, ctx.action->is_trivial() ? starred : ctx.action->apply(g, starred));
  }
  r.note_pruning_error(a.pruning_error());
  return r;
}

double weighted_norm(const CrossedElement& a, int d, std::size_t m) {
  if (d < 0) fail(ErrorKind::domain, "weighted_norm: negative weight exponent");
  const auto& ctx = *a.context();
  double total = 0.0;
  for (const auto& [g, c] : a.terms()) {
    double w = d == 0 ? 1.0 : std::pow(1.0 + static_cast<double>(ctx.gauge->raw(g)), d);
    total += w * ctx.algebra->seminorm(m, c);
  }
  return total;
}

double crossed_seminorm(const CrossedElement& a, std::size_t m) {
  return weighted_norm(a, static_cast<int>(m), m);
}

CrossedElement gauge_multiplier(const CrossedElement& a, int k) {
  if (k < 0) fail(ErrorKind::domain, "gauge_multiplier: negative exponent");
  const auto& ctx = *a.context();
  CrossedElement r(a.context());
  for (const auto& [g, c] : a.terms()) {
    double t = std::pow(static_cast<double>(ctx.gauge->raw(g)), k);
    if (k == 0) t = 1.0;
    r.set_term(g, coeff_scale(Complex(t), c));
  }
  if (k > 0 && a.pruning_error() > 0.0)
    fail(ErrorKind::domain, "gauge_multiplier: pruned input has unbounded weighted error");
  r.note_pruning_error(a.pruning_error());
  return r;
}

CrossedElement power(const CrossedElement& a, std::uint32_t n, const PruneOptions& prune,
                     std::size_t term_budget) {
  if (n == 0) fail(ErrorKind::domain, "power: exponent must be >= 1");
  CrossedElement acc = a;
  bool acc_set = false;
  CrossedElement sq = a;
  std::uint32_t rest = n;
  while (true) {
    if (rest & 1u) {
      acc = acc_set ? convolve(acc, sq, prune, term_budget) : sq;
      acc_set = true;
    }
    rest >>= 1u;
    if (rest == 0) break;
    sq = convolve(sq, sq, prune, term_budget);
  }
  return acc;
}

ExpReport exponential(const CrossedElement& a, double tol, std::size_t max_terms) {
  const auto& ctx = *a.context();
  double x = weighted_norm(a, 0, 0);
  CrossedElement sum = delta(a.context(), ctx.group->identity(), ctx.algebra->one());
  CrossedElement term = sum;
  const double ex = std::exp(x);
  double tb = 1.0;  // x^k / k!
  std::size_t k = 0;
  double bound = ex * x;  // remainder after k terms <= x^(k+1)/(k+1)! * e^x
  while (bound >= tol) {
    ++k;
    if (k > max_terms)
      fail(ErrorKind::convergence, "exponential: tail bound not met within max_terms");
    term = convolve(term, a);
    term = scale(Complex(1.0 / static_cast<double>(k)), term);
    sum = add(sum, term);
    tb = tb * x / static_cast<double>(k);
    bound = tb * x / static_cast<double>(k + 1) * ex;
  }
  return {std::move(sum), k + 1, bound};
}

UnitizedElement unitize(const CrossedElement& a, Complex lambda) { return {a, lambda}; }

UnitizedElement u_mul(const UnitizedElement& a, const UnitizedElement& b) {
  CrossedElement prod = convolve(a.part, b.part);
  prod = add(prod, scale(a.lambda, b.part));
  prod = add(prod, scale(b.lambda, a.part));
  return {std::move(prod), a.lambda * b.lambda};
}

double unitized_seminorm(const UnitizedElement& a, std::size_t m) {
  double base = crossed_seminorm(a.part, m);
  return m == 0 ? base + std::abs(a.lambda) : base;
}

std::optional<IntegerElement> try_exact(const CrossedElement& a, int max_denom_bits) {
  const auto& ctx = *a.context();
  if (ctx.algebra->descriptor().kind != "scalar" || !ctx.action->is_trivial()) return std::nullopt;
  for (int k = 0; k <= max_denom_bits; ++k) {
    bool ok = true;
    IntegerElement out{a.context(), {}, std::ldexp(1.0, -k)};
    for (const auto& [g, c] : a.terms()) {
      Complex v = c[0];
      if (v.imag() != 0.0) return std::nullopt;
      double scaled = std::ldexp(v.real(), k);
      if (scaled != std::round(scaled) || std::abs(scaled) >= std::ldexp(1.0, 62)) {
        ok = false;
        break;
      }
      out.terms[g] = static_cast<Int128>(scaled);
    }
    if (ok) return out;
  }
  return std::nullopt;
}

CrossedElement from_exact(const IntegerElement& a) {
  CrossedElement r(a.ctx);
  for (const auto& [g, c] : a.terms)
    r.set_term(g, Coeff{Complex(a.scale * static_cast<double>(c))});
  return r;
}

IntegerElement int_convolve(const IntegerElement& a, const IntegerElement& b,
                            std::size_t term_budget) {
  if (a.ctx != b.ctx) fail(ErrorKind::domain, "integer elements from different contexts");
  const Int128 limit = static_cast<Int128>(1) << 100;
  IntegerElement r{a.ctx, {}, a.scale * b.scale};
  for (const auto& [h, ca] : a.terms)
    for (const auto& [k, cb] : b.terms) {
      Elem g = a.ctx->group->mul(h, k);
      Int128& slot = r.terms[g];
      slot += ca * cb;
      if (int128_abs(slot) > limit)
        fail(ErrorKind::support_budget, "int_convolve: coefficient overflow guard");
      if (r.terms.size() > term_budget)
        fail(ErrorKind::support_budget,
             "int_convolve: support exceeded budget " + std::to_string(term_budget));
    }
  for (auto it = r.terms.begin(); it != r.terms.end();)
    it = it->second == 0 ? r.terms.erase(it) : std::next(it);
  return r;
}

double int_weighted_norm(const IntegerElement& a, int d) {
  if (d < 0) fail(ErrorKind::domain, "int_weighted_norm: negative weight exponent");
  Int128 total = 0;
  for (const auto& [g, c] : a.terms) {
    Int128 w = 1;
    Int128 base = 1 + static_cast<Int128>(a.ctx->gauge->raw(g));
    for (int i = 0; i < d; ++i) w *= base;
    total += w * int128_abs(c);
  }
  return std::abs(a.scale) * static_cast<double>(total);
}

}  // namespace specinv
