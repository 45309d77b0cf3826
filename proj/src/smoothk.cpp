#include "specinv/smoothk.hpp"

#include <algorithm>
#include <cmath>

namespace specinv {

void SkElement::set_term(std::int64_t r, std::int64_t s, Coeff c) {
  algebra_->check_size(c);
  if (coeff_is_zero(c))
    terms_.erase(Key{r, s});
  else
    terms_[Key{r, s}] = std::move(c);
}

void SkElement::add_term(std::int64_t r, std::int64_t s, const Coeff& c) {
  algebra_->check_size(c);
  auto it = terms_.find(Key{r, s});
  if (it == terms_.end()) {
    if (!coeff_is_zero(c)) terms_[Key{r, s}] = c;
    return;
  }
  Coeff sum = coeff_add(it->second, c);
  if (coeff_is_zero(sum))
    terms_.erase(it);
  else
    it->second = std::move(sum);
}

Coeff SkElement::at(std::int64_t r, std::int64_t s) const {
  auto it = terms_.find(Key{r, s});
  return it == terms_.end() ? algebra_->zero() : it->second;
}

SkElement sk_unit(const AlgebraPtr& algebra, std::int64_t r, std::int64_t s, const Coeff& c) {
  SkElement e(algebra);
  e.set_term(r, s, c);
  return e;
}

SkElement sk_add(const SkElement& a, const SkElement& b) {
  SkElement r = a;
  for (const auto& [k, c] : b.terms()) r.add_term(k.first, k.second, c);
  return r;
}

SkElement sk_sub(const SkElement& a, const SkElement& b) {
  SkElement r = a;
  for (const auto& [k, c] : b.terms()) r.add_term(k.first, k.second, coeff_scale(Complex(-1.0), c));
  return r;
}

SkElement sk_scale(Complex s, const SkElement& a) {
  SkElement r(a.algebra());
  for (const auto& [k, c] : a.terms()) r.set_term(k.first, k.second, coeff_scale(s, c));
  return r;
}

double sk_seminorm(const SkElement& a, std::size_t q) {
  double total = 0.0;
  for (const auto& [k, c] : a.terms()) {
    double w = std::pow(1.0 + std::abs(static_cast<double>(k.first)) +
                            std::abs(static_cast<double>(k.second)),
                        static_cast<double>(q));
    total += w * a.algebra()->seminorm(q, c);
  }
  return total;
}

SkElement sk_multiply(const SkElement& a, const SkElement& b) {
  if (!same_algebra(*a.algebra(), *b.algebra()))
    fail(ErrorKind::domain, "sk_multiply: different coefficient algebras");
  // index b by row for the inner sum
  std::map<std::int64_t, std::vector<std::pair<std::int64_t, const Coeff*>>> rows;
  for (const auto& [k, c] : b.terms()) rows[k.first].emplace_back(k.second, &c);
  SkElement r(a.algebra());
  const auto& alg = *a.algebra();
  for (const auto& [k, c] : a.terms()) {
    auto it = rows.find(k.second);
    if (it == rows.end()) continue;
    for (const auto& [t, cb] : it->second) r.add_term(k.first, t, alg.mul(c, *cb));
  }
  return r;
}

namespace {

struct Window {
  std::int64_t lo = 0, hi = -1;  // empty when hi < lo
  [[nodiscard]] std::size_t size() const {
    return hi < lo ? 0 : static_cast<std::size_t>(hi - lo + 1);
  }
};

Window covering_window(const SkElement& a) {
  Window w;
  bool first = true;
  for (const auto& [k, c] : a.terms()) {
    std::int64_t lo = std::min(k.first, k.second), hi = std::max(k.first, k.second);
    if (first) {
      w.lo = lo;
      w.hi = hi;
      first = false;
    } else {
      w.lo = std::min(w.lo, lo);
      w.hi = std::max(w.hi, hi);
    }
  }
  if (first) {
    w.lo = 0;
    w.hi = 0;
  }
  return w;
}

}  // namespace

std::vector<Complex> sk_apply(const SkElement& a, std::int64_t lo, std::int64_t hi,
                              const std::vector<Complex>& xi) {
  if (hi < lo) fail(ErrorKind::domain, "sk_apply: empty window");
  const auto& alg = *a.algebra();
  std::size_t dim = alg.hilbert_dim();
  std::size_t n = static_cast<std::size_t>(hi - lo + 1);
  if (xi.size() != n * dim) fail(ErrorKind::domain, "sk_apply: vector does not match window");
  std::vector<Complex> out(n * dim, Complex(0.0));
  for (const auto& [k, c] : a.terms()) {
    if (k.first < lo || k.first > hi || k.second < lo || k.second > hi)
      fail(ErrorKind::domain, "sk_apply: support outside window");
    std::size_t row = static_cast<std::size_t>(k.first - lo);
    std::size_t col = static_cast<std::size_t>(k.second - lo);
    alg.apply_add(c, xi.data() + col * dim, out.data() + row * dim);
  }
  return out;
}

SkNormEstimate sk_operator_norm(const SkElement& a, double tol, std::size_t max_iter) {
  SkNormEstimate est;
  if (a.terms().empty()) return est;
  Window w = covering_window(a);
  const auto& alg = *a.algebra();
  std::size_t dim = alg.hilbert_dim();
  std::size_t n = w.size() * dim;
  // conjugate-transpose kernel
  SkElement astar(a.algebra());
  for (const auto& [k, c] : a.terms()) astar.add_term(k.second, k.first, alg.star(c));
  std::vector<Complex> v(n, Complex(0.0));
  for (std::size_t i = 0; i < n; ++i)
    v[i] = Complex(1.0 + 1e-3 * static_cast<double>(i % 7), 1e-4 * static_cast<double>(i % 5));
  double lam = 0.0;
  for (std::size_t it = 0; it < max_iter; ++it) {
    std::vector<Complex> u = sk_apply(astar, w.lo, w.hi, sk_apply(a, w.lo, w.hi, v));
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num += (std::conj(v[i]) * u[i]).real();
      den += std::norm(v[i]);
    }
    double r = num / den;
    double nu = 0.0;
    for (const Complex& x : u) nu += std::norm(x);
    nu = std::sqrt(nu);
    est.iterations = it + 1;
    if (nu == 0.0) {
      est.value = 0.0;
      est.residual = 0.0;
      return est;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = u[i] / nu;
    double rel = std::abs(r - lam) / std::max(1e-300, std::abs(r));
    lam = r;
    if (it > 3 && rel < tol) {
      est.residual = rel;
      break;
    }
    est.residual = rel;
  }
  est.value = std::sqrt(std::max(0.0, lam));
  return est;
}

IdealBoundReport sk_ideal_bound(const SkElement& psi1, const SkElement& a, const SkElement& psi2) {
  IdealBoundReport rep;
  SkNormEstimate c = sk_operator_norm(a);
  rep.c = c.value + c.residual;
  rep.lhs = sk_seminorm(sk_multiply(sk_multiply(psi1, a), psi2), 0);
  rep.rhs = rep.c * sk_seminorm(psi1, 0) * sk_seminorm(psi2, 0);
  rep.verdict = rep.lhs <= rep.rhs * (1.0 + 1e-9) + 1e-300;
  return rep;
}

SkElement to_kernel(const CrossedElement& phi) {
  const auto& ctx = *phi.context();
  if (ctx.algebra->descriptor().kind != "schwartz" || ctx.action->rule() != "translation" ||
      ctx.group->descriptor().kind != "free-abelian" || ctx.group->descriptor().rank != 1)
    fail(ErrorKind::domain, "to_kernel: needs the Z translation crossed product on schwartz");
  AlgebraPtr scalar = scalar_algebra(ctx.algebra->max_index());
  SkElement k(scalar);
  int trunc = ctx.algebra->descriptor().truncation;
  for (const auto& [g, c] : phi.terms()) {
    std::int64_t j = g[0];
    for (std::int64_t r = -trunc; r <= trunc; ++r) {
      Complex v = c[schwartz_slot(*ctx.algebra, r)];
      if (v != Complex(0.0)) k.add_term(r, r - j, scalar_value(v));
    }
  }
  return k;
}

}  // namespace specinv
