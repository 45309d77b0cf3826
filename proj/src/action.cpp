#include "specinv/action.hpp"

#include <algorithm>
#include <cmath>

namespace specinv {
namespace {

class TrivialAction final : public GroupAction {
public:
  TrivialAction(GroupPtr g, AlgebraPtr a) : GroupAction(std::move(g), std::move(a)) {}

  [[nodiscard]] Coeff apply(const Elem&, const Coeff& v) const override { return v; }
  [[nodiscard]] bool is_trivial() const override { return true; }
  [[nodiscard]] std::string rule() const override { return "trivial"; }
};

/// Z shifting schwartz indices, alpha_j(f)(n) = f(n - j); shifting nonzero
/// mass past the truncation window is a domain error, so the truncated
/// algebra honestly represents only elements whose orbit stays inside.
class ShiftAction final : public GroupAction {
public:
  ShiftAction(GroupPtr g, AlgebraPtr a) : GroupAction(std::move(g), std::move(a)) {
    t_ = algebra()->descriptor().truncation;
  }

  [[nodiscard]] Coeff apply(const Elem& g, const Coeff& v) const override {
    algebra()->check_size(v);
    std::int64_t j = g[0];
    Coeff out = algebra()->zero();
    for (std::int64_t n = -t_; n <= t_; ++n) {
      Complex val = v[static_cast<std::size_t>(n + t_)];
      if (val == Complex(0.0)) continue;
      std::int64_t shifted = n + j;
      if (shifted < -t_ || shifted > t_)
        fail(ErrorKind::domain, "translation: support shifted outside the truncation window");
      out[static_cast<std::size_t>(shifted + t_)] = val;
    }
    return out;
  }

  [[nodiscard]] std::string rule() const override { return "translation"; }

private:
  std::int64_t t_ = 0;
};

class RotationAction final : public GroupAction {
public:
  RotationAction(GroupPtr g, AlgebraPtr a) : GroupAction(std::move(g), std::move(a)) {
    n_ = static_cast<std::int64_t>(algebra()->value_size());
  }

  [[nodiscard]] Coeff apply(const Elem& g, const Coeff& v) const override {
    algebra()->check_size(v);
    std::int64_t j = g[0] % n_;
    Coeff out(algebra()->value_size());
    for (std::int64_t i = 0; i < n_; ++i)
      out[static_cast<std::size_t>((i + j) % n_)] = v[static_cast<std::size_t>(i)];
    return out;
  }

  [[nodiscard]] std::string rule() const override { return "translation"; }

private:
  std::int64_t n_ = 0;
};

class PermutationAction final : public GroupAction {
public:
  PermutationAction(GroupPtr g, AlgebraPtr a, std::vector<std::vector<std::size_t>> perm)
      : GroupAction(std::move(g), std::move(a)), perm_(std::move(perm)) {
    if (!group()->is_finite()) fail(ErrorKind::config, "permutation: group must be finite");
    auto elems = group()->all_elements();
    std::size_t dim = algebra()->value_size();
    if (perm_.size() != elems.size())
      fail(ErrorKind::config, "permutation: need one permutation per group element");
    for (const auto& row : perm_) {
      if (row.size() != dim) fail(ErrorKind::config, "permutation: wrong index count");
      std::vector<bool> seen(dim, false);
      for (std::size_t i : row) {
        if (i >= dim || seen[i]) fail(ErrorKind::config, "permutation: row is not a bijection");
        seen[i] = true;
      }
    }
    Elem id = group()->identity();
    for (std::size_t i = 0; i < dim; ++i)
      if (perm_[idx(id)][i] != i) fail(ErrorKind::config, "permutation: identity must act as id");
    for (const Elem& x : elems)
      for (const Elem& y : elems) {
        std::size_t xy = idx(group()->mul(x, y));
        for (std::size_t i = 0; i < dim; ++i)
          if (perm_[xy][i] != perm_[idx(x)][perm_[idx(y)][i]])
            fail(ErrorKind::config, "permutation: rows do not form a homomorphism");
      }
  }

  [[nodiscard]] Coeff apply(const Elem& g, const Coeff& v) const override {
    algebra()->check_size(v);
    const auto& p = perm_[idx(g)];
    Coeff out(algebra()->value_size());
    for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = v[i];
    return out;
  }

  [[nodiscard]] std::string rule() const override { return "permutation"; }

private:
  [[nodiscard]] std::size_t idx(const Elem& g) const { return static_cast<std::size_t>(g[0]); }

  std::vector<std::vector<std::size_t>> perm_;
};

}  // namespace

ActionPtr make_action(GroupPtr group, AlgebraPtr algebra, const std::string& rule,
                      std::vector<std::vector<std::size_t>> permutation) {
  if (rule == "trivial") return std::make_shared<TrivialAction>(group, algebra);
  if (rule == "translation") {
    const auto& gk = group->descriptor().kind;
    const auto& ak = algebra->descriptor().kind;
    if (gk == "free-abelian" && group->descriptor().rank == 1 && ak == "schwartz")
      return std::make_shared<ShiftAction>(group, algebra);
    if (gk == "cyclic" && ak == "scale-schwartz" &&
        algebra->value_size() == static_cast<std::size_t>(group->descriptor().modulus))
      return std::make_shared<RotationAction>(group, algebra);
    fail(ErrorKind::config,
         "translation action needs Z on a schwartz algebra or cyclic(n) on an n-point scale");
  }
  if (rule == "permutation")
    return std::make_shared<PermutationAction>(group, algebra, std::move(permutation));
  fail(ErrorKind::config, "unknown action rule: " + rule);
}

namespace {

std::vector<Elem> group_sample(Gauge& gauge, const TemperednessOptions& opts) {
  std::vector<Elem> out = gauge.ball(std::min<std::uint32_t>(2, opts.far_radius));
  for (std::uint32_t r : {4u, 8u, 16u, opts.far_radius}) {
    if (r > opts.far_radius) continue;
    if (gauge.try_expand_to(r) < r) break;
    const auto& sphere = gauge.sphere(r);
    std::size_t take = std::min<std::size_t>(sphere.size(), 8);
    std::size_t stride = std::max<std::size_t>(1, sphere.size() / std::max<std::size_t>(take, 1));
    for (std::size_t i = 0; i < sphere.size() && out.size() < opts.group_samples + 16;
         i += stride)
      out.push_back(sphere[i]);
  }
  return out;
}

}  // namespace

TemperednessLevel temperedness_at(const GroupAction& action, Gauge& gauge, Rng& rng,
                                  std::size_t m, int degree, const TemperednessOptions& opts) {
  TemperednessLevel lv;
  lv.m = m;
  lv.degree = degree;
  const auto& alg = *action.algebra();
  if (action.is_trivial()) {
    lv.bounded = true;
    lv.k = m;
    lv.constant = 1.0;
    return lv;
  }
  std::vector<Elem> gs = group_sample(gauge, opts);
  std::vector<Coeff> as;
  for (std::size_t i = 0; i < opts.element_samples; ++i) as.push_back(alg.random(rng, RandomStyle::gaussian));
  std::size_t best_k = m;
  double best_worst = -1.0;
  Elem best_witness;
  for (std::size_t k = m; k <= alg.max_index(); ++k) {
    double worst = 0.0;
    Elem witness = gauge.group()->identity();
    for (const Elem& g : gs) {
      double w = std::pow(1.0 + static_cast<double>(gauge.raw(g)), degree);
      for (const Coeff& a : as) {
        double den = w * alg.seminorm(k, a);
        if (den == 0.0) continue;
        double moved;
        try {
          moved = alg.seminorm(m, action.apply(g, a));
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::domain) continue;  // orbit left the truncation window
          throw;
        }
        double ratio = moved / den;
        if (ratio > worst) {
          worst = ratio;
          witness = g;
        }
      }
    }
    if (best_worst < 0.0 || worst < best_worst) {
      best_worst = worst;
      best_k = k;
      best_witness = witness;
    }
    if (std::ceil(best_worst) <= opts.constant_cap) break;  // prefer the smallest workable k
  }
  lv.k = best_k;
  lv.worst_ratio = best_worst;
  lv.constant = std::max(1.0, std::ceil(best_worst));
  lv.bounded = lv.constant <= opts.constant_cap;
  if (!lv.bounded) lv.witness_g = best_witness;
  return lv;
}

TemperednessReport fit_temperedness(const GroupAction& action, Gauge& gauge, Rng& rng,
                                    const TemperednessOptions& opts) {
  TemperednessReport rep;
  rep.tempered = true;
  for (std::size_t m = 0; m <= opts.m_max; ++m) {
    TemperednessLevel found;
    bool ok = false;
    for (int d = 0; d <= opts.degree_cap; ++d) {
      found = temperedness_at(action, gauge, rng, m, d, opts);
      if (found.bounded) {
        ok = true;
        break;
      }
    }
    if (!ok) rep.tempered = false;
    rep.levels.push_back(found);
  }
  return rep;
}

}  // namespace specinv
