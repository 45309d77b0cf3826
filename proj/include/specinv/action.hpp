#pragma once

#include "specinv/coeff.hpp"
#include "specinv/gauge.hpp"
#include "specinv/group.hpp"

namespace specinv {

/// Group action by *-automorphisms on a coefficient algebra.
class GroupAction {
public:
  virtual ~GroupAction() = default;

  [[nodiscard]] virtual Coeff apply(const Elem& g, const Coeff& v) const = 0;
  [[nodiscard]] virtual bool is_trivial() const { return false; }
  [[nodiscard]] virtual std::string rule() const = 0;
  [[nodiscard]] const GroupPtr& group() const { return group_; }
  [[nodiscard]] const AlgebraPtr& algebra() const { return algebra_; }

protected:
  GroupAction(GroupPtr group, AlgebraPtr algebra)
      : group_(std::move(group)), algebra_(std::move(algebra)) {}

private:
  GroupPtr group_;
  AlgebraPtr algebra_;
};

using ActionPtr = std::shared_ptr<const GroupAction>;

/// rule: "trivial" everywhere; "translation" for Z on schwartz (index shift,
/// domain error when support would leave the truncation window) or cyclic(n)
/// on an n-point scale-schwartz (rotation); "permutation" with an explicit
/// index permutation per group element of a finite group.
ActionPtr make_action(GroupPtr group, AlgebraPtr algebra, const std::string& rule,
                      std::vector<std::vector<std::size_t>> permutation = {});

struct TemperednessLevel {
  std::size_t m = 0;
  bool bounded = false;
  int degree = 0;       // ||alpha_g(a)||_m <= constant * (1+tau(g))^degree * ||a||_k
  std::size_t k = 0;
  double constant = 0.0;
  Elem witness_g;       // worst pair when unbounded at the degree cap
  double worst_ratio = 0.0;
};

struct TemperednessReport {
  bool tempered = false;
  std::vector<TemperednessLevel> levels;
};

struct TemperednessOptions {
  std::size_t m_max = 4;
  int degree_cap = 8;
  double constant_cap = 16.0;
  std::uint32_t far_radius = 32;     // include sparse far elements so low degrees fail honestly
  std::size_t group_samples = 48;
  std::size_t element_samples = 32;
};

/// Fits, per seminorm level, the smallest polynomial degree in 1 + tau(g)
/// bounding the action, with its rounded-up constant and source index k.
TemperednessReport fit_temperedness(const GroupAction& action, Gauge& gauge, Rng& rng,
                                    const TemperednessOptions& opts = {});

/// Single-level scan at a forced degree; exposes the witness when the bound fails.
TemperednessLevel temperedness_at(const GroupAction& action, Gauge& gauge, Rng& rng, std::size_t m,
                                  int degree, const TemperednessOptions& opts = {});

}  // namespace specinv
