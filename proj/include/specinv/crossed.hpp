#pragma once

#include <map>
#include <optional>

#include "specinv/action.hpp"

namespace specinv {

struct CrossedContext;
using ContextPtr = std::shared_ptr<CrossedContext>;

/// Group, coefficient algebra, action, and the word gauge weighting the
/// norms; every element keeps a pointer to its context.
struct CrossedContext {
  GroupPtr group;
  AlgebraPtr algebra;
  ActionPtr action;
  std::shared_ptr<Gauge> gauge;

  static ContextPtr make(GroupPtr group, AlgebraPtr algebra, ActionPtr action,
                         BfsCaps caps = {});
};

struct PruneOptions {
  bool enabled = false;
  double threshold = 0.0;  // drop terms with ||coeff||_0 <= threshold
};

/// Finitely supported map G -> algebra; convolution twisted by the action.
/// Terms are kept in canonical order so float accumulation is reproducible.
class CrossedElement {
public:
  explicit CrossedElement(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  [[nodiscard]] const ContextPtr& context() const { return ctx_; }
  [[nodiscard]] const std::map<Elem, Coeff>& terms() const { return terms_; }
  [[nodiscard]] std::size_t support_size() const { return terms_.size(); }
  /// Upper bound on the ||.||_{0,0} mass dropped by pruning so far.
  [[nodiscard]] double pruning_error() const { return pruning_error_; }

  void set_term(const Elem& g, Coeff c);
  void add_term(const Elem& g, const Coeff& c);
  [[nodiscard]] Coeff at(const Elem& g) const;

  void note_pruning_error(double e) { pruning_error_ += e; }

private:
  ContextPtr ctx_;
  std::map<Elem, Coeff> terms_;
  double pruning_error_ = 0.0;
};

CrossedElement delta(const ContextPtr& ctx, const Elem& g, const Coeff& c);
CrossedElement delta(const ContextPtr& ctx, const Elem& g, Complex scalar);

CrossedElement add(const CrossedElement& a, const CrossedElement& b);
CrossedElement sub(const CrossedElement& a, const CrossedElement& b);
CrossedElement scale(Complex s, const CrossedElement& a);

/// phi * psi (g) = sum_h phi(h) . alpha_h( psi(h^-1 g) ).
CrossedElement convolve(const CrossedElement& a, const CrossedElement& b,
                        const PruneOptions& prune = {},
                        std::size_t term_budget = 50'000'000);

/// phi^*(g) = alpha_g( phi(g^-1)^* ).
CrossedElement involution(const CrossedElement& a);

/// ||phi||_{d,m} = sum_g (1 + tau(g))^d ||phi(g)||_m.
double weighted_norm(const CrossedElement& a, int d, std::size_t m);
/// Tower used for chain fits: ||phi||'_m = ||phi||_{m,m}.
double crossed_seminorm(const CrossedElement& a, std::size_t m);

/// g -> tau(g)^k phi(g) with the raw, un-normalized word length.
CrossedElement gauge_multiplier(const CrossedElement& a, int k);

/// Repeated squaring; throws on support budget overflow unless partial_ok.
CrossedElement power(const CrossedElement& a, std::uint32_t n, const PruneOptions& prune = {},
                     std::size_t term_budget = 50'000'000);

struct ExpReport {
  CrossedElement value;
  std::size_t terms_used = 0;
  double tail_bound = 0.0;
};

/// exp(phi) truncated once x^(K+1) e^x / (K+1)! < tol for x = ||phi||_{0,0}.
ExpReport exponential(const CrossedElement& a, double tol = 1e-12, std::size_t max_terms = 400);

/// phi + lambda * formal unit, multiplying as (a + lambda)(b + mu).
struct UnitizedElement {
  CrossedElement part;
  Complex lambda{0.0};
};

UnitizedElement unitize(const CrossedElement& a, Complex lambda);
UnitizedElement u_mul(const UnitizedElement& a, const UnitizedElement& b);
/// Level 0 adds |lambda| to ||a||_{0,0}; levels m > 0 ignore the unit.
double unitized_seminorm(const UnitizedElement& a, std::size_t m);

/// Exact-integer lane: scalar coefficients n * 2^-k held as 128-bit
/// integers with a power-of-two scale, so norms of binomial-type powers
/// convert to double without rounding.
struct IntegerElement {
  ContextPtr ctx;
  std::map<Elem, Int128> terms;
  double scale = 1.0;
};

/// Requires scalar coefficients, trivial action, and dyadic real values.
std::optional<IntegerElement> try_exact(const CrossedElement& a, int max_denom_bits = 40);
CrossedElement from_exact(const IntegerElement& a);
IntegerElement int_convolve(const IntegerElement& a, const IntegerElement& b,
                            std::size_t term_budget = 50'000'000);
double int_weighted_norm(const IntegerElement& a, int d);

}  // namespace specinv
