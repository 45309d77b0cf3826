#pragma once

#include <map>
#include <utility>

#include "specinv/coeff.hpp"
#include "specinv/crossed.hpp"

namespace specinv {

/// Rapidly decreasing matrices over Z x Z with entries in a coefficient
/// algebra, multiplied like matrices: (phi psi)(r,t) = sum_s phi(r,s) psi(s,t).
/// Seminorm q weights entry (r,s) by (1+|r|+|s|)^q and takes the entry
/// seminorm at the same index q.
class SkElement {
public:
  using Key = std::pair<std::int64_t, std::int64_t>;

  explicit SkElement(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}

  [[nodiscard]] const AlgebraPtr& algebra() const { return algebra_; }
  [[nodiscard]] const std::map<Key, Coeff>& terms() const { return terms_; }
  void set_term(std::int64_t r, std::int64_t s, Coeff c);
  void add_term(std::int64_t r, std::int64_t s, const Coeff& c);
  [[nodiscard]] Coeff at(std::int64_t r, std::int64_t s) const;

private:
  AlgebraPtr algebra_;
  std::map<Key, Coeff> terms_;
};

SkElement sk_unit(const AlgebraPtr& algebra, std::int64_t r, std::int64_t s, const Coeff& c);
SkElement sk_add(const SkElement& a, const SkElement& b);
SkElement sk_sub(const SkElement& a, const SkElement& b);
SkElement sk_scale(Complex s, const SkElement& a);

double sk_seminorm(const SkElement& a, std::size_t q);

SkElement sk_multiply(const SkElement& a, const SkElement& b);

/// Matrix action on a window vector: out(r) = sum_t a(r,t) xi(t). The vector
/// holds one hilbert_dim block per window index; support outside the window
/// is a domain error.
std::vector<Complex> sk_apply(const SkElement& a, std::int64_t lo, std::int64_t hi,
                              const std::vector<Complex>& xi);

struct SkNormEstimate {
  double value = 0.0;     // top singular value on the covering window
  double residual = 0.0;  // last Rayleigh-quotient relative change
  std::size_t iterations = 0;
};

/// Power iteration on a* a over the covering window of a's support.
SkNormEstimate sk_operator_norm(const SkElement& a, double tol = 1e-10,
                                std::size_t max_iter = 100000);

struct IdealBoundReport {
  double lhs = 0.0;  // ||psi1 a psi2||_0
  double rhs = 0.0;  // c ||psi1||_0 ||psi2||_0 with c the certified norm bound
  double c = 0.0;
  bool verdict = false;
};

IdealBoundReport sk_ideal_bound(const SkElement& psi1, const SkElement& a, const SkElement& psi2);

/// Kernel of the regular representation of a Z-translation crossed product
/// on schwartz coefficients: K(r,s) = phi_{r-s}(r), a scalar matrix.
/// Multiplication intertwines: to_kernel(phi psi) = to_kernel(phi) to_kernel(psi).
SkElement to_kernel(const CrossedElement& phi);

}  // namespace specinv
