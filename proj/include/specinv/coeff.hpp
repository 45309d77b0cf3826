#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "specinv/common.hpp"
#include "specinv/rng.hpp"

namespace specinv {

/// Coefficient value, flat complex storage; the owning algebra fixes the
/// layout (scalar: 1 slot, function on M: |M| slots, l x l matrix: l^2
/// blocks of the base layout, row major).
using Coeff = std::vector<Complex>;

enum class RandomStyle { gaussian, heavy_tail };

struct AlgebraDescriptor {
  std::string kind;                      // scalar | schwartz | scale-schwartz | matrix
  int truncation = 64;                   // schwartz: universe is [-truncation, truncation]
  std::vector<double> scale;             // scale-schwartz: sigma per index
  int size = 2;                          // matrix: l
  std::vector<AlgebraDescriptor> base;   // matrix: entry algebra (one element; empty = scalar)
  std::size_t tower = 8;                 // largest seminorm index M_max
};

/// A *-algebra with an increasing tower of seminorms ||.||_0 <= ... <= ||.||_M
/// and a faithful Hilbert-space representation used by compressions.
class CoefficientAlgebra {
public:
  virtual ~CoefficientAlgebra() = default;

  [[nodiscard]] virtual std::size_t value_size() const = 0;
  /// Largest valid seminorm index.
  [[nodiscard]] virtual std::size_t max_index() const = 0;
  [[nodiscard]] Coeff zero() const { return Coeff(value_size(), Complex(0.0)); }
  [[nodiscard]] virtual Coeff one() const = 0;
  [[nodiscard]] virtual Coeff mul(const Coeff& a, const Coeff& b) const = 0;
  [[nodiscard]] virtual Coeff star(const Coeff& a) const = 0;
  [[nodiscard]] virtual double seminorm(std::size_t m, const Coeff& a) const = 0;
  [[nodiscard]] double norm0(const Coeff& a) const { return seminorm(0, a); }

  [[nodiscard]] virtual std::size_t hilbert_dim() const = 0;
  /// out += rep(a) * in on the representation space.
  virtual void apply_add(const Coeff& a, const Complex* in, Complex* out) const = 0;

  [[nodiscard]] virtual Coeff random(Rng& rng, RandomStyle style) const = 0;
  [[nodiscard]] virtual std::string describe() const = 0;
  [[nodiscard]] const AlgebraDescriptor& descriptor() const { return desc_; }

  void check_size(const Coeff& a) const {
    if (a.size() != value_size()) fail(ErrorKind::domain, "coefficient: wrong value size");
  }

protected:
  explicit CoefficientAlgebra(AlgebraDescriptor desc) : desc_(std::move(desc)) {}

private:
  AlgebraDescriptor desc_;
};

using AlgebraPtr = std::shared_ptr<const CoefficientAlgebra>;

AlgebraPtr make_algebra(const AlgebraDescriptor& desc);

AlgebraPtr scalar_algebra(std::size_t tower = 8);
/// Rapidly decreasing sequences on [-truncation, truncation] under pointwise
/// product, seminorm m = sup (1+|n|)^m |f(n)|.
AlgebraPtr schwartz_algebra(int truncation, std::size_t tower = 8);
/// Functions on a finite index set with seminorm d = sup (1+sigma)^d |f|.
AlgebraPtr scale_schwartz_algebra(std::vector<double> sigma, std::size_t tower = 8);
/// l x l matrices over a base algebra; seminorm m = max entrywise seminorm m.
AlgebraPtr matrix_lift(AlgebraPtr base, int l);
AlgebraPtr matrix_algebra(int l, std::size_t tower = 8);

/// Helpers for assembling values.
Coeff scalar_value(Complex v);
/// Function-algebra value from sparse index -> value pairs; schwartz indices
/// are signed positions, scale-schwartz indices are 0-based.
Coeff function_value(const CoefficientAlgebra& alg, const std::map<std::int64_t, Complex>& entries);
/// Signed position -> slot for schwartz layout.
std::size_t schwartz_slot(const CoefficientAlgebra& alg, std::int64_t n);
/// Matrix-lift entry access.
Coeff lift_entry(const CoefficientAlgebra& lift, const Coeff& v, int i, int j);
void set_lift_entry(const CoefficientAlgebra& lift, Coeff& v, int i, int j, const Coeff& entry);

/// Same layout and seminorm tower; distinct instances may still be compatible.
inline bool same_algebra(const CoefficientAlgebra& a, const CoefficientAlgebra& b) {
  return &a == &b || a.describe() == b.describe();
}

Coeff coeff_add(const Coeff& a, const Coeff& b);
Coeff coeff_sub(const Coeff& a, const Coeff& b);
Coeff coeff_scale(Complex s, const Coeff& a);
bool coeff_is_zero(const Coeff& a, double tol = 0.0);

}  // namespace specinv
