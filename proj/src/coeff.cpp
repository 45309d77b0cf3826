#include "specinv/coeff.hpp"

#include <algorithm>
#include <cmath>

namespace specinv {
namespace {

class ScalarAlgebra final : public CoefficientAlgebra {
public:
  explicit ScalarAlgebra(AlgebraDescriptor desc) : CoefficientAlgebra(std::move(desc)) {}

  [[nodiscard]] std::size_t value_size() const override { return 1; }
  [[nodiscard]] std::size_t max_index() const override { return descriptor().tower; }
  [[nodiscard]] Coeff one() const override { return {Complex(1.0)}; }

  [[nodiscard]] Coeff mul(const Coeff& a, const Coeff& b) const override { return {a[0] * b[0]}; }

  [[nodiscard]] Coeff star(const Coeff& a) const override { return {std::conj(a[0])}; }

  [[nodiscard]] double seminorm(std::size_t, const Coeff& a) const override {
    return std::abs(a[0]);
  }

  [[nodiscard]] std::size_t hilbert_dim() const override { return 1; }

  void apply_add(const Coeff& a, const Complex* in, Complex* out) const override {
    out[0] += a[0] * in[0];
  }

  [[nodiscard]] Coeff random(Rng& rng, RandomStyle style) const override {
    Complex v = rng.complex_gaussian();
    if (style == RandomStyle::heavy_tail) v *= rng.heavy_tail();
    return {v};
  }

  [[nodiscard]] std::string describe() const override { return "scalar"; }
};

/// Shared pointwise-product machinery for the two function algebras; only
/// the weight profile differs.
class FunctionAlgebra : public CoefficientAlgebra {
public:
  FunctionAlgebra(AlgebraDescriptor desc, std::vector<double> weights)
      : CoefficientAlgebra(std::move(desc)), weights_(std::move(weights)) {}

  [[nodiscard]] std::size_t value_size() const override { return weights_.size(); }
  [[nodiscard]] std::size_t max_index() const override { return descriptor().tower; }
  [[nodiscard]] Coeff one() const override { return Coeff(value_size(), Complex(1.0)); }

  [[nodiscard]] Coeff mul(const Coeff& a, const Coeff& b) const override {
    Coeff r(value_size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] * b[i];
    return r;
  }

  [[nodiscard]] Coeff star(const Coeff& a) const override {
    Coeff r(value_size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::conj(a[i]);
    return r;
  }

  [[nodiscard]] double seminorm(std::size_t m, const Coeff& a) const override {
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      best = std::max(best, std::pow(weights_[i], static_cast<double>(m)) * std::abs(a[i]));
    return best;
  }

  [[nodiscard]] std::size_t hilbert_dim() const override { return value_size(); }

  void apply_add(const Coeff& a, const Complex* in, Complex* out) const override {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i] * in[i];
  }

  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }

protected:
  std::vector<double> weights_;  // 1 + sigma per slot
};

class SchwartzAlgebra final : public FunctionAlgebra {
public:
  explicit SchwartzAlgebra(const AlgebraDescriptor& desc)
      : FunctionAlgebra(desc, make_weights(desc.truncation)) {}

  [[nodiscard]] Coeff random(Rng& rng, RandomStyle style) const override {
    int n = desc_n(descriptor());
    auto w = static_cast<std::int64_t>(rng.uniform_int(0, std::min(n, 6)));
    double decay = rng.uniform(0.0, 2.0);
    double boost = style == RandomStyle::heavy_tail ? rng.heavy_tail() : 1.0;
    Coeff r = zero();
    for (std::int64_t k = -w; k <= w; ++k) {
      if (rng.uniform(0.0, 1.0) < 0.35) continue;
      r[static_cast<std::size_t>(k + n)] =
          boost * rng.complex_gaussian() * std::pow(1.0 + std::abs(static_cast<double>(k)), -decay);
    }
    if (coeff_is_zero(r)) r[static_cast<std::size_t>(n)] = boost * rng.complex_gaussian();
    return r;
  }

  [[nodiscard]] std::string describe() const override {
    return "schwartz(" + std::to_string(desc_n(descriptor())) + ")";
  }

private:
  static int desc_n(const AlgebraDescriptor& d) { return d.truncation; }

  static std::vector<double> make_weights(int n) {
    if (n < 1) fail(ErrorKind::config, "schwartz: truncation must be >= 1");
    std::vector<double> w;
    for (int k = -n; k <= n; ++k) w.push_back(1.0 + std::abs(static_cast<double>(k)));
    return w;
  }
};

class ScaleSchwartzAlgebra final : public FunctionAlgebra {
public:
  explicit ScaleSchwartzAlgebra(const AlgebraDescriptor& desc)
      : FunctionAlgebra(desc, make_weights(desc)) {}

  [[nodiscard]] Coeff random(Rng& rng, RandomStyle style) const override {
    double boost = style == RandomStyle::heavy_tail ? rng.heavy_tail() : 1.0;
    Coeff r = zero();
    for (auto& v : r)
      if (rng.uniform(0.0, 1.0) >= 0.3) v = boost * rng.complex_gaussian();
    if (coeff_is_zero(r)) r[0] = boost * rng.complex_gaussian();
    return r;
  }

  [[nodiscard]] std::string describe() const override {
    return "scale-schwartz(" + std::to_string(value_size()) + ")";
  }

private:
  static std::vector<double> make_weights(const AlgebraDescriptor& d) {
    if (d.scale.empty()) fail(ErrorKind::config, "scale-schwartz: empty index set");
    std::vector<double> w;
    for (double s : d.scale) {
      if (s < 0.0) fail(ErrorKind::config, "scale-schwartz: scale values must be >= 0");
      w.push_back(1.0 + s);
    }
    return w;
  }
};

class MatrixLiftAlgebra final : public CoefficientAlgebra {
public:
  MatrixLiftAlgebra(AlgebraDescriptor desc, AlgebraPtr base)
      : CoefficientAlgebra(std::move(desc)), base_(std::move(base)) {
    l_ = static_cast<std::size_t>(descriptor().size);
    if (l_ < 1) fail(ErrorKind::config, "matrix: size must be >= 1");
    bs_ = base_->value_size();
  }

  [[nodiscard]] std::size_t value_size() const override { return l_ * l_ * bs_; }
  [[nodiscard]] std::size_t max_index() const override { return base_->max_index(); }

  [[nodiscard]] Coeff one() const override {
    Coeff r = zero();
    Coeff b1 = base_->one();
    for (std::size_t i = 0; i < l_; ++i) put(r, i, i, b1);
    return r;
  }

  [[nodiscard]] Coeff mul(const Coeff& a, const Coeff& b) const override {
    Coeff r = zero();
    for (std::size_t i = 0; i < l_; ++i)
      for (std::size_t j = 0; j < l_; ++j) {
        Coeff acc = base_->zero();
        for (std::size_t k = 0; k < l_; ++k)
          acc = coeff_add(acc, base_->mul(get(a, i, k), get(b, k, j)));
        put(r, i, j, acc);
      }
    return r;
  }

  [[nodiscard]] Coeff star(const Coeff& a) const override {
    Coeff r = zero();
    for (std::size_t i = 0; i < l_; ++i)
      for (std::size_t j = 0; j < l_; ++j) put(r, i, j, base_->star(get(a, j, i)));
    return r;
  }

  [[nodiscard]] double seminorm(std::size_t m, const Coeff& a) const override {
    double best = 0.0;
    for (std::size_t i = 0; i < l_; ++i)
      for (std::size_t j = 0; j < l_; ++j)
        best = std::max(best, base_->seminorm(m, get(a, i, j)));
    return best;
  }

  [[nodiscard]] std::size_t hilbert_dim() const override { return l_ * base_->hilbert_dim(); }

  void apply_add(const Coeff& a, const Complex* in, Complex* out) const override {
    std::size_t hd = base_->hilbert_dim();
    for (std::size_t i = 0; i < l_; ++i)
      for (std::size_t j = 0; j < l_; ++j)
        base_->apply_add(get(a, i, j), in + j * hd, out + i * hd);
  }

  [[nodiscard]] Coeff random(Rng& rng, RandomStyle style) const override {
    Coeff r = zero();
    for (std::size_t i = 0; i < l_; ++i)
      for (std::size_t j = 0; j < l_; ++j) put(r, i, j, base_->random(rng, style));
    return r;
  }

  [[nodiscard]] std::string describe() const override {
    return "matrix(" + std::to_string(l_) + ", " + base_->describe() + ")";
  }

  [[nodiscard]] const AlgebraPtr& base() const { return base_; }
  [[nodiscard]] std::size_t dim() const { return l_; }

  [[nodiscard]] Coeff get(const Coeff& v, std::size_t i, std::size_t j) const {
    auto begin = v.begin() + static_cast<std::ptrdiff_t>((i * l_ + j) * bs_);
    return Coeff(begin, begin + static_cast<std::ptrdiff_t>(bs_));
  }

  void put(Coeff& v, std::size_t i, std::size_t j, const Coeff& entry) const {
    std::copy(entry.begin(), entry.end(),
              v.begin() + static_cast<std::ptrdiff_t>((i * l_ + j) * bs_));
  }

private:
  AlgebraPtr base_;
  std::size_t l_ = 0;
  std::size_t bs_ = 0;
};

}  // namespace

AlgebraPtr make_algebra(const AlgebraDescriptor& desc) {
  if (desc.kind == "scalar") return std::make_shared<ScalarAlgebra>(desc);
  if (desc.kind == "schwartz") return std::make_shared<SchwartzAlgebra>(desc);
  if (desc.kind == "scale-schwartz") return std::make_shared<ScaleSchwartzAlgebra>(desc);
  if (desc.kind == "matrix") {
    if (desc.base.size() > 1) fail(ErrorKind::config, "matrix: exactly one base algebra");
    AlgebraDescriptor base = desc.base.empty() ? AlgebraDescriptor{.kind = "scalar",
                                                                   .tower = desc.tower}
                                               : desc.base.front();
    return std::make_shared<MatrixLiftAlgebra>(desc, make_algebra(base));
  }
  fail(ErrorKind::config, "unknown algebra kind: " + desc.kind);
}

AlgebraPtr scalar_algebra(std::size_t tower) {
  return make_algebra({.kind = "scalar", .tower = tower});
}

AlgebraPtr schwartz_algebra(int truncation, std::size_t tower) {
  return make_algebra({.kind = "schwartz", .truncation = truncation, .tower = tower});
}

AlgebraPtr scale_schwartz_algebra(std::vector<double> sigma, std::size_t tower) {
  AlgebraDescriptor d{.kind = "scale-schwartz", .tower = tower};
  d.scale = std::move(sigma);
  return make_algebra(d);
}

AlgebraPtr matrix_lift(AlgebraPtr base, int l) {
  AlgebraDescriptor d{.kind = "matrix", .size = l, .tower = base->descriptor().tower};
  d.base = {base->descriptor()};
  return std::make_shared<MatrixLiftAlgebra>(d, std::move(base));
}

AlgebraPtr matrix_algebra(int l, std::size_t tower) {
  return make_algebra({.kind = "matrix", .size = l, .tower = tower});
}

Coeff scalar_value(Complex v) { return {v}; }

Coeff function_value(const CoefficientAlgebra& alg, const std::map<std::int64_t, Complex>& entries) {
  Coeff r = alg.zero();
  const auto& kind = alg.descriptor().kind;
  for (const auto& [idx, v] : entries) {
    std::size_t slot = 0;
    if (kind == "schwartz") {
      slot = schwartz_slot(alg, idx);
    } else if (kind == "scale-schwartz") {
      if (idx < 0 || idx >= static_cast<std::int64_t>(alg.value_size()))
        fail(ErrorKind::domain, "scale-schwartz value: index out of range");
      slot = static_cast<std::size_t>(idx);
    } else {
      fail(ErrorKind::domain, "function_value: not a function algebra");
    }
    r[slot] = v;
  }
  return r;
}

std::size_t schwartz_slot(const CoefficientAlgebra& alg, std::int64_t n) {
  std::int64_t t = alg.descriptor().truncation;
  if (n < -t || n > t)
    fail(ErrorKind::domain,
         "schwartz value: support index " + std::to_string(n) + " outside truncation " +
             std::to_string(t));
  return static_cast<std::size_t>(n + t);
}

Coeff lift_entry(const CoefficientAlgebra& lift, const Coeff& v, int i, int j) {
  const auto* m = dynamic_cast<const MatrixLiftAlgebra*>(&lift);
  if (m == nullptr) fail(ErrorKind::domain, "lift_entry: not a matrix algebra");
  return m->get(v, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
}

void set_lift_entry(const CoefficientAlgebra& lift, Coeff& v, int i, int j, const Coeff& entry) {
  const auto* m = dynamic_cast<const MatrixLiftAlgebra*>(&lift);
  if (m == nullptr) fail(ErrorKind::domain, "set_lift_entry: not a matrix algebra");
  m->put(v, static_cast<std::size_t>(i), static_cast<std::size_t>(j), entry);
}

Coeff coeff_add(const Coeff& a, const Coeff& b) {
  Coeff r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Coeff coeff_sub(const Coeff& a, const Coeff& b) {
  Coeff r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Coeff coeff_scale(Complex s, const Coeff& a) {
  Coeff r = a;
  for (auto& v : r) v *= s;
  return r;
}

bool coeff_is_zero(const Coeff& a, double tol) {
  for (const auto& v : a)
    if (std::abs(v) > tol) return false;
  return true;
}

}  // namespace specinv
