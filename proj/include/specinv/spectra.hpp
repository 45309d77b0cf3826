#pragma once

#include "specinv/crossed.hpp"

namespace specinv {

struct SpectralReport {
  int d = 0;           // weight exponent of the norm used
  std::size_t m = 0;   // coefficient seminorm index
  std::vector<std::pair<std::uint32_t, double>> roots;  // (n, ||phi^n||^{1/n})
  double estimate = 0.0;    // min over roots: certified upper bound
  double last_value = 0.0;  // root at the largest n
  bool monotone = false;    // roots nonincreasing along the sequence
  bool truncated = false;   // stopped early by the support budget
  bool integer_mode = false;
};

struct SpectralOptions {
  std::uint32_t n_max = 32;
  std::size_t term_budget = 50'000'000;
  PruneOptions prune;
};

/// Power roots ||phi^n||_{d,m}^{1/n} for n = 1..n_max, sequential powers.
/// Dyadic scalar elements with trivial action run exactly in integer mode.
SpectralReport spectral_radius(const CrossedElement& phi, int d, std::size_t m,
                               const SpectralOptions& opts = {});

struct CstarEstimate {
  std::string method;        // fourier | compression
  double value = 0.0;
  double error_bound = 0.0;  // fourier: certified grid bound; compression: residual
  bool lower_bound_only = false;
  std::uint32_t radius = 0;  // compression ball radius
  std::size_t iterations = 0;
};

/// Sup of the symbol over a uniform frequency grid, certified by the
/// first-derivative bound (sum tau(g) ||phi(g)||_0) * (2 pi / grid) * rank.
/// Free-abelian groups, trivial action, scalar or matrix coefficients.
CstarEstimate cstar_fourier(const CrossedElement& phi, std::size_t grid = 1 << 16);

struct CompressionOptions {
  double tol = 1e-10;       // Rayleigh-quotient relative change
  std::size_t max_iter = 30000;
  std::uint64_t restart_seed = 2;
};

/// Top singular value of the convolution operator on l^2(B_R) x H, computed
/// by power iteration on the compression of phi* phi. Lower-bound semantics:
/// the value never exceeds the completed norm, and grows with R.
CstarEstimate cstar_compression(const CrossedElement& phi, std::uint32_t radius,
                                const CompressionOptions& opts = {});

struct InversionLevel {
  int d = 0;
  std::size_t m = 0;
  double tail_ratio = 0.0;  // ||a^{n+1}|| / ||a^n|| near the last term
  bool converged = false;
};

struct InversionCertificate {
  std::size_t terms = 0;
  double residual = 0.0;  // ||x * inverse - 1||_0, recomputed after the fact
  std::vector<InversionLevel> levels;
  bool verdict = false;  // residual <= tol and every level converged
};

struct NeumannOptions {
  double tol = 1e-10;
  int d_max = 6;
  std::size_t m_max = 0;
  std::size_t max_terms = 400;
  std::size_t term_budget = 50'000'000;
};

struct NeumannResult {
  UnitizedElement inverse;
  InversionCertificate certificate;
};

/// Inverts x = lambda(1 - a) by partial Neumann sums, stopping when
/// ||a^n||_{0,0} < tol. The certificate carries per-(d,m) tail ratios: the
/// evidence that the inverse stays in the weighted algebra.
NeumannResult neumann_inverse(const UnitizedElement& x, const NeumannOptions& opts = {});

struct PytlikReport {
  std::vector<double> a;  // a_n = ||phi^{n+2}||_1 / ||phi^n||_1, n from 1
  double limsup_estimate = 0.0;  // max over the upper half
  bool integer_mode = false;
};

/// Ratio sequence of a self-adjoint element; approaches the square of the
/// l^1 spectral radius.
PytlikReport pytlik_ratio(const CrossedElement& phi, std::uint32_t n_max,
                          const SpectralOptions& opts = {});

struct SplitReport {
  double lhs = 0.0;  // ||f1* psi f2||_1
  double rhs = 0.0;  // psi_used M m^r + ||psi tau^q||_1 N m^{-q}
  double big_m = 0.0;       // ||f1*||_2 ||f2||_2
  double big_n = 0.0;       // ||f1 tau^q||_1 ||f2 tau^q||_1
  double growth_r = 0.0;    // fitted polynomial growth degree
  double psi_l1 = 0.0;      // upper bound used for ||psi||
  double psi_compression = 0.0;  // informational lower bound
  bool verdict = false;
};

struct SplitOptions {
  std::uint32_t growth_radius = 10;
  std::uint32_t compression_radius = 6;
};

/// Two-regime bound: the operator-norm term wins at small m, the weighted
/// tail term at large m. Scalar coefficients on a polynomial-growth group.
SplitReport pytlik_split_bound(const CrossedElement& psi, const CrossedElement& f1,
                               const CrossedElement& f2, int q, double m,
                               const SplitOptions& opts = {});

struct DerivationReport {
  std::vector<std::pair<Elem, Coeff>> operator_side;    // k-fold commutator column at e
  std::vector<std::pair<Elem, Coeff>> multiplier_side;  // i^k tau^k(g) alpha_{g^-1}(phi(g)) eta
  double max_diff = 0.0;
  bool pass = false;
};

/// Builds the kernel K(g,u) = alpha_{g^-1}(phi(g u^-1)) on B_R, commutes it
/// k times with D = diag(tau) by literal sparse matrix products, applies the
/// result to delta_e x eta, and compares with the gauge-multiplier formula.
DerivationReport derivation_check(const CrossedElement& phi, int k, std::uint32_t radius,
                                  const Coeff& eta, double tol = 1e-12);

}  // namespace specinv
