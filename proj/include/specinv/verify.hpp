#pragma once

#include <functional>
#include <string>
#include <vector>

#include "specinv/action.hpp"
#include "specinv/crossed.hpp"
#include "specinv/smoothk.hpp"

namespace specinv {

/// One sampled product chain: factor[i][k] is the level-k seminorm of the
/// i-th factor, lhs[m] the level-m seminorm of the full product.
struct ChainSample {
  std::vector<std::vector<double>> factor;
  std::vector<double> lhs;
};

struct FitOptions {
  double d_cap = 1e6;       // largest admissible per-level constant
  std::size_t p_extra = 8;  // budgets searched over [m, m + p_extra]
  double c_cap = 16.0;      // top of the geometric constant grid
  std::size_t c_grid = 33;  // grid points; the first is exactly 1
  double slack = 1e-9;      // relative slack when testing a cover
};

struct FitConstants {
  double c = 1.0;
  std::vector<double> d;       // per level m, clipped below at 1
  std::vector<std::size_t> p;  // per level m
};

struct FitWitness {
  std::size_t sample = 0;
  std::size_t m = 0;
  double lhs = 0.0;
  double rhs = 0.0;  // best bound attempted for this sample and level
};

struct FitReport {
  std::string tag;
  std::string samples_desc;
  std::uint64_t seed = 0;
  std::size_t sample_count = 0;
  std::size_t n_max = 0;
  std::size_t m_max = 0;
  FitConstants constants;
  std::vector<FitWitness> witnesses;  // empty iff the fit covers every sample
  bool pass = false;
};

/// Fits one constant c, a budget p_m in [m, m + p_extra], and a closed-form
/// d_m per level so that every chain satisfies
///   lhs_m <= d_m c^n sum_{k_1+...+k_n <= p_m} prod_i factor[i][k_i].
/// c is the smallest grid value admitting budgets at every level; given c the
/// budgets are the smallest feasible and d_m is the observed worst ratio.
FitReport fit_chain_constants(const std::vector<ChainSample>& chains, std::size_t m_max,
                              const FitOptions& opts, std::string tag);

/// Samples random product chains in the algebra (every fourth with
/// heavy-tailed amplitudes) and fits chain constants for its seminorm tower.
FitReport check_strong_spec_inv(const AlgebraPtr& algebra, std::uint64_t seed,
                                std::size_t samples, std::size_t n_max, std::size_t m_max,
                                const FitOptions& opts = {});

/// Crossed-product variant: factors supported on word balls of radius 3..6
/// with random coefficients; level m uses the decay-m weight on the m-th
/// coefficient seminorm.
FitReport check_strong_spec_inv(const ContextPtr& ctx, std::uint64_t seed, std::size_t samples,
                                std::size_t n_max, std::size_t m_max,
                                const FitOptions& opts = {});

/// Two-level tower on finitely supported sequences over the integers:
/// level 0 is the circle sup norm, level 1 the absolute-sum norm. The fit
/// covers the random samples; see katznelson_refute for why no choice of
/// constants can survive exponentials.
FitReport check_strong_spec_inv_fourier_tower(std::uint64_t seed, std::size_t samples,
                                              std::size_t n_max, const FitOptions& opts = {});

/// Fits the smallest single constant with
///   ||a b||_m <= c sum_{i+j=m} ||a||_i ||b||_j  for all m <= m_max.
FitReport check_bc_condition(const AlgebraPtr& algebra, std::uint64_t seed, std::size_t samples,
                             std::size_t m_max, const FitOptions& opts = {});

/// Verifies the exact-total chain bound implied by the pair condition:
///   ||a_1...a_n||_m <= step^(n-1) sum_{k_1+...+k_n = m} prod_i ||a_i||_{k_i}
/// with step the fitted pair constant, times the matrix size for lifts
/// (each multiplication sums that many entry products per slot).
FitReport check_bc_implies_chain(const AlgebraPtr& algebra, std::uint64_t seed,
                                 std::size_t samples, std::size_t n_max, std::size_t m_max,
                                 const FitOptions& opts = {});

struct SumPowerReport {
  bool pass = false;
  std::size_t checked = 0;
  double worst_ratio = 0.0;      // max of lhs / (2^(rn) sum_i a_i^r)
  std::vector<double> witness;   // tuple attaining the worst ratio
  int witness_r = 0;
};

/// Random nonnegative tuples against (a_1+...+a_n)^r <= 2^(rn) sum_i a_i^r.
SumPowerReport check_sum_power(int r_max, std::size_t n_max, std::size_t samples,
                               std::uint64_t seed);

struct FiniteCrossedReport {
  bool homomorphism = false;     // embedding turns convolution into matrix product
  bool invariant_image = false;  // embedded matrices are fixed by the twist
  bool image_onto = false;       // every twist-fixed matrix embeds back
  bool norms_equivalent = false;
  double lower = 0.0;  // empirical bounds between crossed and matrix norms
  double upper = 0.0;
  std::size_t checked = 0;
  bool pass = false;
};

/// Finite groups only: embeds the crossed product into group-indexed matrices
/// over the coefficient algebra via S(g,h) = alpha_g(F(g^-1 h)) and checks,
/// exhaustively over the group, that the image is exactly the subalgebra fixed
/// by the twist theta_g(S)(k,h) = alpha_g^-1(S(gk, gh)), with equivalent norms.
FiniteCrossedReport check_finite_crossed(const ContextPtr& ctx, std::uint64_t seed,
                                         std::size_t samples, double tol = 1e-10);

struct RestrictionReport {
  FitReport ambient;
  FitReport restricted;
  bool no_worse = false;  // restricted constants bounded by the ambient ones
  bool pass = false;
};

/// Re-runs the chain fit with factors pushed through the projection; a domain
/// error reports the witness if projected products escape the subspace.
RestrictionReport check_restriction(const AlgebraPtr& algebra,
                                    const std::function<Coeff(const Coeff&)>& project,
                                    std::uint64_t seed, std::size_t samples, std::size_t n_max,
                                    std::size_t m_max, const FitOptions& opts = {});

/// Fits, per seminorm level, polynomial control of the action in the gauge.
inline TemperednessReport check_tempered(const GroupAction& action, Gauge& gauge, Rng& rng,
                                         const TemperednessOptions& opts = {}) {
  return fit_temperedness(action, gauge, rng, opts);
}

/// Chains with an adjoined unit: fits plain-chain constants first, then checks
///   lhs'_m <= d_m 2^n max(1,c)^n sum_{k_1+...+k_n <= p_m} prod_i ||u_i||'_{k_i}
/// where level 0 of the primed tower adds the unit's modulus and higher
/// levels ignore it.
FitReport check_unitized_chain(const ContextPtr& ctx, std::uint64_t seed, std::size_t samples,
                               std::size_t n_max, std::size_t m_max,
                               const FitOptions& opts = {});

/// Rapidly decreasing matrices over scalar coefficients: checks
///   ||phi_1 ... phi_n||_q <= 2^q sum_{k_1+...+k_n <= q} prod_i ||phi_i||_{k_i},
/// the chain bound with pair constant 1 and the budget shifted by the
/// corner-weight split.
FitReport check_sk_chain(std::uint64_t seed, std::size_t samples, std::size_t n_max, int q_max,
                         const FitOptions& opts = {});

struct KatznelsonRow {
  double r = 0.0;
  double l1 = 0.0;            // absolute-sum norm of exp(i psi_r)
  double cstar = 0.0;         // circle sup norm, 1 for self-adjoint psi_r
  double series_bound = 0.0;  // e^r, the series bound at absolute-sum radius r
};

struct KatznelsonReport {
  std::vector<KatznelsonRow> rows;
  double max_cstar_dev = 0.0;
  bool bounded_by_series = false;
  bool pass = false;
};

/// Table of exp(i r (delta_1 + delta_-1)/2) norms: the sup norm stays pinned
/// at 1 while the absolute-sum norm grows without bound, the engine behind
/// katznelson_refute. Truncation beyond tol is a convergence error.
KatznelsonReport katznelson_demo(const std::vector<double>& rs, double tol = 1e-12);

struct RefutationReport {
  double c = 1.0;
  double d = 1.0;
  std::size_t p = 0;
  std::size_t n = 0;     // fixed chain length p + 1
  double r = 0.0;        // witness radius
  double lhs_log = 0.0;  // log of sup ||exp(i psi)||_1 over the radius-r ball, = r
  double rhs_log = 0.0;  // log of d c^n sum_{tuples <= p} of factor bounds
  bool violated = false;
};

/// Drives any fitted two-level constants to violation: writing exp(i psi) as
/// the n-th power of exp(i psi / n) with n = p + 1 fixed, the chain bound
/// caps the ball supremum e^r by d c^n (tuple count) e^(rp/n), which loses
/// once r is large. Works in logs; doubles r until the cap fails.
RefutationReport katznelson_refute(const FitReport& fit, double r_cap = 1048576.0);

}  // namespace specinv
