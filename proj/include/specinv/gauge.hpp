#pragma once

#include <optional>
#include <unordered_map>

#include "specinv/group.hpp"
#include "specinv/rng.hpp"

namespace specinv {

struct BfsCaps {
  std::uint32_t radius_cap = 256;
  std::size_t element_budget = 4'000'000;
};

/// Word gauge tau(g) = min word length over a symmetric generating set,
/// computed by layered breadth-first search and memoized. With the
/// normalized flag set, value() returns 1 + tau, which is submultiplicative
/// as well as subadditive. Instances are not synchronized; populate from a
/// single thread or pre-expand before sharing.
class Gauge {
public:
  static Gauge word_gauge(GroupPtr group, bool normalized = false, BfsCaps caps = {});
  static Gauge word_gauge(GroupPtr group, std::vector<Elem> generating_set,
                          bool normalized = false, BfsCaps caps = {});
  /// tau identically zero; the degenerate gauge of a bounded scale.
  static Gauge zero_gauge(GroupPtr group);

  /// Word length; expands the search as needed, throws on cap overflow.
  std::int64_t raw(const Elem& g);
  /// raw() + 1 when normalized, raw() otherwise.
  std::int64_t value(const Elem& g) { return raw(g) + (normalized_ ? 1 : 0); }

  [[nodiscard]] bool normalized() const { return normalized_; }
  [[nodiscard]] const GroupPtr& group() const { return group_; }
  [[nodiscard]] const std::vector<Elem>& generating_set() const { return gens_; }

  /// Expands to the requested radius or until a cap bites; returns the
  /// radius actually reached.
  std::uint32_t try_expand_to(std::uint32_t radius);
  /// Elements at distance exactly r; expand first.
  [[nodiscard]] const std::vector<Elem>& sphere(std::uint32_t r) const;
  /// Elements at distance <= r, in breadth-first order.
  std::vector<Elem> ball(std::uint32_t r);
  [[nodiscard]] std::uint32_t expanded_radius() const {
    return static_cast<std::uint32_t>(spheres_.size()) - 1;
  }
  [[nodiscard]] bool exhausted() const { return exhausted_; }

private:
  Gauge(GroupPtr group, std::vector<Elem> gens, bool normalized, BfsCaps caps, bool zero);

  GroupPtr group_;
  std::vector<Elem> gens_;
  bool normalized_ = false;
  BfsCaps caps_;
  bool zero_ = false;
  bool exhausted_ = false;  // frontier emptied: the generated subgroup is finite
  std::unordered_map<Elem, std::int64_t, ElemHash> length_;
  std::vector<std::vector<Elem>> spheres_;
};

struct GrowthReport {
  std::vector<std::int64_t> sizes;  // |B_0| .. |B_n|
  std::string classification;       // polynomial | exponential | inconclusive
  double degree = 0.0;              // log-log slope over the fit window
  double rate = 0.0;                // geometric growth factor when exponential
  std::uint32_t window_lo = 0;
  std::uint32_t window_hi = 0;
  bool truncated = false;           // enumeration stopped by the element budget
};

/// Ball sizes up to n_max with a growth classification fitted on the upper
/// half window, where boundary effects are smallest.
GrowthReport ball_sizes(Gauge& gauge, std::uint32_t n_max);

struct DominationReport {
  bool dominated = false;
  int degree = 0;        // gamma <= constant * (1 + sigma)^degree on the sample
  double constant = 0.0;
  Elem witness;          // worst-ratio element when not dominated
  double worst_ratio = 0.0;
};

/// Searches the smallest integer degree d <= d_cap whose rounded-up constant
/// stays within c_cap, over the given sample.
DominationReport gauge_dominates(Gauge& gamma, Gauge& sigma, const std::vector<Elem>& sample,
                                 int d_cap = 8, double c_cap = 16.0);
/// Same, sampling the radius-ball of gamma.
DominationReport gauge_dominates(Gauge& gamma, Gauge& sigma, std::uint32_t radius,
                                 int d_cap = 8, double c_cap = 16.0);

struct GaugeAxiomReport {
  std::size_t pairs = 0;
  bool identity_ok = false;
  bool symmetric = false;
  bool subadditive = false;
  double max_defect = 0.0;  // max of tau(gh) - tau(g) - tau(h) over the sample
  Elem witness_g;           // pair attaining the defect
  Elem witness_h;
  bool pass = false;
};

/// Samples pairs from the radius ball and checks tau(e) = 0, invariance
/// under inversion, and subadditivity on products.
GaugeAxiomReport check_gauge_axioms(Gauge& gauge, std::uint32_t radius, std::size_t pairs,
                                    Rng& rng);

}  // namespace specinv
