#pragma once

#include <random>
#include <string_view>

#include "specinv/common.hpp"

namespace specinv {

/// All randomness in a run derives from one seed; each module draws from its
/// own named stream so experiments stay reproducible independently of order.
class Rng {
public:
  Rng(std::uint64_t seed, std::string_view stream) : engine_(mix(seed, fnv1a(stream))) {}

  std::mt19937_64& engine() { return engine_; }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }

  double gaussian() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

  Complex complex_gaussian() { return {gaussian(), gaussian()}; }

  /// Heavy-tailed real magnitude; exercises fitters away from the Gaussian bulk.
  double heavy_tail() {
    double u = uniform(1e-4, 1.0);
    return std::pow(u, -1.5);
  }

private:
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  std::mt19937_64 engine_;
};

}  // namespace specinv
