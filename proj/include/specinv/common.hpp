#pragma once

#include <complex>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace specinv {

using Complex = std::complex<double>;
using Int128 = __int128;

/// Error category, mapped to CLI exit codes and matched by tests.
enum class ErrorKind {
  config,
  domain,
  gauge_overflow,
  support_budget,
  convergence,
  io,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  [[nodiscard]] ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

/// x^(1/n); exact for x an exact power of two with integer log2(x)/n.
inline double nth_root(double x, int n) {
  if (x < 0.0 || n <= 0) fail(ErrorKind::domain, "nth_root: need x >= 0, n > 0");
  if (x == 0.0) return 0.0;
  return std::exp2(std::log2(x) / n);
}

inline double to_double(Int128 v) { return static_cast<double>(v); }

inline Int128 int128_abs(Int128 v) { return v < 0 ? -v : v; }

inline std::string int128_to_string(Int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
  std::string digits;
  while (u > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Relative slack for comparisons between float evaluations of exact identities.
inline constexpr double kRelSlack = 1e-9;

inline bool leq_with_slack(double lhs, double rhs, double rel = kRelSlack) {
  return lhs <= rhs + rel * std::max(std::abs(lhs), std::abs(rhs));
}

inline double rel_err(double got, double want) {
  double scale = std::max({std::abs(got), std::abs(want), 1e-300});
  return std::abs(got - want) / scale;
}

}  // namespace specinv
