#pragma once

// Independent reference computations used as test oracles. Everything here is
// computed by elementary means (recurrences, dense linear algebra, brute-force
// enumeration) with no dependency on the library internals under test.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "specinv/group.hpp"

namespace oracle {

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
  row[0] = 1.0;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j >= 1; --j) row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j) - 1];
  return row[static_cast<std::size_t>(k)];
}

// Bessel J_0..J_nmax by Miller's downward recurrence, normalized via
// J_0 + 2 sum J_{2k} = 1.
inline std::vector<double> bessel_j(int nmax, double x) {
  if (x == 0.0) {
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  int start = nmax + 16 + static_cast<int>(2.0 * std::sqrt(std::abs(x) * (nmax + 16.0)));
  std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
  j[static_cast<std::size_t>(start) + 1] = 0.0;
  j[static_cast<std::size_t>(start)] = 1e-30;
  for (int n = start; n >= 1; --n)
    j[static_cast<std::size_t>(n) - 1] =
        (2.0 * n / x) * j[static_cast<std::size_t>(n)] - j[static_cast<std::size_t>(n) + 1];
  double norm = j[0];
  for (int n = 2; n <= start; n += 2) norm += 2.0 * j[static_cast<std::size_t>(n)];
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
  for (int n = 0; n <= nmax; ++n) out[static_cast<std::size_t>(n)] = j[static_cast<std::size_t>(n)] / norm;
  return out;
}

// sum over all integers n of |J_n(x)|.
inline double bessel_abs_sum(double x) {
  int nmax = 40 + static_cast<int>(2.0 * std::abs(x));
  std::vector<double> j = bessel_j(nmax, x);
  double s = std::abs(j[0]);
  for (int n = 1; n <= nmax; ++n) s += 2.0 * std::abs(j[static_cast<std::size_t>(n)]);
  return s;
}

using ZSeq = std::map<std::int64_t, std::complex<double>>;

inline ZSeq dense_conv(const ZSeq& a, const ZSeq& b) {
  ZSeq r;
  for (const auto& [n, x] : a)
    for (const auto& [m, y] : b) r[n + m] += x * y;
  return r;
}

inline double l1(const ZSeq& a) {
  double s = 0.0;
  for (const auto& [n, x] : a) s += std::abs(x);
  return s;
}

// Top eigenvalue of a small dense symmetric matrix by cyclic Jacobi sweeps.
// Converges to machine precision regardless of spectral gaps, which matters
// for ball compressions whose top pair is nearly degenerate.
inline double top_eig_sym(std::vector<std::vector<double>> a) {
  std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double offd = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) offd += a[p][q] * a[p][q];
    if (offd < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a[p][q];
        if (std::abs(apq) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
        double t =
            (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  double lam = a[0][0];
  for (std::size_t i = 1; i < n; ++i) lam = std::max(lam, a[i][i]);
  return lam;
}

// sqrt of the top eigenvalue of J^2 + bump * e_last e_last^T where J is the
// symmetric tridiagonal with the given offdiagonal entries and zero diagonal.
inline double tridiag_bump_sigma(const std::vector<double>& off, double bump) {
  std::size_t n = off.size() + 1;
  std::vector<std::vector<double>> jm(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i + 1 < n; ++i) jm[i][i + 1] = jm[i + 1][i] = off[i];
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += jm[i][k] * jm[k][j];
      m[i][j] = s;
    }
  m[n - 1][n - 1] += bump;
  return std::sqrt(top_eig_sym(m));
}

// ||C(d1 + d-1) P|| on l^2 of the integer ball [-R, R]: path adjacency squared
// with unit bumps at both corners from excursions one step outside.
inline double path_escape_sigma(int R) {
  std::size_t n = static_cast<std::size_t>(2 * R + 1);
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i + 1 < n; ++i) a[i][i + 1] = a[i + 1][i] = 1.0;
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += a[i][k] * a[k][j];
      m[i][j] = s;
    }
  m[0][0] += 1.0;
  m[n - 1][n - 1] += 1.0;
  return std::sqrt(top_eig_sym(m));
}

inline std::size_t ball_z(int n) { return static_cast<std::size_t>(2 * n + 1); }

inline std::size_t ball_free2(int n) {
  std::size_t p = 1;
  for (int i = 0; i < n; ++i) p *= 3;
  return 1 + 2 * (p - 1);
}

// Word length by brute-force product enumeration, independent of BFS.
inline int word_length_brute(const specinv::Group& g, const specinv::Elem& target, int max_len) {
  if (target == g.identity()) return 0;
  std::set<specinv::Elem> layer{g.identity()}, seen{g.identity()};
  for (int len = 1; len <= max_len; ++len) {
    std::set<specinv::Elem> next;
    for (const auto& u : layer)
      for (const auto& s : g.generators()) {
        specinv::Elem v = g.mul(u, s);
        if (seen.insert(v).second) next.insert(v);
      }
    if (next.count(target)) return len;
    layer = std::move(next);
  }
  return -1;
}

}  // namespace oracle
