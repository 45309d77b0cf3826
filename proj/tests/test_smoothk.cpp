#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "specinv/smoothk.hpp"

using namespace specinv;

namespace {

SkElement random_sparse(const AlgebraPtr& alg, Rng& rng, int window, int terms) {
  SkElement e(alg);
  for (int t = 0; t < terms; ++t) {
    std::int64_t r = rng.uniform_int(-window, window);
    std::int64_t s = rng.uniform_int(-window, window);
    e.add_term(r, s, scalar_value(rng.complex_gaussian()));
  }
  return e;
}

// dense product over [-w, w]^2, scalar entries
SkElement dense_product(const SkElement& a, const SkElement& b, int w) {
  int n = 2 * w + 1;
  std::vector<std::vector<Complex>> da(static_cast<std::size_t>(n),
                                       std::vector<Complex>(static_cast<std::size_t>(n))),
      db = da, dp = da;
  for (const auto& [k, c] : a.terms())
    da[static_cast<std::size_t>(k.first + w)][static_cast<std::size_t>(k.second + w)] = c[0];
  for (const auto& [k, c] : b.terms())
    db[static_cast<std::size_t>(k.first + w)][static_cast<std::size_t>(k.second + w)] = c[0];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex s(0.0);
      for (int k = 0; k < n; ++k)
        s += da[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
             db[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      dp[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
    }
  SkElement r(a.algebra());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex v = dp[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (v != Complex(0.0)) r.set_term(i - w, j - w, scalar_value(v));
    }
  return r;
}

}  // namespace

TEST_CASE("seminorm weights entries by (1 + |r| + |s|)^q") {
  AlgebraPtr sc = scalar_algebra();
  SkElement e00 = sk_unit(sc, 0, 0, scalar_value(1.0));
  for (std::size_t q = 0; q <= 6; ++q) CHECK(sk_seminorm(e00, q) == doctest::Approx(1.0));
  SkElement e12 = sk_unit(sc, 1, 2, scalar_value(1.0));
  CHECK(sk_seminorm(e12, 0) == doctest::Approx(1.0));
  CHECK(sk_seminorm(e12, 1) == doctest::Approx(4.0));
  CHECK(sk_seminorm(e12, 2) == doctest::Approx(16.0));
  SkElement origin = sk_unit(sc, 0, 0, scalar_value(Complex(0.0, -2.5)));
  for (std::size_t q = 1; q <= 6; ++q)
    CHECK(sk_seminorm(origin, q) == doctest::Approx(sk_seminorm(origin, 0)));
  // monotone in q
  Rng rng(2, "mono");
  SkElement r = random_sparse(sc, rng, 6, 12);
  for (std::size_t q = 0; q < 6; ++q) CHECK(sk_seminorm(r, q) <= sk_seminorm(r, q + 1) + 1e-12);
}

TEST_CASE("matrix units multiply like matrix units") {
  AlgebraPtr sc = scalar_algebra();
  SkElement ers = sk_unit(sc, 2, 5, scalar_value(1.0));
  SkElement est = sk_unit(sc, 5, -1, scalar_value(1.0));
  SkElement eut = sk_unit(sc, 4, -1, scalar_value(1.0));
  SkElement p = sk_multiply(ers, est);
  REQUIRE(p.terms().size() == 1);
  CHECK(p.at(2, -1)[0] == Complex(1.0));
  CHECK(sk_multiply(ers, eut).terms().empty());
}

TEST_CASE("sparse product matches the dense oracle") {
  AlgebraPtr sc = scalar_algebra();
  Rng rng(5, "dense");
  for (int t = 0; t < 100; ++t) {
    SkElement a = random_sparse(sc, rng, 10, 25);
    SkElement b = random_sparse(sc, rng, 10, 25);
    SkElement got = sk_multiply(a, b);
    SkElement want = dense_product(a, b, 10);
    CHECK(sk_seminorm(sk_sub(got, want), 0) < 1e-14 * (1.0 + sk_seminorm(want, 0)));
  }
}

TEST_CASE("multiplication is associative") {
  AlgebraPtr sc = scalar_algebra();
  Rng rng(7, "assoc");
  for (int t = 0; t < 20; ++t) {
    SkElement a = random_sparse(sc, rng, 8, 15);
    SkElement b = random_sparse(sc, rng, 8, 15);
    SkElement c = random_sparse(sc, rng, 8, 15);
    SkElement lhs = sk_multiply(sk_multiply(a, b), c);
    SkElement rhs = sk_multiply(a, sk_multiply(b, c));
    CHECK(sk_seminorm(sk_sub(lhs, rhs), 0) < 1e-12 * (1.0 + sk_seminorm(lhs, 0)));
  }
}

TEST_CASE("window action is linear and composes") {
  AlgebraPtr sc = scalar_algebra();
  SkElement ert = sk_unit(sc, 3, -2, scalar_value(1.0));
  std::vector<Complex> xi(11, Complex(0.0));
  xi[static_cast<std::size_t>(-2 + 5)] = Complex(1.0);
  std::vector<Complex> out = sk_apply(ert, -5, 5, xi);
  CHECK(out[static_cast<std::size_t>(3 + 5)] == Complex(1.0));
  Complex total(0.0);
  for (const Complex& v : out) total += v;
  CHECK(total == Complex(1.0));

  Rng rng(9, "apply");
  SkElement a = random_sparse(sc, rng, 5, 12);
  SkElement b = random_sparse(sc, rng, 5, 12);
  std::vector<Complex> v(11);
  for (auto& x : v) x = rng.complex_gaussian();
  std::vector<Complex> one = sk_apply(sk_multiply(a, b), -5, 5, v);
  std::vector<Complex> two = sk_apply(a, -5, 5, sk_apply(b, -5, 5, v));
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(std::abs(one[i] - two[i]) < 1e-12);

  CHECK_THROWS_AS(sk_apply(a, 0, 2, std::vector<Complex>(3, Complex(1.0))), Error);
}

TEST_CASE("operator norm estimates") {
  AlgebraPtr sc = scalar_algebra();
  SkElement e00 = sk_unit(sc, 0, 0, scalar_value(1.0));
  CHECK(sk_operator_norm(e00).value == doctest::Approx(1.0));
  SkElement two = sk_unit(sc, 4, 4, scalar_value(Complex(0.0, 2.0)));
  CHECK(sk_operator_norm(two).value == doctest::Approx(2.0));
  // nilpotent single off-diagonal entry still has singular value 1
  SkElement nil = sk_unit(sc, 0, 1, scalar_value(1.0));
  CHECK(sk_operator_norm(nil).value == doctest::Approx(1.0));
  SkElement empty(sc);
  CHECK(sk_operator_norm(empty).value == 0.0);
}

TEST_CASE("ideal bound certifies the two-sided estimate") {
  AlgebraPtr sc = scalar_algebra();
  SkElement e00 = sk_unit(sc, 0, 0, scalar_value(1.0));
  IdealBoundReport unit = sk_ideal_bound(e00, e00, e00);
  CHECK(unit.lhs == doctest::Approx(1.0));
  CHECK(unit.rhs == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(unit.verdict);

  Rng rng(13, "ideal");
  for (int t = 0; t < 30; ++t) {
    SkElement p1 = random_sparse(sc, rng, 6, 10);
    SkElement a = random_sparse(sc, rng, 6, 10);
    SkElement p2 = random_sparse(sc, rng, 6, 10);
    IdealBoundReport rep = sk_ideal_bound(p1, a, p2);
    CHECK(rep.verdict);
  }

  SkElement zero(sc);
  IdealBoundReport z = sk_ideal_bound(e00, zero, e00);
  CHECK(z.lhs == 0.0);
  CHECK(z.verdict);
}

TEST_CASE("corner weight splits: (1+|r|+|s|)^q <= 2^q ((1+|r|)^q + (1+|s|)^q)") {
  for (int q = 0; q <= 6; ++q)
    for (int r = -20; r <= 20; ++r)
      for (int s = -20; s <= 20; ++s) {
        double lhs = std::pow(1.0 + std::abs(r) + std::abs(s), q);
        double rhs = std::pow(2.0, q) * (std::pow(1.0 + std::abs(r), q) + std::pow(1.0 + std::abs(s), q));
        CHECK(lhs <= rhs * (1.0 + 1e-12));
      }
}

TEST_CASE("crossed product kernel intertwines multiplication") {
  GroupPtr z = make_group({.kind = "free-abelian", .rank = 1});
  AlgebraPtr s = schwartz_algebra(24);
  ActionPtr act = make_action(z, s, "translation");
  ContextPtr ctx = CrossedContext::make(z, s, act);
  Rng rng(21, "kernel");
  for (int t = 0; t < 50; ++t) {
    CrossedElement a(ctx), b(ctx);
    for (std::int64_t j = -2; j <= 2; ++j) {
      std::map<std::int64_t, Complex> fa, fb;
      for (std::int64_t n = -8; n <= 8; ++n) {
        if (rng.uniform(0.0, 1.0) < 0.4) fa[n] = rng.complex_gaussian();
        if (rng.uniform(0.0, 1.0) < 0.4) fb[n] = rng.complex_gaussian();
      }
      a.add_term(Elem{j}, function_value(*s, fa));
      b.add_term(Elem{j}, function_value(*s, fb));
    }
    SkElement lhs = to_kernel(convolve(a, b));
    SkElement rhs = sk_multiply(to_kernel(a), to_kernel(b));
    CHECK(sk_seminorm(sk_sub(lhs, rhs), 0) < 1e-12 * (1.0 + sk_seminorm(rhs, 0)));
  }
  // diagonal kernel of a pure coefficient term
  CrossedElement diag = delta(ctx, z->identity(), function_value(*s, {{4, Complex(2.0)}}));
  SkElement k = to_kernel(diag);
  REQUIRE(k.terms().size() == 1);
  CHECK(k.at(4, 4)[0] == Complex(2.0));
  // shift by j puts mass on the j-th subdiagonal: K(r, r - j)
  CrossedElement shift = delta(ctx, Elem{3}, function_value(*s, {{1, Complex(1.0)}}));
  SkElement ks = to_kernel(shift);
  REQUIRE(ks.terms().size() == 1);
  CHECK(ks.at(1, -2)[0] == Complex(1.0));
}
