#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "specinv/crossed.hpp"

using namespace specinv;

namespace {

ContextPtr scalar_z() {
  GroupPtr z = make_group({.kind = "free-abelian", .rank = 1});
  AlgebraPtr s = scalar_algebra();
  return CrossedContext::make(z, s, make_action(z, s, "trivial"));
}

ContextPtr shift_z(int truncation) {
  GroupPtr z = make_group({.kind = "free-abelian", .rank = 1});
  AlgebraPtr s = schwartz_algebra(truncation);
  return CrossedContext::make(z, s, make_action(z, s, "translation"));
}

}  // namespace

TEST_CASE("delta convolution realizes group multiplication") {
  ContextPtr ctx = scalar_z();
  CrossedElement a = delta(ctx, Elem{3}, Complex(2.0));
  CrossedElement b = delta(ctx, Elem{-1}, Complex(0.5));
  CrossedElement p = convolve(a, b);
  REQUIRE(p.terms().size() == 1);
  CHECK(p.at(Elem{2})[0] == Complex(1.0));
}

TEST_CASE("twisted product applies the action to the right factor") {
  ContextPtr ctx = shift_z(8);
  const auto& s = *ctx->algebra;
  Coeff f = function_value(s, {{0, Complex(1.0)}});
  Coeff g = function_value(s, {{0, Complex(1.0)}, {2, Complex(1.0)}});
  CrossedElement a = delta(ctx, Elem{2}, f);
  CrossedElement b = delta(ctx, Elem{1}, g);
  CrossedElement p = convolve(a, b);
  // f * alpha_2(g): alpha_2 shifts support {0,2} to {2,4}; pointwise with a
  // function at 0 the product vanishes and the zero term is not stored
  CHECK(p.terms().empty());
  // with f supported at 2 the shifted mass survives
  Coeff f2 = function_value(s, {{2, Complex(3.0)}});
  CrossedElement a2 = delta(ctx, Elem{2}, f2);
  CrossedElement p2 = convolve(a2, b);
  CHECK(p2.at(Elem{3})[schwartz_slot(s, 2)] == Complex(3.0));
}

TEST_CASE("convolution is associative") {
  ContextPtr ctx = shift_z(16);
  Rng rng(23, "assoc");
  const auto& s = *ctx->algebra;
  for (int t = 0; t < 10; ++t) {
    CrossedElement a(ctx), b(ctx), c(ctx);
    for (std::int64_t g = -2; g <= 2; ++g) {
      a.add_term(Elem{g}, s.random(rng, RandomStyle::gaussian));
      b.add_term(Elem{g}, s.random(rng, RandomStyle::gaussian));
      c.add_term(Elem{g}, s.random(rng, RandomStyle::gaussian));
    }
    CrossedElement lhs = convolve(convolve(a, b), c);
    CrossedElement rhs = convolve(a, convolve(b, c));
    CrossedElement diff = sub(lhs, rhs);
    CHECK(weighted_norm(diff, 0, 0) < 1e-10 * (1.0 + weighted_norm(lhs, 0, 0)));
  }
}

TEST_CASE("mass conservation: nonnegative generator sums multiply norms") {
  GroupPtr h = make_group({.kind = "heisenberg"});
  AlgebraPtr s = scalar_algebra();
  ContextPtr ctx = CrossedContext::make(h, s, make_action(h, s, "trivial"));
  CrossedElement phi(ctx);
  for (const Elem& g : h->generators()) phi.add_term(g, scalar_value(1.0));
  CrossedElement p = phi;
  double expect = 4.0;
  for (int n = 1; n <= 6; ++n) {
    CHECK(weighted_norm(p, 0, 0) == doctest::Approx(expect).epsilon(1e-12));
    p = convolve(p, phi);
    expect *= 4.0;
  }
  CrossedElement p5 = power(phi, 5);
  CrossedElement direct = convolve(convolve(convolve(convolve(phi, phi), phi), phi), phi);
  CHECK(weighted_norm(sub(p5, direct), 0, 0) < 1e-9);
}

TEST_CASE("weighted norms use normalized gauge weights") {
  ContextPtr ctx = scalar_z();
  CrossedElement a = delta(ctx, Elem{3}, Complex(2.0));
  // (1 + tau)^d |c| with tau(3) = 3
  CHECK(weighted_norm(a, 0, 0) == doctest::Approx(2.0));
  CHECK(weighted_norm(a, 1, 0) == doctest::Approx(8.0));
  CHECK(weighted_norm(a, 2, 0) == doctest::Approx(32.0));
  CHECK(crossed_seminorm(a, 2) == doctest::Approx(32.0));
  // gauge multiplier weights by raw tau^k
  CrossedElement m1 = gauge_multiplier(a, 1);
  CHECK(m1.at(Elem{3})[0] == Complex(6.0));
  CrossedElement m0 = gauge_multiplier(a, 0);
  CHECK(m0.at(Elem{3})[0] == Complex(2.0));
}

TEST_CASE("involution is an isometric anti-automorphism") {
  ContextPtr ctx = shift_z(16);
  Rng rng(31, "star");
  const auto& s = *ctx->algebra;
  CrossedElement a(ctx), b(ctx);
  for (std::int64_t g = -2; g <= 2; ++g) {
    a.add_term(Elem{g}, s.random(rng, RandomStyle::gaussian));
    b.add_term(Elem{g}, s.random(rng, RandomStyle::heavy_tail));
  }
  // involutive
  CrossedElement aa = involution(involution(a));
  CHECK(weighted_norm(sub(aa, a), 0, 0) < 1e-12);
  // anti-multiplicative
  CrossedElement lhs = involution(convolve(a, b));
  CrossedElement rhs = convolve(involution(b), involution(a));
  CHECK(weighted_norm(sub(lhs, rhs), 0, 0) < 1e-10);
  // trivial-action scalar case: exact isometry for every (d, m)
  ContextPtr sc = scalar_z();
  CrossedElement c(sc);
  c.add_term(Elem{2}, scalar_value(Complex(1.0, -2.0)));
  c.add_term(Elem{-5}, scalar_value(Complex(0.5, 0.25)));
  for (int d = 0; d <= 3; ++d)
    CHECK(weighted_norm(involution(c), d, 0) == doctest::Approx(weighted_norm(c, d, 0)));
}

TEST_CASE("exponential of a scalar delta matches the series") {
  ContextPtr ctx = scalar_z();
  double t = 0.7;
  CrossedElement a = delta(ctx, Elem{1}, Complex(t));
  ExpReport rep = exponential(a, 1e-14);
  CHECK(rep.tail_bound < 1e-14);
  double fact = 1.0;
  for (int k = 0; k <= 8; ++k) {
    if (k > 0) fact *= k;
    CHECK(std::abs(rep.value.at(Elem{k})[0] - Complex(std::pow(t, k) / fact)) < 1e-13);
  }
  CHECK(weighted_norm(rep.value, 0, 0) == doctest::Approx(std::exp(t)).epsilon(1e-12));
  // exp(0) = identity
  ExpReport zero = exponential(CrossedElement(ctx), 1e-14);
  CHECK(zero.value.at(ctx->group->identity())[0] == Complex(1.0));
  CHECK(zero.value.terms().size() == 1);
}

TEST_CASE("pruning drops mass into the error budget") {
  ContextPtr ctx = scalar_z();
  CrossedElement a(ctx);
  a.add_term(Elem{0}, scalar_value(1.0));
  a.add_term(Elem{1}, scalar_value(1e-9));
  CrossedElement b = delta(ctx, Elem{0}, Complex(1.0));
  CrossedElement p = convolve(a, b, PruneOptions{.enabled = true, .threshold = 1e-6});
  CHECK(p.terms().size() == 1);
  CHECK(p.pruning_error() == doctest::Approx(1e-9));
  // weighted error is unbounded for pruned input: hard error, not a guess
  CHECK_THROWS_AS(gauge_multiplier(p, 1), Error);
  CHECK_NOTHROW(gauge_multiplier(p, 0));
}

TEST_CASE("unitization multiplies as (a + lambda)(b + mu)") {
  ContextPtr ctx = shift_z(8);
  const auto& s = *ctx->algebra;
  CrossedElement a = delta(ctx, Elem{1}, function_value(s, {{0, Complex(2.0)}}));
  CrossedElement b = delta(ctx, Elem{-1}, function_value(s, {{1, Complex(3.0)}}));
  UnitizedElement ua = unitize(a, Complex(0.5));
  UnitizedElement ub = unitize(b, Complex(2.0));
  UnitizedElement p = u_mul(ua, ub);
  CHECK(p.lambda == Complex(1.0));
  // ab + 0.5 b + 2 a
  CrossedElement want = add(convolve(a, b), add(scale(Complex(0.5), b), scale(Complex(2.0), a)));
  CHECK(weighted_norm(sub(p.part, want), 0, 0) < 1e-12);
  // level zero counts the unit, higher levels do not
  CHECK(unitized_seminorm(ua, 0) == doctest::Approx(crossed_seminorm(a, 0) + 0.5));
  CHECK(unitized_seminorm(ua, 2) == doctest::Approx(crossed_seminorm(a, 2)));
}

TEST_CASE("integer mode is exact for dyadic scalar elements") {
  ContextPtr ctx = scalar_z();
  CrossedElement phi(ctx);
  phi.add_term(Elem{1}, scalar_value(1.0));
  phi.add_term(Elem{-1}, scalar_value(1.0));
  auto exact = try_exact(phi);
  REQUIRE(exact.has_value());
  CHECK(exact->scale == 1.0);
  IntegerElement p = *exact;
  for (int n = 2; n <= 16; ++n) p = int_convolve(p, *exact);
  // coefficient of (d1 + d-1)^16 at position 2k is C(16, 8+k)
  for (int k = -8; k <= 8; ++k) {
    double want = oracle::binomial(16, 8 + k);
    auto it = p.terms.find(Elem{2 * static_cast<std::int64_t>(k)});
    REQUIRE(it != p.terms.end());
    CHECK(static_cast<double>(it->second) == want);
  }
  CHECK(int_weighted_norm(p, 0) == 65536.0);  // exactly 2^16

  CrossedElement half = delta(ctx, Elem{0}, Complex(0.75));
  auto eh = try_exact(half);
  REQUIRE(eh.has_value());
  CHECK(eh->scale == 0.25);
  CHECK(static_cast<double>(eh->terms.at(Elem{0})) == 3.0);
  CrossedElement back = from_exact(*eh);
  CHECK(back.at(Elem{0})[0] == Complex(0.75));

  CHECK_FALSE(try_exact(delta(ctx, Elem{0}, Complex(0.0, 1.0))).has_value());
  ContextPtr sz = shift_z(4);
  CrossedElement nonscalar = delta(sz, Elem{0}, function_value(*sz->algebra, {{0, Complex(1.0)}}));
  CHECK_FALSE(try_exact(nonscalar).has_value());
}

TEST_CASE("term budget is a hard error") {
  GroupPtr f = make_group({.kind = "free", .rank = 2});
  AlgebraPtr s = scalar_algebra();
  ContextPtr ctx = CrossedContext::make(f, s, make_action(f, s, "trivial"));
  CrossedElement phi(ctx);
  for (const Elem& g : f->generators()) phi.add_term(g, scalar_value(0.25));
  CHECK_THROWS_AS(power(phi, 8, {}, 1000), Error);
}
