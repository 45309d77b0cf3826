#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "specinv/coeff.hpp"
#include "specinv/rng.hpp"

using namespace specinv;

TEST_CASE("scalar algebra") {
  AlgebraPtr a = scalar_algebra();
  Coeff x = scalar_value(Complex(3.0, -4.0));
  for (std::size_t m = 0; m <= a->max_index(); ++m) CHECK(a->seminorm(m, x) == doctest::Approx(5.0));
  CHECK(a->mul(x, a->one()) == x);
  CHECK(a->star(x)[0] == Complex(3.0, 4.0));
  Coeff y = a->mul(x, x);
  CHECK(y[0] == Complex(3.0, -4.0) * Complex(3.0, -4.0));
}

TEST_CASE("schwartz seminorms are weighted sups") {
  AlgebraPtr s = schwartz_algebra(16);
  Coeff f = function_value(*s, {{3, Complex(2.0)}, {0, Complex(5.0)}});
  CHECK(s->seminorm(0, f) == doctest::Approx(5.0));
  // weight (1+3)^2 = 16 beats the center entry
  CHECK(s->seminorm(2, f) == doctest::Approx(32.0));
  CHECK(s->seminorm(1, f) == doctest::Approx(8.0));
  Coeff g = function_value(*s, {{-3, Complex(0.0, 2.0)}});
  CHECK(s->seminorm(2, g) == doctest::Approx(32.0));
  CHECK_THROWS_AS(function_value(*s, {{17, Complex(1.0)}}), Error);
}

TEST_CASE("schwartz product is pointwise, star is conjugation") {
  AlgebraPtr s = schwartz_algebra(8);
  Coeff f = function_value(*s, {{1, Complex(2.0, 1.0)}, {2, Complex(3.0)}});
  Coeff g = function_value(*s, {{1, Complex(0.0, 1.0)}, {5, Complex(7.0)}});
  Coeff p = s->mul(f, g);
  CHECK(p[schwartz_slot(*s, 1)] == Complex(2.0, 1.0) * Complex(0.0, 1.0));
  CHECK(p[schwartz_slot(*s, 2)] == Complex(0.0));
  CHECK(p[schwartz_slot(*s, 5)] == Complex(0.0));
  Coeff st = s->star(f);
  CHECK(st[schwartz_slot(*s, 1)] == Complex(2.0, -1.0));
}

TEST_CASE("seminorm tower is nondecreasing in the index") {
  AlgebraPtr s = schwartz_algebra(12);
  Rng rng(3, "tower");
  for (int t = 0; t < 50; ++t) {
    Coeff f = s->random(rng, t % 2 ? RandomStyle::gaussian : RandomStyle::heavy_tail);
    for (std::size_t m = 0; m + 1 <= s->max_index(); ++m)
      CHECK(s->seminorm(m, f) <= s->seminorm(m + 1, f) + 1e-12);
  }
}

TEST_CASE("pointwise product satisfies the two-factor bound at every split") {
  AlgebraPtr s = schwartz_algebra(12);
  Rng rng(5, "bc");
  for (int t = 0; t < 100; ++t) {
    Coeff f = s->random(rng, RandomStyle::gaussian);
    Coeff g = s->random(rng, RandomStyle::heavy_tail);
    Coeff p = s->mul(f, g);
    for (std::size_t m = 0; m <= 4; ++m)
      for (std::size_t i = 0; i <= m; ++i)
        CHECK(s->seminorm(m, p) <= s->seminorm(i, f) * s->seminorm(m - i, g) * (1 + 1e-12) + 1e-300);
  }
}

TEST_CASE("scale-schwartz uses the supplied scale") {
  AlgebraPtr s = scale_schwartz_algebra({0.0, 1.5, 7.0});
  Coeff f = function_value(*s, {{0, Complex(1.0)}, {2, Complex(1.0)}});
  CHECK(s->seminorm(0, f) == doctest::Approx(1.0));
  CHECK(s->seminorm(1, f) == doctest::Approx(8.0));
  CHECK(s->seminorm(2, f) == doctest::Approx(64.0));
  CHECK_THROWS_AS(scale_schwartz_algebra({-1.0}), Error);
}

TEST_CASE("matrix lift over scalar multiplies matrices") {
  AlgebraPtr m2 = matrix_algebra(2);
  // [[1,2],[3,4]] * [[0,1],[1,0]] = [[2,1],[4,3]]
  Coeff a = m2->zero(), b = m2->zero();
  set_lift_entry(*m2, a, 0, 0, scalar_value(1.0));
  set_lift_entry(*m2, a, 0, 1, scalar_value(2.0));
  set_lift_entry(*m2, a, 1, 0, scalar_value(3.0));
  set_lift_entry(*m2, a, 1, 1, scalar_value(4.0));
  set_lift_entry(*m2, b, 0, 1, scalar_value(1.0));
  set_lift_entry(*m2, b, 1, 0, scalar_value(1.0));
  Coeff p = m2->mul(a, b);
  CHECK(lift_entry(*m2, p, 0, 0)[0] == Complex(2.0));
  CHECK(lift_entry(*m2, p, 0, 1)[0] == Complex(1.0));
  CHECK(lift_entry(*m2, p, 1, 0)[0] == Complex(4.0));
  CHECK(lift_entry(*m2, p, 1, 1)[0] == Complex(3.0));
  CHECK(m2->seminorm(0, a) == doctest::Approx(4.0));  // max entry
  // star is conjugate transpose
  Coeff c = m2->zero();
  set_lift_entry(*m2, c, 0, 1, scalar_value(Complex(1.0, 2.0)));
  Coeff cs = m2->star(c);
  CHECK(lift_entry(*m2, cs, 1, 0)[0] == Complex(1.0, -2.0));
  CHECK(lift_entry(*m2, cs, 0, 1)[0] == Complex(0.0));
}

TEST_CASE("matrix lift over schwartz keeps entrywise structure") {
  AlgebraPtr s = schwartz_algebra(4);
  AlgebraPtr m = matrix_lift(s, 2);
  Coeff a = m->zero();
  Coeff f = function_value(*s, {{1, Complex(3.0)}});
  set_lift_entry(*m, a, 0, 1, f);
  CHECK(m->seminorm(1, a) == doctest::Approx(6.0));
  // identity has ones on the diagonal
  Coeff one = m->one();
  CHECK(m->mul(one, a) == a);
  CHECK(m->mul(a, one) == a);
}

TEST_CASE("representation action matches dense matvec") {
  AlgebraPtr m2 = matrix_algebra(3);
  Rng rng(9, "rep");
  Coeff a = m2->random(rng, RandomStyle::gaussian);
  std::vector<Complex> in(m2->hilbert_dim()), out(m2->hilbert_dim(), Complex(0.0));
  for (std::size_t i = 0; i < in.size(); ++i) in[i] = Complex(static_cast<double>(i) + 1.0, -1.0);
  m2->apply_add(a, in.data(), out.data());
  for (int i = 0; i < 3; ++i) {
    Complex want(0.0);
    for (int j = 0; j < 3; ++j) want += lift_entry(*m2, a, i, j)[0] * in[static_cast<std::size_t>(j)];
    CHECK(std::abs(out[static_cast<std::size_t>(i)] - want) < 1e-12);
  }
}

TEST_CASE("schwartz representation is diagonal multiplication") {
  AlgebraPtr s = schwartz_algebra(3);
  Coeff f = function_value(*s, {{-3, Complex(2.0)}, {0, Complex(1.0, 1.0)}});
  std::vector<Complex> in(s->hilbert_dim(), Complex(1.0)), out(s->hilbert_dim(), Complex(0.0));
  s->apply_add(f, in.data(), out.data());
  CHECK(out[schwartz_slot(*s, -3)] == Complex(2.0));
  CHECK(out[schwartz_slot(*s, 0)] == Complex(1.0, 1.0));
  CHECK(out[schwartz_slot(*s, 1)] == Complex(0.0));
}

TEST_CASE("random coefficients are deterministic per seed and stream") {
  AlgebraPtr s = schwartz_algebra(10);
  Rng r1(42, "draw"), r2(42, "draw"), r3(43, "draw");
  Coeff a = s->random(r1, RandomStyle::gaussian);
  Coeff b = s->random(r2, RandomStyle::gaussian);
  Coeff c = s->random(r3, RandomStyle::gaussian);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(s->norm0(a) > 0.0);
}

TEST_CASE("size mismatch is rejected") {
  AlgebraPtr s = schwartz_algebra(4);
  Coeff wrong(3, Complex(1.0));
  CHECK_THROWS_AS(s->check_size(wrong), Error);
}
