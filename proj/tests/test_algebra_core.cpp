#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "picodim/algebra.hpp"

using namespace picodim;

namespace {

// full matrix algebra M_n(F), all even
AlgebraPtr make_full_matrix(std::size_t n) {
  const std::size_t d = n * n;
  auto idx = [n](std::size_t i, std::size_t j) { return i * n + j; };
  std::vector<SparseVec> table(d * d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l)
          if (j == k) table[idx(i, j) * d + idx(k, l)] = {{idx(i, l), Rational(1)}};
  return GradedAlgebra::create("M" + std::to_string(n), std::vector<Parity>(d, Parity::Even),
                               std::move(table), std::nullopt, false);
}

// 2x2 block matrices over UT_2 with the checkerboard grading: basis
// (block position p,q; matrix unit e_ij with i<=j), built here directly from
// block multiplication as an independent cross-check of the library builders
AlgebraPtr make_blocked_ut2() {
  struct B { std::size_t p, q, i, j; };
  std::vector<B> basis;
  for (std::size_t p = 0; p < 2; ++p)
    for (std::size_t q = 0; q < 2; ++q)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = i; j < 2; ++j) basis.push_back({p, q, i, j});
  const std::size_t d = basis.size();
  auto find = [&](std::size_t p, std::size_t q, std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < d; ++k)
      if (basis[k].p == p && basis[k].q == q && basis[k].i == i && basis[k].j == j) return k;
    REQUIRE(false);
    return d;
  };
  std::vector<SparseVec> table(d * d);
  std::vector<Parity> parity(d);
  for (std::size_t a = 0; a < d; ++a) {
    parity[a] = basis[a].p == basis[a].q ? Parity::Even : Parity::Odd;
    for (std::size_t b = 0; b < d; ++b) {
      if (basis[a].q != basis[b].p) continue;
      if (basis[a].j != basis[b].i) continue;
      if (basis[a].i > basis[b].j) continue;  // product leaves UT_2
      table[a * d + b] = {{find(basis[a].p, basis[b].q, basis[a].i, basis[b].j), Rational(1)}};
    }
  }
  return GradedAlgebra::create("blockUT2", std::move(parity), std::move(table), std::nullopt,
                               false);
}

Element random_element(const AlgebraPtr& alg, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> dist(-3, 3);
  std::vector<Rational> v(alg->dim());
  for (auto& c : v) c = Rational(dist(rng));
  return alg->element(std::move(v));
}

}  // namespace

TEST_CASE("construction validates Z2 and Z grading closure") {
  // even*even landing on an odd coordinate must be rejected
  std::vector<SparseVec> bad(4);
  bad[0] = {{1, Rational(1)}};
  CHECK_THROWS_AS(GradedAlgebra::create("bad", {Parity::Even, Parity::Odd}, std::move(bad),
                                        std::nullopt, false),
                  std::invalid_argument);

  // UT_2-shaped products with an inconsistent degree labelling
  auto make = [](std::vector<long> deg) {
    std::vector<SparseVec> t(9);
    t[0 * 3 + 1] = {{1, Rational(1)}};  // e11*e12 = e12
    t[1 * 3 + 2] = {{1, Rational(1)}};  // e12*e22 = e12
    t[0 * 3 + 0] = {{0, Rational(1)}};
    t[2 * 3 + 2] = {{2, Rational(1)}};
    return GradedAlgebra::create("ut2", std::vector<Parity>(3, Parity::Even), std::move(t),
                                 std::move(deg), false);
  };
  CHECK_NOTHROW(make({0, 1, 0}));
  CHECK_THROWS_AS(make({0, 1, 1}), std::invalid_argument);
}

TEST_CASE("superbracket of a commutative algebra is zero") {
  std::vector<SparseVec> t(1);
  t[0] = {{0, Rational(1)}};
  auto f = GradedAlgebra::create("F", {Parity::Even}, std::move(t), std::nullopt, false);
  auto lie = superbracket_algebra(f);
  CHECK(lie->is_super_lie());
  CHECK(lie->product_entry(0, 0).empty());
}

TEST_CASE("superbracket rejects non-associative input, naming a triple") {
  std::vector<SparseVec> t(4);
  t[1 * 2 + 1] = {{0, Rational(1)}};  // x*x = e
  t[0 * 2 + 1] = {{1, Rational(1)}};  // e*x = x, but x*e = 0
  auto a = GradedAlgebra::create("na", {Parity::Even, Parity::Odd}, std::move(t), std::nullopt,
                                 false);
  try {
    superbracket_algebra(a);
    FAIL("expected a throw");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("associative") != std::string::npos);
    CHECK(std::string(e.what()).find("(") != std::string::npos);
  }
}

TEST_CASE("blocked UT_2 with checkerboard grading is a 12-dim Lie superalgebra") {
  auto q = superbracket_algebra(make_blocked_ut2());
  CHECK(q->dim() == 12);
  CHECK(q->is_super_lie());

  // diagonal-block evens multiply by commutator of the blocks:
  // [ (e11 at 1,1), (e12 at 1,1) ] = (e11 e12 - e12 e11 at 1,1) = (e12 at 1,1)
  // basis order: (p,q) major, units e11,e12,e22 minor; (1,1)-block starts at 0
  Element a = q->basis_element(0), b = q->basis_element(1);
  CHECK(bracket(a, b) == b);

  // odd-odd bracket is the symmetrized product; bracket(y,y) for odd y need
  // not vanish, but super-anticommutativity still holds pairwise
  for (std::size_t i = 0; i < q->dim(); ++i)
    for (std::size_t j = 0; j < q->dim(); ++j) {
      Element lhs = bracket(q->basis_element(i), q->basis_element(j));
      Element rhs = bracket(q->basis_element(j), q->basis_element(i));
      Rational s = (q->parity(i) == Parity::Odd && q->parity(j) == Parity::Odd)
                       ? Rational(1)
                       : Rational(-1);
      CHECK(lhs == rhs * s);
    }
}

TEST_CASE("bracket is bilinear and kills even squares") {
  auto g = superbracket_algebra(make_full_matrix(2));
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    Element a = random_element(g, rng), b = random_element(g, rng), c = random_element(g, rng);
    CHECK(bracket(a + b, c) == bracket(a, c) + bracket(b, c));
    CHECK(bracket(c, a + b) == bracket(c, a) + bracket(c, b));
    CHECK(bracket(a, a).is_zero());  // all-even algebra
  }
}

TEST_CASE("elements: parity split, mismatched algebras rejected") {
  auto q = superbracket_algebra(make_blocked_ut2());
  std::mt19937_64 rng(7);
  Element x = random_element(q, rng);
  CHECK(x.even_part() + x.odd_part() == x);
  CHECK(x.even_part().is_even());
  CHECK(x.odd_part().is_odd());

  auto g = superbracket_algebra(make_full_matrix(2));
  CHECK_THROWS_AS(bracket(x, g->zero()), std::invalid_argument);
  CHECK_THROWS_AS(x + g->zero(), std::invalid_argument);
}

TEST_CASE("derived series: abelian, solvable, and simple cases") {
  std::vector<SparseVec> t(4);
  auto ab = GradedAlgebra::create("ab2", std::vector<Parity>(2, Parity::Even), std::move(t),
                                  std::nullopt, true);
  auto chain = derived_series(ab);
  CHECK(chain.size() == 2);
  CHECK(chain.back().is_zero());

  // gl_2 under commutator: derived series stabilizes at sl_2, nonzero
  auto g = superbracket_algebra(make_full_matrix(2));
  auto gc = derived_series(g);
  CHECK(gc.back().dim() == 3);
  CHECK(!gc.back().is_zero());

  // upper-triangular 2x2 under commutator is solvable
  std::vector<SparseVec> ut(9);
  ut[0 * 3 + 0] = {{0, Rational(1)}};
  ut[0 * 3 + 1] = {{1, Rational(1)}};
  ut[1 * 3 + 2] = {{1, Rational(1)}};
  ut[2 * 3 + 2] = {{2, Rational(1)}};
  auto b = superbracket_algebra(GradedAlgebra::create(
      "ut2", std::vector<Parity>(3, Parity::Even), std::move(ut), std::nullopt, false));
  auto bc = derived_series(b);
  CHECK(bc.back().is_zero());
}

TEST_CASE("power series: nilpotency of the strictly-upper part") {
  std::vector<SparseVec> ut(9);
  ut[0 * 3 + 0] = {{0, Rational(1)}};
  ut[0 * 3 + 1] = {{1, Rational(1)}};
  ut[1 * 3 + 2] = {{1, Rational(1)}};
  ut[2 * 3 + 2] = {{2, Rational(1)}};
  auto b = superbracket_algebra(GradedAlgebra::create(
      "ut2", std::vector<Parity>(3, Parity::Even), std::move(ut), std::nullopt, false));
  Subspace strict = Subspace::span(b, {b->basis_element(1)});
  auto chain = power_series(strict);
  CHECK(chain.size() == 2);
  CHECK(chain.back().is_zero());
  auto ln = left_normed_power_series(strict);
  CHECK(ln.size() == 2);

  // a non-subalgebra is rejected
  auto g = superbracket_algebra(make_full_matrix(2));
  Subspace notsub = Subspace::span(g, {g->basis_element(1), g->basis_element(2)});
  CHECK_THROWS_AS(power_series(notsub), std::invalid_argument);
}

TEST_CASE("ad operator: zero, and columns unfold the bracket") {
  auto g = superbracket_algebra(make_full_matrix(2));
  Matrix z = ad_operator(g->zero());
  CHECK(z == Matrix(4, 4));

  std::mt19937_64 rng(11);
  Element x = random_element(g, rng);
  Matrix m = ad_operator(x);
  for (std::size_t j = 0; j < 4; ++j) {
    Element col = bracket(g->basis_element(j), x);
    for (std::size_t i = 0; i < 4; ++i) CHECK(m.at(i, j) == col[i]);
  }
}

TEST_CASE("ideal generation by saturation") {
  auto g = superbracket_algebra(make_full_matrix(2));
  CHECK(ideal_generated(g, {g->zero()}).is_zero());

  std::vector<Element> all;
  for (std::size_t i = 0; i < 4; ++i) all.push_back(g->basis_element(i));
  CHECK(ideal_generated(g, all).dim() == 4);

  // e12 generates sl_2 inside gl_2
  Subspace i = ideal_generated(g, {g->basis_element(1)});
  CHECK(i.dim() == 3);
  CHECK(i.contains(g->basis_element(0) - g->basis_element(3)));
  CHECK(!i.contains(g->basis_element(0) + g->basis_element(3)));
}

TEST_CASE("JSON round-trip is byte-stable and preserves structure") {
  auto q = superbracket_algebra(make_blocked_ut2());
  std::string s1 = algebra_to_json_string(*q);
  auto q2 = algebra_from_json_string(s1);
  std::string s2 = algebra_to_json_string(*q2);
  CHECK(s1 == s2);
  CHECK(q2->dim() == q->dim());
  CHECK(q2->is_super_lie());
  for (std::size_t i = 0; i < q->dim(); ++i) {
    CHECK(q2->parity(i) == q->parity(i));
    for (std::size_t j = 0; j < q->dim(); ++j)
      CHECK(q2->product_entry(i, j) == q->product_entry(i, j));
  }

  // associative input stays associative-flavored (not super Lie)
  auto ut = make_blocked_ut2();
  auto ut2 = algebra_from_json_string(algebra_to_json_string(*ut));
  CHECK(!ut2->is_super_lie());
}
