#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "block_oracle.hpp"
#include "picodim/poly.hpp"
#include "picodim/ut.hpp"
#include "picodim/witness.hpp"

using namespace picodim;

namespace {

std::shared_ptr<const SAlgebra> shared_S(std::size_t t, InvolutionKind kind) {
  static std::map<std::pair<std::size_t, int>, std::shared_ptr<const SAlgebra>> cache;
  auto key = std::make_pair(t, static_cast<int>(kind));
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_shared<SAlgebra>(build_S(t, kind))).first;
  return it->second;
}

Variable ev(const std::string& n) { return {n, Parity::Even}; }
Variable od(const std::string& n) { return {n, Parity::Odd}; }

// dense 2t x 2t matrix with a single upper-block entry
Matrix upper_unit(std::size_t t, std::size_t i, std::size_t j, const Rational& c) {
  Matrix out(2 * t, 2 * t);
  out.at(i - 1, t + j - 1) = c;
  return out;
}

}  // namespace

TEST_CASE("spanning monomials: counts, order, left-normed words") {
  auto one = spanning_monomials(1, 0);
  REQUIRE(one.size() == 1);
  CHECK(one[0].terms().size() == 1);
  CHECK(one[0].terms()[0].word == std::vector<Variable>{ev("x1")});

  auto two = spanning_monomials(2, 0);
  REQUIRE(two.size() == 2);
  CHECK(two[0].terms()[0].word == std::vector<Variable>{ev("x1"), ev("x2")});
  CHECK(two[1].terms()[0].word == std::vector<Variable>{ev("x2"), ev("x1")});
  CHECK(two[0].terms()[0].coeff == Rational(1));

  auto six = spanning_monomials(1, 2);
  CHECK(six.size() == 6);
  CHECK(six[0].terms()[0].word == std::vector<Variable>{ev("x1"), od("y1"), od("y2")});
  for (const auto& p : six) {
    CHECK(p.degree() == 3);
    CHECK(p.even_count() == 1);
  }
}

TEST_CASE("canonical form: merging, zero dropping, arithmetic") {
  Variable x1 = ev("x1"), x2 = ev("x2");
  MultiPoly p = MultiPoly::from_terms(
      {{Rational(1), {x1, x2}}, {Rational(2), {x1, x2}}, {Rational(-3), {x2, x1}}});
  REQUIRE(p.terms().size() == 2);
  CHECK(p.terms()[0].coeff == Rational(3));
  CHECK(p.terms()[1].coeff == Rational(-3));

  CHECK((p - p).is_zero());
  CHECK((p - p).variables() == p.variables());
  CHECK(p * Rational(0) == MultiPoly::zero({x1, x2}));
  CHECK(-(-p) == p);

  MultiPoly other = MultiPoly::monomial(Rational(1), {ev("x1"), ev("x3")});
  CHECK_THROWS_AS(p + other, std::invalid_argument);
  CHECK_THROWS_AS(MultiPoly::monomial(Rational(1), {x1, x1}), std::invalid_argument);
}

TEST_CASE("evaluate: basic words against the dense block picture") {
  auto S = shared_S(2, InvolutionKind::Orthogonal);
  const Element E12 = S->named.E.at({1, 2});
  const Element E11 = S->named.E.at({1, 1});

  // dense side first: e12*e11 - e11*e12 = -e12, taken inside the full
  // 4x4 block embedding
  Matrix dense = blockoracle::supercomm(blockoracle::s_to_matrix(*S, E12),
                                        blockoracle::s_to_matrix(*S, E11), false, false);
  CHECK(dense == blockoracle::add(Matrix(4, 4), blockoracle::s_to_matrix(*S, E12), Rational(-1)));

  MultiPoly p = MultiPoly::monomial(Rational(1), {ev("x1"), ev("x2")});
  Assignment a{{"x1", E12}, {"x2", E11}};
  Element got = evaluate(p, a);
  CHECK(got == -E12);
  CHECK(blockoracle::s_to_matrix(*S, got) == dense);

  CHECK(evaluate(MultiPoly::zero({ev("x1"), ev("x2")}), a).is_zero());
  CHECK_THROWS_AS(evaluate(p, Assignment{{"x1", E12}}), std::invalid_argument);
  Assignment bad{{"x1", S->named.Y0}, {"x2", E11}};  // odd element in an even slot
  CHECK_THROWS_AS(evaluate(p, bad), std::invalid_argument);
}

TEST_CASE("evaluate is multilinear in every slot") {
  auto S = shared_S(3, InvolutionKind::Orthogonal);
  MultiPoly p = MultiPoly::from_terms({{Rational(1), {ev("x1"), od("y1"), ev("x2")}},
                                       {Rational(-2), {ev("x2"), od("y1"), ev("x1")}}});
  Assignment a{{"x1", S->named.E.at({1, 1})},
               {"y1", S->named.Y[0]},
               {"x2", S->named.E.at({1, 2})}};

  Assignment au = a, av = a, aw = a;
  au["y1"] = S->named.Y[0];
  av["y1"] = S->named.Z[0];
  aw["y1"] = S->named.Y[0] + S->named.Z[0] * Rational(5);
  CHECK(evaluate(p, aw) == evaluate(p, au) + evaluate(p, av) * Rational(5));

  Assignment bu = a, bv = a, bw = a;
  bu["x2"] = S->named.E.at({1, 2});
  bv["x2"] = S->named.E.at({2, 3});
  bw["x2"] = S->named.E.at({1, 2}) * Rational(-3) + S->named.E.at({2, 3});
  CHECK(evaluate(p, bw) == evaluate(p, bu) * Rational(-3) + evaluate(p, bv));
}

TEST_CASE("alternate: definition, symmetry kill, repeated application") {
  Variable x1 = ev("x1"), x2 = ev("x2");
  MultiPoly p = MultiPoly::monomial(Rational(1), {x1, x2});
  MultiPoly alt = alternate(p, {x1, x2});
  CHECK(alt == MultiPoly::from_terms({{Rational(1), {x1, x2}}, {Rational(-1), {x2, x1}}}));

  MultiPoly sym = MultiPoly::from_terms({{Rational(1), {x1, x2}}, {Rational(1), {x2, x1}}});
  CHECK(alternate(sym, {x1, x2}).is_zero());

  CHECK(alternate(alt, {x1, x2}) == alt * Rational(2));

  MultiPoly q = MultiPoly::from_terms({{Rational(2), {x1, x2, ev("x3")}},
                                       {Rational(-1), {ev("x3"), x1, x2}}});
  MultiPoly qa = alternate(q, {x1, x2, ev("x3")});
  CHECK(alternate(qa, {x1, x2, ev("x3")}) == qa * Rational(6));

  CHECK_THROWS_AS(alternate(q, {x1, od("y1")}), std::invalid_argument);
  CHECK_THROWS_AS(alternate(p, {x1, ev("x9")}), std::invalid_argument);
}

TEST_CASE("cascade element: value and insensitivity to its alternation") {
  auto S4 = shared_S(4, InvolutionKind::Orthogonal);

  // dense oracle first: [[E12,E11],[E23,E22]] built from block matrices
  Matrix b1 = blockoracle::supercomm(blockoracle::s_to_matrix(*S4, S4->named.E.at({1, 2})),
                                     blockoracle::s_to_matrix(*S4, S4->named.E.at({1, 1})),
                                     false, false);
  Matrix b2 = blockoracle::supercomm(blockoracle::s_to_matrix(*S4, S4->named.E.at({2, 3})),
                                     blockoracle::s_to_matrix(*S4, S4->named.E.at({2, 2})),
                                     false, false);
  Matrix dense = blockoracle::supercomm(b1, b2, false, false);
  CHECK(dense == blockoracle::s_to_matrix(*S4, S4->named.E.at({1, 3})));

  WitnessSpec a1 = witness_a(1, 2, S4);
  CHECK(a1.degree() == 4);
  Element plain = eval_plain(a1);
  CHECK(plain == S4->named.E.at({1, 3}));
  CHECK(blockoracle::s_to_matrix(*S4, plain) == dense);
  CHECK(eval_alternated(a1) == plain);

  // the polynomial route has to agree with the tree route
  CHECK(evaluate(flatten_tree(a1.tree), a1.assignment) == plain);

  WitnessSpec a1s = witness_a(1, 1, shared_S(2, InvolutionKind::Orthogonal));
  CHECK(eval_plain(a1s) == -a1s.target->named.E.at({1, 2}));
  WitnessSpec a1b = witness_a(1, 3, shared_S(6, InvolutionKind::Orthogonal));
  CHECK(eval_plain(a1b) == -a1b.target->named.E.at({1, 4}));

  // two equal substitutions inside the alternating set wipe the value
  Assignment same = a1.assignment;
  same[a1.alt_sets[0][1].name] = same[a1.alt_sets[0][0].name];
  CHECK(eval_alternated(a1, same).is_zero());
}

TEST_CASE("doubled odd pairs: the alternation can be omitted") {
  WitnessSpec a2 = witness_a(2, 1, shared_S(2, InvolutionKind::Orthogonal));
  const auto& n2 = a2.target->named;
  Element expected = bracket(bracket(n2.E.at({1, 2}), n2.X[0]), n2.X[0]);
  CHECK(expected == n2.E.at({1, 2}) * Rational(4));
  Element plain = eval_plain(a2);
  CHECK(plain == expected);
  CHECK(eval_alternated(a2) == plain);

  WitnessSpec a2b = witness_a(2, 2, shared_S(4, InvolutionKind::Orthogonal));
  const auto& n4 = a2b.target->named;
  CHECK(eval_plain(a2b) == n4.E.at({1, 3}) * Rational(4));
  CHECK(eval_alternated(a2b) == eval_plain(a2b));
  CHECK(evaluate(flatten_tree(a2b.tree), a2b.assignment) == eval_plain(a2b));
}

TEST_CASE("minimal replicated element: block oracle pins the sign per involution") {
  for (InvolutionKind kind : {InvolutionKind::Orthogonal, InvolutionKind::Symplectic}) {
    CAPTURE(involution_name(kind));
    auto S = shared_S(4, kind);
    // dense oracle first: 2*[E13, Y0] must be twice the upper block
    // e13 + eps*e24 with eps = +1 under the flip, -1 under the signed flip
    Matrix K = blockoracle::supercomm(blockoracle::s_to_matrix(*S, S->named.E.at({1, 3})),
                                      blockoracle::s_to_matrix(*S, S->named.Y0), false, true);
    Rational eps = kind == InvolutionKind::Orthogonal ? Rational(1) : Rational(-1);
    Matrix expected =
        blockoracle::add(upper_unit(4, 1, 3, Rational(2)), upper_unit(4, 2, 4, Rational(2)), eps);
    CHECK(blockoracle::add(K, K) == expected);

    WitnessSpec a3 = witness_a(3, 2, S);
    CHECK(blockoracle::s_to_matrix(*S, eval_plain(a3)) == expected);
    CHECK(eval_plain(a3) == bracket(S->named.E.at({1, 3}), S->named.Y0) * Rational(2));
  }
}

TEST_CASE("replicated element on S(4): closed value for p,q in {1,2}") {
  for (InvolutionKind kind : {InvolutionKind::Orthogonal, InvolutionKind::Symplectic}) {
    auto S = shared_S(4, kind);
    const Element K = bracket(S->named.E.at({1, 3}), S->named.Y0);
    REQUIRE(!K.is_zero());
    for (std::size_t p = 1; p <= 2; ++p)
      for (std::size_t q = 1; q <= 2; ++q) {
        CAPTURE(involution_name(kind));
        CAPTURE(p);
        CAPTURE(q);
        WitnessSpec w = witness_W(p, q, S);
        CHECK(w.degree() == 4 * p + 4 * q + 8);
        CHECK(w.even_degree() == 4 * q + 3);
        CHECK(w.alt_sets.size() == p + q);
        for (const auto& set : w.alt_sets) CHECK(set.size() == 4);

        long sign = (p + q) % 2 == 0 ? 1 : -1;
        long pow2 = q == 1 ? 2 : 4;
        Element plain = eval_plain(w);
        CHECK(plain == K * Rational(sign * pow2));
        CHECK(!plain.is_zero());

        // stabilizer factor of the alternation, fixed per (p,q)
        long lambda = (q % 2 == 0 ? 1 : -1) * (p >= 2 ? 2 : 1);
        Element alt = eval_alternated(w);
        CHECK(alt == plain * Rational(lambda));
        CHECK(!alt.is_zero());
      }
  }
}

TEST_CASE("replicated element on S(2): closed value and degenerate symplectic kernel") {
  for (std::size_t p = 1; p <= 2; ++p)
    for (std::size_t q = 1; q <= 2; ++q) {
      CAPTURE(p);
      CAPTURE(q);
      auto So = shared_S(2, InvolutionKind::Orthogonal);
      WitnessSpec wo = witness_W(p, q, So);
      CHECK(wo.degree() == 2 * p + 2 * q + 4);
      CHECK(wo.even_degree() == 2 * q + 1);

      const Element K2 = bracket(So->named.E.at({1, 2}), So->named.Y0);
      REQUIRE(!K2.is_zero());
      long coeff = 1;  // (-2)^(p+1) * 2^q
      for (std::size_t r = 0; r <= p; ++r) coeff *= -2;
      for (std::size_t r = 0; r < q; ++r) coeff *= 2;
      Element plain = eval_plain(wo);
      CHECK(plain == K2 * Rational(coeff));
      CHECK(!plain.is_zero());
      CHECK(eval_alternated(wo) == plain);

      // under the signed flip [E12, Y0] is already zero, and the whole
      // replicated element collapses with it
      auto Ss = shared_S(2, InvolutionKind::Symplectic);
      CHECK(bracket(Ss->named.E.at({1, 2}), Ss->named.Y0).is_zero());
      WitnessSpec ws = witness_W(p, q, Ss);
      CHECK(eval_plain(ws).is_zero());
      CHECK(eval_alternated(ws).is_zero());
    }
}

TEST_CASE("replicated element on odd t: closed value, alternation neutral") {
  auto S3 = shared_S(3, InvolutionKind::Orthogonal);
  const Element K3 = bracket(S3->named.E.at({1, 3}), S3->named.Y0);
  REQUIRE(!K3.is_zero());
  for (std::size_t p = 1; p <= 2; ++p)
    for (std::size_t q = 1; q <= 2; ++q) {
      CAPTURE(p);
      CAPTURE(q);
      WitnessSpec w = witness_W(p, q, S3);
      CHECK(w.degree() == 2 * p + 3 * q + 5);
      CHECK(w.even_degree() == 2 + 3 * q);
      REQUIRE(w.alt_sets.size() == p + q);
      CHECK(w.alt_sets[0].size() == 3);
      CHECK(w.alt_sets[q].size() == 2);

      // (-1)^(m(p+1)) * (-2)^q with m = 1
      long coeff = (p + 1) % 2 == 0 ? 1 : -1;
      for (std::size_t r = 0; r < q; ++r) coeff *= -2;
      Element plain = eval_plain(w);
      CHECK(plain == K3 * Rational(coeff));
      CHECK(!plain.is_zero());
      CHECK(eval_alternated(w) == plain);
    }

  auto S5 = shared_S(5, InvolutionKind::Orthogonal);
  const Element K5 = bracket(S5->named.E.at({1, 5}), S5->named.Y0);
  WitnessSpec w5 = witness_W(1, 1, S5);
  Element plain5 = eval_plain(w5);
  CHECK(plain5 == K5 * Rational(-2));  // (-1)^(2*2) * (-2)^1
  CHECK(!plain5.is_zero());
  CHECK(eval_alternated(w5) == plain5);
}

TEST_CASE("padded witnesses stay nonzero") {
  auto S4 = shared_S(4, InvolutionKind::Orthogonal);
  WitnessSpec w = witness_W(1, 1, S4);
  for (std::size_t i = 0; i <= 3; ++i)
    for (std::size_t j = 0; j <= 3; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      WitnessSpec pw = padded_witness(w, i, j);
      CHECK(pw.degree() == w.degree() + i + j);
      CHECK(!eval_plain(pw).is_zero());
    }

  auto S4s = shared_S(4, InvolutionKind::Symplectic);
  CHECK(!eval_plain(padded_witness(witness_W(1, 1, S4s), 2, 2)).is_zero());

  auto S2 = shared_S(2, InvolutionKind::Orthogonal);
  WitnessSpec w2 = witness_W(1, 1, S2);
  for (std::size_t i = 0; i <= 2; ++i)
    for (std::size_t j = 0; j <= 2; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(!eval_plain(padded_witness(w2, i, j)).is_zero());
    }

  WitnessSpec same = padded_witness(w, 0, 0);
  CHECK(same.degree() == w.degree());
  CHECK(same.description == w.description);
}

TEST_CASE("flatten: rewriting signs agree with direct tree evaluation") {
  auto S2 = shared_S(2, InvolutionKind::Orthogonal);
  for (std::size_t p = 1; p <= 2; ++p)
    for (std::size_t q = 1; q <= 2; ++q) {
      WitnessSpec w = witness_W(p, q, S2);
      CAPTURE(p);
      CAPTURE(q);
      CHECK(evaluate(flatten_tree(w.tree), w.assignment) == eval_plain(w));
    }
  WitnessSpec wp = padded_witness(witness_W(1, 1, S2), 1, 2);
  CHECK(evaluate(flatten_tree(wp.tree), wp.assignment) == eval_plain(wp));

  WitnessSpec w4 = witness_W(1, 1, shared_S(4, InvolutionKind::Orthogonal));
  CHECK(evaluate(flatten_tree(w4.tree), w4.assignment) == eval_plain(w4));

  CHECK_THROWS_AS(flatten_tree(w4.tree, 8), std::runtime_error);
}

TEST_CASE("alternation consistency: formal expansion equals permuted sum") {
  for (int level = 1; level <= 3; ++level) {
    WitnessSpec a = witness_a(level, 1, shared_S(2, InvolutionKind::Orthogonal));
    CAPTURE(level);
    ConsistencyReport r = alternation_consistency(a);
    CHECK(r.checked);
    CHECK(r.consistent);
    CHECK(r.term_count > 0);
  }
  {
    ConsistencyReport r =
        alternation_consistency(witness_a(1, 2, shared_S(4, InvolutionKind::Orthogonal)));
    CHECK(r.checked);
    CHECK(r.consistent);
  }
  for (InvolutionKind kind : {InvolutionKind::Orthogonal, InvolutionKind::Symplectic}) {
    auto S2 = shared_S(2, kind);
    for (std::size_t p = 1; p <= 2; ++p)
      for (std::size_t q = 1; q <= 2; ++q) {
        CAPTURE(involution_name(kind));
        CAPTURE(p);
        CAPTURE(q);
        ConsistencyReport r = alternation_consistency(witness_W(p, q, S2));
        CHECK(r.checked);
        CHECK(r.consistent);
      }
  }
  {
    ConsistencyReport r =
        alternation_consistency(witness_W(1, 1, shared_S(4, InvolutionKind::Orthogonal)));
    CHECK(r.checked);
    CHECK(r.consistent);
  }
  {
    // the (2,2) expansion dwarfs the default budget and must be reported as
    // capped, not silently skipped or attempted
    ConsistencyReport r =
        alternation_consistency(witness_W(2, 2, shared_S(4, InvolutionKind::Orthogonal)));
    CHECK(!r.checked);
    CHECK(r.term_count == 0);
    CHECK(r.note.find("budget") != std::string::npos);
  }
}

TEST_CASE("equal elements in one alternating set kill the replicated element") {
  auto S4 = shared_S(4, InvolutionKind::Orthogonal);
  WitnessSpec w = witness_W(1, 1, S4);
  Assignment same = w.assignment;
  REQUIRE(w.alt_sets[0].size() >= 2);
  same[w.alt_sets[0][0].name] = same[w.alt_sets[0][1].name];
  CHECK(eval_alternated(w, same).is_zero());

  Assignment same_odd = w.assignment;
  REQUIRE(w.alt_sets[1].front().parity == Parity::Odd);
  same_odd[w.alt_sets[1][0].name] = same_odd[w.alt_sets[1][2].name];
  CHECK(eval_alternated(w, same_odd).is_zero());
}

TEST_CASE("witness scripts round-trip through the text form") {
  WitnessSpec w = witness_W(1, 1, shared_S(2, InvolutionKind::Orthogonal));
  PolyScript s = witness_script(w);
  CHECK(s.poly.degree() == w.degree());
  std::string txt = poly_to_text(s);
  PolyScript back = poly_from_text(txt);
  CHECK(back.poly == s.poly);
  CHECK(back.declarations == s.declarations);
  CHECK(back.alt_sets == s.alt_sets);

  PolyScript tiny = poly_from_text(
      "even x1\n"
      "even x2\n"
      "# comment line\n"
      "\n"
      "1 * [x1, x2]\n"
      "-1 * [x2, x1]\n");
  CHECK(tiny.poly ==
        MultiPoly::from_terms({{Rational(1), {ev("x1"), ev("x2")}},
                               {Rational(-1), {ev("x2"), ev("x1")}}}));

  CHECK_THROWS_AS(poly_from_text("even x1\n1 * [x1, x9]\n"), std::invalid_argument);
  CHECK_THROWS_AS(poly_from_text("even x1\neven x1\n1 * [x1]\n"), std::invalid_argument);
  CHECK_THROWS_AS(poly_from_text("even x1\n"), std::invalid_argument);
  CHECK_THROWS_AS(poly_from_text("even x1\nbogus * [x1]\n"), std::invalid_argument);
}

TEST_CASE("construction guards") {
  auto S4 = shared_S(4, InvolutionKind::Orthogonal);
  CHECK_THROWS_AS(witness_W(0, 1, S4), std::invalid_argument);
  CHECK_THROWS_AS(witness_W(1, 0, S4), std::invalid_argument);
  CHECK_THROWS_AS(witness_a(4, 1, S4), std::invalid_argument);
  CHECK_THROWS_AS(witness_a(1, 1, S4), std::invalid_argument);  // S(2) elements only
  CHECK_THROWS_AS(BracketTree::make_node({BracketTree::make_leaf(ev("x1"))}),
                  std::invalid_argument);

  // a variable may sit in only one alternating set
  WitnessSpec w = witness_W(1, 1, S4);
  WitnessSpec broken = w;
  broken.alt_sets.push_back(broken.alt_sets.back());
  CHECK_THROWS_AS(eval_alternated(broken), std::invalid_argument);
}
