#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "csl/errors.hpp"
#include "csl/term.hpp"

using namespace csl;

namespace {

const Elem X = Elem::gen("x");
const Elem S = Elem::star();

Rational random_prob(std::mt19937_64& rng) {
  const long den = 2 + static_cast<long>(rng() % 5);
  const long num = 1 + static_cast<long>(rng() % (den - 1));
  return Rational(num, den);
}

Term random_term(std::mt19937_64& rng, const std::vector<std::string>& gens, int depth) {
  const int kinds = depth == 0 ? 2 : 4;
  switch (rng() % kinds) {
    case 0:
      return Term::gen(gens[rng() % gens.size()]);
    case 1:
      return Term::star();
    case 2:
      return Term::oplus(random_term(rng, gens, depth - 1), random_term(rng, gens, depth - 1));
    default:
      return Term::plus(random_prob(rng), random_term(rng, gens, depth - 1),
                        random_term(rng, gens, depth - 1));
  }
}

}  // namespace

TEST_CASE("parser on the grammar") {
  const Term t1 = parse_term("(oplus x star)");
  CHECK(t1.kind() == Term::Kind::Oplus);
  CHECK(t1.left().gen_name() == "x");
  CHECK(t1.right().kind() == Term::Kind::Star);

  const Term t2 = parse_term("(pplus 1/2 x y)");
  CHECK(t2.kind() == Term::Kind::Plus);
  CHECK(t2.prob() == rat(1, 2));
  CHECK(t2.left().gen_name() == "x");
  CHECK(t2.right().gen_name() == "y");

  CHECK_THROWS_AS(parse_term("(pplus 1 x y)"), parse_error);
  CHECK_THROWS_AS(parse_term("(pplus 0 x y)"), parse_error);
  CHECK_THROWS_AS(parse_term("(pplus 3/2 x y)"), parse_error);
  CHECK_THROWS_AS(parse_term("(oplus x)"), parse_error);
  CHECK_THROWS_AS(parse_term("(oplus x star) junk"), parse_error);
  CHECK_THROWS_AS(parse_term("star x"), parse_error);
  CHECK_THROWS_AS(parse_term("1abc"), parse_error);

  // syntax weight q lands on the right operand
  const Term t3 = parse_term("(pplus 1/4 x star)");
  CHECK(t3.prob() == rat(3, 4));
  CHECK(t3.to_string() == "(pplus 1/4 x star)");
}

TEST_CASE("parse and print are mutually inverse on random terms") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 80; ++i) {
    const Term t = random_term(rng, {"a", "b", "c"}, 3);
    CHECK(parse_term(t.to_string()) == t);
  }
}

TEST_CASE("interpretation in the three free models") {
  const Carrier c = Carrier::names({"x"}, false);
  const auto v1 = interpret(parse_term("(oplus x star)"), TheoryId::CSStar, c);
  CHECK(*v1.set == ConvexSet::cc(c.with_star(), {Dist::dirac(X), Dist::dirac(S)}));

  const auto v2 = interpret(parse_term("(oplus x star)"), TheoryId::CSBot, c);
  CHECK(*v2.set == *v1.set);  // already closed

  const auto v3 = interpret(parse_term("(pplus 1/2 x star)"), TheoryId::CSBotBH, c);
  CHECK(v3.maybe->is_star());
}

TEST_CASE("theory equalities from the bottom and black-hole axioms") {
  const Term xe = parse_term("x");
  const Term x_or_stop = parse_term("(oplus x star)");
  CHECK(theory_equal(x_or_stop, xe, TheoryId::CSBot));
  CHECK(theory_equal(x_or_stop, xe, TheoryId::CSBotBH));
  CHECK(!theory_equal(x_or_stop, xe, TheoryId::CSStar));

  const Term mix_stop = parse_term("(pplus 1/2 x star)");
  const Term stop = parse_term("star");
  CHECK(theory_equal(mix_stop, stop, TheoryId::CSBotBH));
  CHECK(!theory_equal(mix_stop, stop, TheoryId::CSBot));
  CHECK(!theory_equal(mix_stop, stop, TheoryId::CSStar));
}

TEST_CASE("derivable equation with bottom: lowering mass is invisible") {
  // x +_p y = (x +_p y) ⊕ ((x +_q ⋆) +_p y) ⊕ (⋆ +_p y), here at p = q = 1/2
  const Term x = Term::gen("x"), y = Term::gen("y"), s = Term::star();
  const Rational h = rat(1, 2);
  const Term lhs = Term::plus(h, x, y);
  const Term rhs = Term::oplus(
      Term::oplus(Term::plus(h, x, y), Term::plus(h, Term::plus(h, x, s), y)),
      Term::plus(h, s, y));
  CHECK(theory_equal(lhs, rhs, TheoryId::CSBot));
  CHECK(!theory_equal(lhs, rhs, TheoryId::CSStar));
}

TEST_CASE("seven axioms hold in all three theories") {
  std::mt19937_64 rng(13);
  const std::vector<std::string> gens = {"a", "b"};
  const std::vector<TheoryId> theories = {TheoryId::CSStar, TheoryId::CSBot, TheoryId::CSBotBH};
  for (int trial = 0; trial < 25; ++trial) {
    const Term x = random_term(rng, gens, 1);
    const Term y = random_term(rng, gens, 1);
    const Term z = random_term(rng, gens, 1);
    const Rational p = random_prob(rng), q = random_prob(rng);
    for (TheoryId th : theories) {
      // (A), (C), (I)
      CHECK(theory_equal(Term::oplus(x, Term::oplus(y, z)), Term::oplus(Term::oplus(x, y), z), th));
      CHECK(theory_equal(Term::oplus(x, y), Term::oplus(y, x), th));
      CHECK(theory_equal(Term::oplus(x, x), x, th));
      // (A_p): (x +_q y) +_p z = x +_{pq} (y +_{p(1-q)/(1-pq)} z)
      CHECK(theory_equal(
          Term::plus(p, Term::plus(q, x, y), z),
          Term::plus(p * q, x, Term::plus(p * (1 - q) / (1 - p * q), y, z)), th));
      // (C_p), (I_p)
      CHECK(theory_equal(Term::plus(p, x, y), Term::plus(1 - p, y, x), th));
      CHECK(theory_equal(Term::plus(p, x, x), x, th));
      // (D)
      CHECK(theory_equal(Term::plus(p, x, Term::oplus(y, z)),
                         Term::oplus(Term::plus(p, x, y), Term::plus(p, x, z)), th));
    }
  }
}

TEST_CASE("finite-base expansion is derivable with bottom") {
  std::mt19937_64 rng(19);
  const std::vector<std::string> names = {"a", "b", "c"};
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 2;  // 2 or 3 summands
    // random positive weights with denominator <= 12 summing to 1
    const long denom = 4 + static_cast<long>(rng() % 9);
    std::vector<long> parts(n, 1);
    for (long r = denom - static_cast<long>(n); r > 0; --r) ++parts[rng() % n];
    std::vector<std::pair<Rational, Term>> weighted;
    for (std::size_t i = 0; i < n; ++i)
      weighted.emplace_back(Rational(parts[i], denom), Term::gen(names[i]));

    const Term lhs = pplus_fold(weighted);
    std::vector<Term> branches;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<std::pair<Rational, Term>> kept;
      Rational total = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) {
          kept.emplace_back(weighted[i]);
          total += weighted[i].first;
        }
      if (kept.empty()) {
        branches.push_back(Term::star());
      } else if (total == 1) {
        branches.push_back(pplus_fold(kept));
      } else {
        for (auto& [w, t] : kept) w /= total;
        branches.push_back(Term::plus(total, pplus_fold(kept), Term::star()));
      }
    }
    const Term rhs = oplus_fold(branches);
    CHECK(theory_equal(lhs, rhs, TheoryId::CSBot));
  }
}

TEST_CASE("kappa produces representatives that interpret back") {
  const Carrier c = Carrier::names({"x"}, false);
  CHECK(kappa(interpret_star(parse_term("x"), c)) == Term::gen("x"));
  CHECK(kappa(interpret_star(parse_term("star"), c)) == Term::star());

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const Term t = random_term(rng, {"a", "b", "c"}, 3);
    const Carrier gens = Carrier::names(t.generators(), false);
    const ConvexSet s = interpret_star(t, gens);
    CHECK(interpret_star(kappa(s), gens) == s);
  }
}

TEST_CASE("theory equality is an equivalence and a congruence") {
  std::mt19937_64 rng(29);
  const std::vector<std::string> gens = {"a", "b"};
  for (int trial = 0; trial < 20; ++trial) {
    const Term t1 = random_term(rng, gens, 2);
    const Term t2 = random_term(rng, gens, 2);
    const Term t3 = random_term(rng, gens, 2);
    for (TheoryId th : {TheoryId::CSStar, TheoryId::CSBot, TheoryId::CSBotBH}) {
      CHECK(theory_equal(t1, t1, th));
      CHECK(theory_equal(t1, t2, th) == theory_equal(t2, t1, th));
      if (theory_equal(t1, t2, th) && theory_equal(t2, t3, th)) CHECK(theory_equal(t1, t3, th));
      if (theory_equal(t1, t2, th)) {
        CHECK(theory_equal(Term::oplus(t1, t3), Term::oplus(t2, t3), th));
        CHECK(theory_equal(Term::plus(rat(1, 3), t1, t3), Term::plus(rat(1, 3), t2, t3), th));
      }
    }
  }
}

TEST_CASE("fold order does not matter modulo the axioms") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Term> parts;
    for (int i = 0; i < 3; ++i) parts.push_back(random_term(rng, {"a", "b"}, 1));
    std::vector<Term> shuffled = parts;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (TheoryId th : {TheoryId::CSStar, TheoryId::CSBot, TheoryId::CSBotBH})
      CHECK(theory_equal(oplus_fold(parts), oplus_fold(shuffled), th));

    std::vector<std::pair<Rational, Term>> weighted = {
        {rat(1, 2), parts[0]}, {rat(1, 3), parts[1]}, {rat(1, 6), parts[2]}};
    std::vector<std::pair<Rational, Term>> wshuffled = weighted;
    std::shuffle(wshuffled.begin(), wshuffled.end(), rng);
    for (TheoryId th : {TheoryId::CSStar, TheoryId::CSBot, TheoryId::CSBotBH})
      CHECK(theory_equal(pplus_fold(weighted), pplus_fold(wshuffled), th));
  }
}

TEST_CASE("interpretation maps the term operations to the free-model operations") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const Term t1 = random_term(rng, {"a", "b"}, 2);
    const Term t2 = random_term(rng, {"a", "b"}, 2);
    const Carrier gens = Carrier::names({"a", "b"}, false);
    const ConvexSet v1 = interpret_star(t1, gens), v2 = interpret_star(t2, gens);
    CHECK(interpret_star(Term::oplus(t1, t2), gens) == convex_union(v1, v2));
    const Rational p = random_prob(rng);
    CHECK(interpret_star(Term::plus(p, t1, t2), gens) == pplus_op(v1, v2, p));
    // the bottom and black-hole models factor through xi and gamma
    CHECK(*interpret(t1, TheoryId::CSBot, gens).set == xi(v1));
    CHECK(*interpret(t1, TheoryId::CSBotBH, gens).maybe == gamma(v1));
  }
}

TEST_CASE("interpretation is carrier-monotone") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const Term t = random_term(rng, {"a", "b"}, 2);
    const Carrier small = Carrier::names(t.generators(), false);
    const Carrier wide = Carrier::names({"a", "b", "zz"}, false);
    const ConvexSet s1 = interpret_star(t, small);
    const ConvexSet s2 = interpret_star(t, wide);
    CHECK(s1.base() == s2.base());
  }
}
