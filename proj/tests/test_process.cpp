#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "csl/errors.hpp"
#include "csl/gen.hpp"
#include "csl/process.hpp"
#include "support.hpp"

using namespace csl;
using support::oracle_bisim;
using support::random_proc;

namespace {

Process P(const std::string& s) { return parse_process(s); }

const char* kP1 = "a^3.nil (+) nil";
const char* kP2 = "a^3.nil +1/2 a.(a^2.nil (+) a.(a.nil (+) nil))";
const char* kQ1 = "nil +1/2 a.nil";
const char* kQ2 = "nil +1/4 a.nil";

}  // namespace

TEST_CASE("parser honours precedence and sugar") {
  const Process p1 = P("a.nil (+) nil");
  CHECK(p1.kind() == Process::Kind::NDChoice);
  CHECK(p1.left() == Process::prefix(Process::nil()));
  CHECK(p1.right() == Process::nil());

  CHECK(P("a^3.nil") == Process::prefix(Process::prefix(Process::prefix(Process::nil()))));
  CHECK(P("a^0.nil") == Process::nil());

  const Process p2 = P("nil +1/2 a.nil");
  CHECK(p2.kind() == Process::Kind::PChoice);
  CHECK(p2.prob() == rat(1, 2));
  CHECK(p2.left() == Process::nil());
  CHECK(p2.right() == Process::prefix(Process::nil()));

  // +q binds tighter than (+); both associate left
  const Process p3 = P("nil (+) nil +1/2 a.nil");
  CHECK(p3.kind() == Process::Kind::NDChoice);
  CHECK(p3.right().kind() == Process::Kind::PChoice);
  const Process p4 = P("nil (+) nil (+) a.nil");
  CHECK(p4.left().kind() == Process::Kind::NDChoice);

  CHECK_THROWS_AS(P("nil +1 nil"), parse_error);
  CHECK_THROWS_AS(P("nil +"), parse_error);
  CHECK_THROWS_AS(P("b.nil"), parse_error);
  CHECK_THROWS_AS(P("a.nil junk"), parse_error);
}

TEST_CASE("printing is canonical and reparses") {
  Rng rng(3);
  for (int i = 0; i < 120; ++i) {
    const Process p = random_proc(rng, 5);
    CHECK(parse_process(p.to_string()) == p);
  }
  CHECK(P(kP2).to_string() == "(a^3.nil +1/2 a.(a^2.nil (+) a.(a.nil (+) nil)))");
}

TEST_CASE("tau implements the four rules") {
  CHECK(tau(Process::nil()) == Term::star());
  CHECK(tau(P("a.nil")) == Term::gen("nil"));
  CHECK(tau(P("a^3.nil (+) nil")) == Term::oplus(Term::gen("a^2.nil"), Term::star()));
  const Process q1 = P(kQ1);
  CHECK(tau(q1) == Term::plus(rat(1, 2), Term::star(), Term::gen("nil")));
}

TEST_CASE("reachable sets") {
  CHECK(reachable(Process::nil()) == std::vector<Process>{Process::nil()});
  CHECK(reachable(P("a.nil")).size() == 2);

  const auto r2 = reachable(P(kP2));
  CHECK(r2.size() == 6);
  std::vector<std::string> names;
  for (const Process& s : r2) names.push_back(s.to_string());
  for (const char* expect :
       {"nil", "a.nil", "a^2.nil", "(a.nil (+) nil)", "(a^2.nil (+) a.(a.nil (+) nil))"})
    CHECK(std::find(names.begin(), names.end(), expect) != names.end());
}

TEST_CASE("behavioural equivalence matrix from the worked examples") {
  const Process p1 = P(kP1), p2 = P(kP2);
  CHECK(behavioral_equivalent(p1, p2, TheoryId::CSBotBH).equivalent);
  CHECK(behavioral_equivalent(p1, p2, TheoryId::CSBot).equivalent);
  CHECK(!behavioral_equivalent(p1, p2, TheoryId::CSStar).equivalent);

  const Process nil = Process::nil(), mix = P("nil +1/2 a.nil");
  CHECK(behavioral_equivalent(nil, mix, TheoryId::CSBotBH).equivalent);
  CHECK(!behavioral_equivalent(nil, mix, TheoryId::CSBot).equivalent);
  CHECK(!behavioral_equivalent(nil, mix, TheoryId::CSStar).equivalent);
}

TEST_CASE("prove produces replayable certificates with the expected subgoals") {
  const ProofResult res = prove(P(kP1), P(kP2), TheoryId::CSBotBH);
  REQUIRE(res.proved);
  CHECK(replay_certificate(res, TheoryId::CSBotBH));

  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& goal : res.subgoals)
    pairs.emplace_back(goal.left.to_string(), goal.right.to_string());
  const std::pair<std::string, std::string> want1{"a^2.nil",
                                                  "(a^2.nil (+) a.(a.nil (+) nil))"};
  const std::pair<std::string, std::string> want2{"a.nil", "(a.nil (+) nil)"};
  CHECK(std::find(pairs.begin(), pairs.end(), want1) != pairs.end());
  CHECK(std::find(pairs.begin(), pairs.end(), want2) != pairs.end());

  const ProofResult neg = prove(P(kP1), P(kP2), TheoryId::CSStar);
  CHECK(!neg.proved);
  REQUIRE(neg.left_value.has_value());
  REQUIRE(neg.right_value.has_value());
  CHECK(!(neg.left_value->to_string() == neg.right_value->to_string()));

  CHECK(prove(Process::nil(), Process::nil(), TheoryId::CSStar).proved);
}

TEST_CASE("prove agrees with partition refinement on random pairs") {
  Rng rng(17);
  for (int i = 0; i < 60; ++i) {
    const Process a = random_proc(rng, 4);
    const Process b = random_proc(rng, 4);
    for (TheoryId th : {TheoryId::CSStar, TheoryId::CSBot, TheoryId::CSBotBH}) {
      const bool via_prove = prove(a, b, th).proved;
      const bool via_refine = behavioral_equivalent(a, b, th).equivalent;
      INFO(a.to_string(), " vs ", b.to_string(), " under ", theory_name(th));
      CHECK(via_prove == via_refine);
    }
  }
}

TEST_CASE("the three theories refine each other") {
  Rng rng(23);
  for (int i = 0; i < 40; ++i) {
    const Process a = random_proc(rng, 4);
    const Process b = random_proc(rng, 4);
    const bool star = behavioral_equivalent(a, b, TheoryId::CSStar).equivalent;
    const bool bot = behavioral_equivalent(a, b, TheoryId::CSBot).equivalent;
    const bool bh = behavioral_equivalent(a, b, TheoryId::CSBotBH).equivalent;
    if (star) CHECK(bot);
    if (bot) CHECK(bh);
  }
}

TEST_CASE("bisimilarity metric on the worked pair") {
  const Process q1 = P(kQ1), q2 = P(kQ2);
  CHECK(bisim_distance(q1, q1, TheoryId::CSStar).distance == 0);

  const BisimResult res = bisim_distance(q1, q2, TheoryId::CSStar);
  CHECK(res.distance <= rat(1, 4));
  CHECK(res.distance == oracle_bisim(q1, q2));
  CHECK(res.distance == rat(1, 4));

  CHECK_THROWS_AS(bisim_distance(q1, q2, TheoryId::CSBotBH), input_error);
}

TEST_CASE("bisimilarity metric matches the oracle on random choice-free pairs") {
  Rng rng(29);
  int done = 0;
  while (done < 25) {
    Process a = random_proc(rng, 4), b = random_proc(rng, 4);
    if (!support::nd_free(a) || !support::nd_free(b)) continue;
    ++done;
    CHECK(bisim_distance(a, b, TheoryId::CSStar).distance == oracle_bisim(a, b));
  }
}

TEST_CASE("metric zero coincides with behavioural equivalence") {
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    const Process a = random_proc(rng, 4);
    const Process b = random_proc(rng, 4);
    for (TheoryId th : {TheoryId::CSStar, TheoryId::CSBot}) {
      const bool equiv = behavioral_equivalent(a, b, th).equivalent;
      const Rational d = bisim_distance(a, b, th).distance;
      INFO(a.to_string(), " vs ", b.to_string(), " under ", theory_name(th));
      CHECK((d == 0) == equiv);
    }
  }
}

TEST_CASE("prefix steps are isometries") {
  Rng rng(37);
  for (int i = 0; i < 15; ++i) {
    const Process a = random_proc(rng, 3);
    const Process b = random_proc(rng, 3);
    for (TheoryId th : {TheoryId::CSStar, TheoryId::CSBot}) {
      CHECK(bisim_distance(Process::prefix(a), Process::prefix(b), th).distance ==
            bisim_distance(a, b, th).distance);
    }
  }
}

TEST_CASE("iterates increase monotonically and stop at the fixpoint") {
  // re-run the public computation and validate the fixpoint property
  const Process q1 = P(kQ1), q2 = P(kQ2);
  const BisimResult res = bisim_distance(q1, q2, TheoryId::CSBot);
  const auto& states = res.table.states;
  // Δ(d)(τu, τv) must equal d(u, v) at the fixpoint
  std::vector<std::string> names;
  for (const Process& s : states) names.push_back(s.to_string());
  const Carrier carrier = Carrier::names(names, false);
  std::vector<Elem> elems;
  for (const auto& n : names) elems.push_back(Elem::gen(n));
  const FinMetric d = FinMetric::pseudometric(elems, res.table.table);
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = 0; j < states.size(); ++j) {
      const ConvexSet vi = *interpret(tau(states[i]), TheoryId::CSBot, carrier).set;
      const ConvexSet vj = *interpret(tau(states[j]), TheoryId::CSBot, carrier).set;
      CHECK(hk_distance(vi, vj, d) == res.table.table[i][j]);
    }
}
