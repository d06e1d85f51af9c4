// First-order recursive path ordering: case-by-case behavior, proof replay,
// tamper resistance, and differential agreement with the brute-force oracle.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "hrs/enumerate.hpp"
#include "hrs/rpo.hpp"

using namespace hrs;

namespace {

TypePtr N() { return mkSort("N"); }

SignatureConfig sig() {
  SignatureConfig cfg;
  cfg.sorts["N"] = {"N", 0};
  cfg.symbols.declare({"0", {}, N()});
  cfg.symbols.declare({"s", {N()}, N()});
  cfg.symbols.declare({"f", {N(), N()}, N()});
  cfg.prec.addStrict("f", "s");
  cfg.prec.addStrict("s", "0");
  return cfg;
}

TermPtr zero() { return mkFun("0", {}); }
TermPtr S(TermPtr t) { return mkFun("s", {t}); }
TermPtr F(TermPtr a, TermPtr b) { return mkFun("f", {a, b}); }

bool gt(const SignatureConfig& cfg, const TermPtr& a, const TermPtr& b) {
  return rpoGT(cfg, a, b).has_value();
}

}  // namespace

TEST_CASE("variables are minimal; the subterm case fires") {
  SignatureConfig cfg = sig();
  CHECK(!gt(cfg, mkVar("x"), mkVar("x")));
  CHECK(!gt(cfg, mkVar("x"), zero()));
  CHECK(gt(cfg, S(mkVar("x")), mkVar("x")));  // f(x) > x
  auto p = rpoGT(cfg, S(mkVar("x")), mkVar("x"));
  REQUIRE(p.has_value());
  CHECK((*p)->ruleCase == 1);
  CHECK(gt(cfg, S(S(zero())), zero()));  // deep embedding
  CHECK(!gt(cfg, zero(), S(zero())));
}

TEST_CASE("precedence case with condition A") {
  SignatureConfig cfg = sig();
  // s > 0 in the precedence, no rhs arguments.
  auto p = rpoGT(cfg, S(mkVar("x")), zero());
  REQUIRE(p.has_value());
  CHECK((*p)->ruleCase == 2);
  // f(x,y) > s(x): precedence f > s, condition A discharged by the argument x.
  TermPtr lhs = F(mkVar("x"), mkVar("y"));
  auto q = rpoGT(cfg, lhs, S(mkVar("x")));
  REQUIRE(q.has_value());
  CHECK((*q)->ruleCase == 2);
  // A genuinely failing instance of condition A: f(y,x) is not below f(x,y).
  CHECK(!gt(cfg, lhs, S(F(mkVar("y"), mkVar("x")))));
  // But f(x,x) cannot dominate a fresh variable.
  CHECK(!gt(cfg, F(mkVar("x"), mkVar("x")), S(mkVar("z"))));
}

TEST_CASE("multiset status compares arguments as multisets") {
  SignatureConfig cfg = sig();  // f defaults to Mul
  CHECK(gt(cfg, F(S(zero()), zero()), F(zero(), zero())));
  CHECK(gt(cfg, F(S(mkVar("x")), mkVar("y")), F(mkVar("x"), mkVar("y"))));
  // Permutation of arguments is not a strict decrease under Mul.
  CHECK(!gt(cfg, F(mkVar("x"), mkVar("y")), F(mkVar("y"), mkVar("x"))));
  auto p = rpoGT(cfg, F(S(zero()), zero()), F(zero(), zero()));
  REQUIRE(p.has_value());
  CHECK((*p)->ruleCase == 3);
  REQUIRE((*p)->mulWitness.has_value());
}

TEST_CASE("lexicographic status uses the first strict position") {
  SignatureConfig cfg = sig();
  cfg.status["f"] = StatusKind::Lex;
  auto p = rpoGT(cfg, F(S(zero()), zero()), F(zero(), S(S(zero()))));
  REQUIRE(p.has_value());
  CHECK((*p)->ruleCase == 4);
  CHECK((*p)->witnessIndex == 0);
  // Under Mul the same pair fails (s(s(0)) is not dominated).
  SignatureConfig mul = sig();
  CHECK(!gt(mul, F(S(zero()), zero()), F(zero(), S(S(zero())))));
}

TEST_CASE("higher-order input is refused") {
  SignatureConfig cfg = sig();
  CHECK_THROWS_AS(rpoGT(cfg, mkAbs("x", N(), mkVar("x")), zero()), NotFirstOrder);
  CHECK_THROWS_AS(rpoGT(cfg, zero(), mkApp(mkVar("g"), mkVar("x"))), NotFirstOrder);
}

TEST_CASE("proof replay accepts engine output and rejects tampering") {
  SignatureConfig cfg = sig();
  TermPtr lhs = F(S(zero()), mkVar("y"));
  TermPtr rhs = F(zero(), mkVar("y"));
  auto p = rpoGT(cfg, lhs, rhs);
  REQUIRE(p.has_value());
  CHECK(rpoCheckProof(cfg, *p));

  SUBCASE("flipping the case number fails") {
    (*p)->ruleCase = 2;
    CHECK(!rpoCheckProof(cfg, *p));
  }
  SUBCASE("swapping the conclusion fails") {
    std::swap((*p)->lhs, (*p)->rhs);
    CHECK(!rpoCheckProof(cfg, *p));
  }
  SUBCASE("emptying the decomposition fails") {
    REQUIRE((*p)->mulWitness.has_value());
    (*p)->mulWitness->dominated.clear();
    CHECK(!rpoCheckProof(cfg, *p));
  }
  SUBCASE("a fabricated reflexivity leaf fails") {
    auto fake = std::make_shared<RpoProof>();
    fake->lhs = zero();
    fake->rhs = S(zero());
    fake->ruleCase = 0;
    CHECK(!rpoCheckProof(cfg, fake));
  }
}

TEST_CASE("differential agreement with the independent oracle, size <= 3") {
  SignatureConfig cfg = sig();
  EnumSpec es;
  es.cfg = cfg;
  es.seedVars = {{"x", N()}, {"y", N()}};
  es.maxSize = 3;
  auto ts = enumerateTerms(es);
  REQUIRE(ts.size() > 5);
  int instances = 0;
  for (auto& a : ts)
    for (auto& b : ts) {
      bool engine = gt(cfg, a, b);
      bool oracle = oracleRpo(cfg, a, b);
      CAPTURE(showTerm(a));
      CAPTURE(showTerm(b));
      REQUIRE(engine == oracle);
      // Every engine win must replay.
      if (engine) REQUIRE(rpoCheckProof(cfg, *rpoGT(cfg, a, b)));
      ++instances;
    }
  CHECK(instances >= 25);
}
