// Unified ordering: polarity, accessibility, the context-indexed closure
// relation, the flagship higher-order rule, replay, and tamper resistance.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <functional>

#include "doctest.h"
#include "hrs/chorpo.hpp"
#include "hrs/parser.hpp"

using namespace hrs;

namespace {

SpecFile brouwer() { return parseSpecFile(std::string(HRS_DATA_DIR) + "/brouwer.hrs"); }
SpecFile systemT() { return parseSpecFile(std::string(HRS_DATA_DIR) + "/system_t.hrs"); }

TypePtr N() { return mkSort("N"); }
TypePtr Ord() { return mkSort("Ord"); }

// Pre-order walk collecting (kind, caseTag, lhs, rhs, X) tuples.
void goals(const ChorpoProofPtr& p,
           std::vector<std::reference_wrapper<const ChorpoProof>>& out) {
  if (!p) return;
  out.push_back(*p);
  for (auto& s : p->subs) goals(s, out);
  for (auto& s : p->aSubs) goals(s, out);
}

// Matching is up to alpha-renaming of the context variables: both the
// goal's rhs and the expected rhs are abstracted over their contexts.
TermPtr wrapX(const std::vector<std::pair<std::string, TypePtr>>& X, const TermPtr& t) {
  TermPtr out = t;
  for (auto it = X.rbegin(); it != X.rend(); ++it) out = mkAbs(it->first, it->second, out);
  return out;
}

bool hasGoal(const std::vector<std::reference_wrapper<const ChorpoProof>>& gs, ChorpoKind kind,
             const std::string& tag, const TermPtr& lhs, const TermPtr& rhs,
             const std::vector<std::pair<std::string, TypePtr>>& X = {}) {
  for (const ChorpoProof& g : gs)
    if (g.kind == kind && g.caseTag == tag && alphaEq(g.lhs, lhs) &&
        g.X.size() == X.size() && alphaEq(wrapX(g.X, g.rhs), wrapX(X, rhs)))
      return true;
  return false;
}

}  // namespace

TEST_CASE("polarity computation") {
  SpecFile spec = brouwer();
  const SignatureConfig& cfg = spec.cfg;
  CHECK(polarity(cfg, "Ord", Ord()) == Polarity::Positive);
  CHECK(polarity(cfg, "Ord", N()) == Polarity::Absent);
  // Domain occurrences flip.
  CHECK(polarity(cfg, "Ord", mkArrow(Ord(), N())) == Polarity::Negative);
  CHECK(polarity(cfg, "Ord", mkArrow(N(), Ord())) == Polarity::Positive);
  // Both sides: positive and negative combine.
  CHECK(polarity(cfg, "Ord", mkArrow(Ord(), Ord())) == Polarity::Both);
  // Double flip is positive again.
  CHECK(polarity(cfg, "Ord", mkArrow(mkArrow(Ord(), N()), N())) == Polarity::Positive);
}

TEST_CASE("all three shipped rules are oriented and replay") {
  SpecFile spec = brouwer();
  for (auto& rule : spec.rules) {
    auto v = chorpoOrientRule(spec.cfg, rule);
    CAPTURE(rule.name);
    REQUIRE(v.accepted);
    CHECK(chorpoCheckProof(spec.cfg, rule.env, v.proof));
  }
}

TEST_CASE("the flagship rule derivation has the expected goal structure") {
  SpecFile spec = brouwer();
  const RewriteRule& rule = spec.rules[2];
  auto v = chorpoOrientRule(spec.cfg, rule);
  REQUIRE(v.accepted);
  std::vector<std::reference_wrapper<const ChorpoProof>> gs;
  goals(v.proof, gs);

  Environment env = rule.env;
  TermPtr lhs = rule.lhs;                 // rec(lim(F), U, V, W)
  TermPtr rhs = rule.rhs;                 // W F (\n. rec(F n, U, V, W))
  TermPtr limF = mkFun("lim", {mkVar("F")});

  CHECK(hasGoal(gs, ChorpoKind::Horpo, "1", lhs, rhs));
  CHECK(hasGoal(gs, ChorpoKind::Closure, "5", lhs, rhs));
  CHECK(hasGoal(gs, ChorpoKind::Closure, "2", lhs, mkVar("W")));
  CHECK(hasGoal(gs, ChorpoKind::Closure, "2", lhs, mkVar("F")));
  TermPtr innerRec =
      mkFun("rec", {mkApp(mkVar("F"), mkVar("n")), mkVar("U"), mkVar("V"), mkVar("W")});
  TermPtr lam = mkAbs("n", N(), innerRec);
  CHECK(hasGoal(gs, ChorpoKind::Closure, "6", lhs, lam));
  CHECK(hasGoal(gs, ChorpoKind::Closure, "4", lhs, innerRec, {{"n", N()}}));
  CHECK(hasGoal(gs, ChorpoKind::Closure, "5", lhs, mkApp(mkVar("F"), mkVar("n")), {{"n", N()}}));
  CHECK(hasGoal(gs, ChorpoKind::Closure, "1", lhs, mkVar("n"), {{"n", N()}}));
  CHECK(hasGoal(gs, ChorpoKind::Closure, "2", lhs, mkVar("U"), {{"n", N()}}));
  // The lexicographic decrease abstracts the context out of the argument.
  TermPtr etaF = mkAbs("n", N(), mkApp(mkVar("F"), mkVar("n")));
  CHECK(hasGoal(gs, ChorpoKind::Horpo, "1", limF, etaF));
  CHECK(hasGoal(gs, ChorpoKind::Closure, "6", limF, etaF));
  CHECK(hasGoal(gs, ChorpoKind::Closure, "5", limF, mkApp(mkVar("F"), mkVar("n")), {{"n", N()}}));
  CHECK(hasGoal(gs, ChorpoKind::Closure, "1", limF, mkVar("n"), {{"n", N()}}));
}

TEST_CASE("accessibility clause mix: ancestor anchors and positivity") {
  SpecFile spec = brouwer();
  const RewriteRule& rule = spec.rules[2];
  auto v = chorpoOrientRule(spec.cfg, rule);
  REQUIRE(v.accepted);
  std::vector<std::reference_wrapper<const ChorpoProof>> gs;
  goals(v.proof, gs);
  // lim's argument has Ord negative in N -> Ord, so F is accessible under lim
  // only because lim(F) is the lhs of an enclosing ordering goal (clause 1).
  bool sawClause1 = false, sawClause2 = false;
  for (const ChorpoProof& g : gs) {
    if (g.access) {
      if (g.access->clause == 1) sawClause1 = true;
      if (g.access->clause == 2) sawClause2 = true;
    }
  }
  CHECK(sawClause1);
  CHECK(sawClause2);
  CHECK(polarity(spec.cfg, "Ord", mkArrow(N(), Ord())) == Polarity::Positive);
  CHECK(polarity(spec.cfg, "Ord", mkArrow(mkArrow(N(), Ord()), Ord())) == Polarity::Both);
}

TEST_CASE("beta and eta containment carry the dedicated case tags") {
  SpecFile spec = systemT();
  Environment env{{"U", N()}, {"F", mkArrow(N(), N())}};
  TermPtr beta = mkApp(mkAbs("x", N(), mkFun("s", {mkVar("x")})), mkVar("U"));
  auto b = chorpoGT(spec.cfg, env, beta, mkFun("s", {mkVar("U")}));
  REQUIRE(b.proof.has_value());
  CHECK((*b.proof)->caseTag == "3c");
  CHECK(chorpoCheckProof(spec.cfg, env, *b.proof));

  TermPtr eta = mkAbs("x", N(), mkApp(mkVar("F"), mkVar("x")));
  auto e = chorpoGT(spec.cfg, env, eta, mkVar("F"));
  REQUIRE(e.proof.has_value());
  CHECK((*e.proof)->caseTag == "4c");
  CHECK(chorpoCheckProof(spec.cfg, env, *e.proof));
}

TEST_CASE("free-variable containment is enforced at every ordering goal") {
  SpecFile spec = systemT();
  Environment env{{"U", N()}, {"X", N()}};
  CHECK(!chorpoGT(spec.cfg, env, mkFun("s", {mkVar("U")}), mkVar("X")).proof.has_value());
}

TEST_CASE("replay rejects tampered proofs") {
  SpecFile spec = brouwer();
  const RewriteRule& rule = spec.rules[2];
  auto v = chorpoOrientRule(spec.cfg, rule);
  REQUIRE(v.accepted);

  SUBCASE("retagging the root fails") {
    v.proof->caseTag = "2a";
    CHECK(!chorpoCheckProof(spec.cfg, rule.env, v.proof));
  }
  SUBCASE("replacing the rhs fails") {
    v.proof->rhs = mkVar("U");
    CHECK(!chorpoCheckProof(spec.cfg, rule.env, v.proof));
  }
  SUBCASE("swapping the closure subgoal's context fails") {
    REQUIRE(!v.proof->subs.empty());
    v.proof->subs[0]->X.push_back({"ghost", N()});
    CHECK(!chorpoCheckProof(spec.cfg, rule.env, v.proof));
  }
  SUBCASE("forging accessibility evidence fails") {
    // Find a closure case-2 node and flip its argument index.
    std::function<bool(const ChorpoProofPtr&)> flip = [&](const ChorpoProofPtr& p) -> bool {
      if (!p) return false;
      if (p->kind == ChorpoKind::Closure && p->caseTag == "2" && p->access) {
        p->witnessIndex = (p->witnessIndex + 1) % 4;
        p->access->argIndex = p->witnessIndex;
        return true;
      }
      for (auto& s : p->subs)
        if (flip(s)) return true;
      for (auto& s : p->aSubs)
        if (flip(s)) return true;
      return false;
    };
    REQUIRE(flip(v.proof));
    CHECK(!chorpoCheckProof(spec.cfg, rule.env, v.proof));
  }
}

TEST_CASE("budget exhaustion is reported") {
  SpecFile spec = brouwer();
  ChorpoBudget tiny;
  tiny.depth = 2;
  auto v = chorpoOrientRule(spec.cfg, spec.rules[2], tiny);
  CHECK(!v.accepted);
  CHECK(v.hitBudget);
}
