// Core term layer: types, alpha-equivalence, substitution, typing, positions,
// flattening, and one-step reduction.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "hrs/term.hpp"

using namespace hrs;

namespace {

TypePtr N() { return mkSort("N"); }
TypePtr NN() { return mkArrow(N(), N()); }

SymbolTable systemT() {
  SymbolTable sig;
  sig.declare({"0", {}, N()});
  sig.declare({"s", {N()}, N()});
  sig.declare({"rec", {N(), N(), mkArrows({N(), N()}, N())}, N()});
  return sig;
}

}  // namespace

TEST_CASE("type construction and equality") {
  CHECK(typeStructEq(N(), N()));
  CHECK(!typeStructEq(N(), NN()));
  CHECK(typeStructEq(mkArrows({N(), N()}, N()), mkArrow(N(), mkArrow(N(), N()))));
  CHECK(showType(mkArrows({N(), N()}, N())) == "N -> N -> N");
  CHECK(showType(mkArrow(NN(), N())) == "(N -> N) -> N");
  CHECK(typeDepth(N()) == 1);
  CHECK(typeDepth(NN()) == 2);
  CHECK(typeDepth(mkArrow(NN(), N())) == 3);
}

TEST_CASE("term size counts binders") {
  CHECK(termSize(mkVar("x")) == 1);
  CHECK(termSize(mkFun("s", {mkFun("0", {})})) == 2);
  CHECK(termSize(mkAbs("x", N(), mkVar("x"))) == 3);
  CHECK(termSize(mkApp(mkVar("f"), mkVar("x"))) == 3);
}

TEST_CASE("alpha equivalence via canonical keys") {
  TermPtr a = mkAbs("x", N(), mkVar("x"));
  TermPtr b = mkAbs("y", N(), mkVar("y"));
  CHECK(alphaEq(a, b));
  CHECK(alphaKey(a) == alphaKey(b));
  // Different binder types are not alpha-equivalent.
  CHECK(!alphaEq(a, mkAbs("y", NN(), mkVar("y"))));
  // Free variables must match by name.
  CHECK(!alphaEq(mkVar("x"), mkVar("y")));
  // Nested binders get distinct canonical names.
  TermPtr c = mkAbs("x", N(), mkAbs("y", N(), mkApp(mkVar("x"), mkVar("y"))));
  TermPtr d = mkAbs("y", N(), mkAbs("x", N(), mkApp(mkVar("y"), mkVar("x"))));
  CHECK(alphaEq(c, d));
  TermPtr e = mkAbs("x", N(), mkAbs("y", N(), mkApp(mkVar("y"), mkVar("x"))));
  CHECK(!alphaEq(c, e));
}

TEST_CASE("free and bound variables") {
  TermPtr t = mkAbs("x", N(), mkApp(mkVar("x"), mkVar("y")));
  CHECK(freeVars(t) == std::set<std::string>{"y"});
  CHECK(boundVars(t) == std::set<std::string>{"x"});
}

TEST_CASE("substitution avoids capture") {
  // (\y:N. x)[x := y] must rename the binder, not capture.
  TermPtr t = mkAbs("y", N(), mkVar("x"));
  TermPtr r = substitute(t, {{"x", mkVar("y")}});
  REQUIRE(r->kind == TermKind::Abs);
  CHECK(r->name != "y");
  CHECK(r->body->kind == TermKind::Var);
  CHECK(r->body->name == "y");
  // Shadowed variables are untouched.
  TermPtr u = mkAbs("x", N(), mkVar("x"));
  CHECK(alphaEq(substitute(u, {{"x", mkFun("0", {})}}), u));
  // Simultaneous substitution.
  TermPtr v = mkApp(mkVar("a"), mkVar("b"));
  TermPtr w = substitute(v, {{"a", mkVar("b")}, {"b", mkVar("a")}});
  CHECK(w->fun->name == "b");
  CHECK(w->arg->name == "a");
}

TEST_CASE("typechecking the four rules") {
  SymbolTable sig = systemT();
  Environment env{{"X", N()}, {"V", mkArrows({N(), N()}, N())}};
  CHECK(typeStructEq(typecheck(sig, env, mkVar("X")), N()));
  CHECK(typeStructEq(typecheck(sig, env, mkFun("s", {mkVar("X")})), N()));
  CHECK(typeStructEq(typecheck(sig, env, mkAbs("z", N(), mkVar("z"))), NN()));
  TermPtr app = mkApps(mkVar("V"), {mkVar("X"), mkVar("X")});
  CHECK(typeStructEq(typecheck(sig, env, app), N()));
  // Errors: unbound variable, arity mismatch, argument type mismatch,
  // applying a non-arrow.
  CHECK_THROWS_AS(typecheck(sig, env, mkVar("nope")), TypeError);
  CHECK_THROWS_AS(typecheck(sig, env, mkFun("s", {})), TypeError);
  CHECK_THROWS_AS(typecheck(sig, env, mkFun("s", {mkAbs("z", N(), mkVar("z"))})), TypeError);
  CHECK_THROWS_AS(typecheck(sig, env, mkApp(mkVar("X"), mkVar("X"))), TypeError);
  CHECK(!typeOf(sig, env, mkApp(mkVar("X"), mkVar("X"))).has_value());
}

TEST_CASE("positions and subterm replacement") {
  SymbolTable sig = systemT();
  TermPtr t = mkFun("rec", {mkFun("s", {mkVar("X")}), mkVar("U"), mkVar("V")});
  CHECK(alphaEq(subtermAt(t, {1, 1}), mkVar("X")));
  TermPtr r = replaceAt(t, {1, 1}, mkFun("0", {}));
  CHECK(alphaEq(subtermAt(r, {1}), mkFun("s", {mkFun("0", {})})));
  CHECK_THROWS_AS(subtermAt(t, {4}), std::out_of_range);

  TermPtr ss = mkFun("s", {mkFun("s", {mkVar("X")})});
  CHECK(strictSubterm(ss, mkVar("X")));
  CHECK(!strictSubterm(ss, ss));
  auto subs = strictSubterms(ss);
  CHECK(subs.size() == 2);  // s(X) and X
}

TEST_CASE("left flattenings, longest spine first") {
  TermPtr u = mkVar("u"), v1 = mkVar("v1"), v2 = mkVar("v2"), v3 = mkVar("v3");
  TermPtr t = mkApps(u, {v1, v2, v3});
  auto fl = leftFlattenings(t);
  REQUIRE(fl.size() == 3);
  CHECK(fl[0].size() == 4);  // (u, v1, v2, v3)
  CHECK(alphaEq(fl[0][0], u));
  CHECK(fl[1].size() == 3);  // (u v1, v2, v3)
  CHECK(alphaEq(fl[1][0], mkApp(u, v1)));
  CHECK(fl[2].size() == 2);  // ((u v1) v2, v3)
  CHECK(leftFlattenings(mkVar("x")).empty());
}

TEST_CASE("one-step beta and eta reduction") {
  TermPtr id = mkAbs("x", N(), mkVar("x"));
  TermPtr redex = mkApp(id, mkFun("0", {}));
  auto steps = reduceStep(redex, ReduceMode::Beta);
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].first.empty());
  CHECK(alphaEq(steps[0].second, mkFun("0", {})));

  // Eta: \x. f x -> f when x not free in f.
  TermPtr eta = mkAbs("x", N(), mkApp(mkVar("f"), mkVar("x")));
  auto esteps = reduceStep(eta, ReduceMode::Eta);
  REQUIRE(esteps.size() == 1);
  CHECK(alphaEq(esteps[0].second, mkVar("f")));
  // Not an eta-redex when the variable occurs in the function part.
  TermPtr notEta = mkAbs("x", N(), mkApp(mkApp(mkVar("f"), mkVar("x")), mkVar("x")));
  CHECK(reduceStep(notEta, ReduceMode::Eta).empty());

  // Inner redex under a constructor, found at the right position.
  TermPtr inner = mkFun("s", {redex});
  auto isteps = reduceStep(inner, ReduceMode::BetaEta);
  REQUIRE(isteps.size() == 1);
  CHECK(isteps[0].first == Position{1});
  CHECK(alphaEq(isteps[0].second, mkFun("s", {mkFun("0", {})})));
}

TEST_CASE("beta substitution in reduction avoids capture") {
  // (\x:N. \y:N. x) y  ->  \y':N. y   (the bound y must be renamed)
  TermPtr f = mkAbs("x", N(), mkAbs("y", N(), mkVar("x")));
  TermPtr t = mkApp(f, mkVar("y"));
  auto steps = reduceStep(t, ReduceMode::Beta);
  REQUIRE(steps.size() == 1);
  const TermPtr& r = steps[0].second;
  REQUIRE(r->kind == TermKind::Abs);
  CHECK(freeVars(r) == std::set<std::string>{"y"});
  CHECK(r->body->name == "y");
  CHECK(r->name != "y");
}
