#pragma once
// Simply-typed higher-order terms: types, terms, environments, substitution,
// alpha-equivalence, beta/eta reduction, positions.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hrs {

// ---------------------------------------------------------------- Types

struct Type;
using TypePtr = std::shared_ptr<const Type>;

struct Type {
  bool arrow = false;
  // basic type (sort application)
  std::string sort;
  std::vector<TypePtr> sortArgs;
  // arrow type
  TypePtr dom, cod;
};

TypePtr mkSort(std::string name, std::vector<TypePtr> args = {});
TypePtr mkArrow(TypePtr dom, TypePtr cod);
// Right-nested arrow a1 -> a2 -> ... -> res.
TypePtr mkArrows(const std::vector<TypePtr>& doms, TypePtr res);

bool typeStructEq(const TypePtr& a, const TypePtr& b);  // syntactic equality
std::string showType(const TypePtr& t);
int typeDepth(const TypePtr& t);  // sort = 1, arrow = 1 + max(dom, cod)

// ---------------------------------------------------------------- Terms

struct Term;
using TermPtr = std::shared_ptr<const Term>;

enum class TermKind { Var, Abs, App, Fun };

struct Term {
  TermKind kind;
  std::string name;           // Var name / Abs binder / Fun symbol
  TypePtr varType;            // Abs binder type
  TermPtr body;               // Abs
  TermPtr fun, arg;           // App
  std::vector<TermPtr> args;  // Fun
};

TermPtr mkVar(std::string name);
TermPtr mkAbs(std::string x, TypePtr ty, TermPtr body);
TermPtr mkApp(TermPtr fun, TermPtr arg);
// Left-nested @(f, a1, ..., an).
TermPtr mkApps(TermPtr fun, const std::vector<TermPtr>& args);
TermPtr mkFun(std::string symbol, std::vector<TermPtr> args);

std::size_t termSize(const TermPtr& t);  // node count, binders included
std::string showTerm(const TermPtr& t);
// Canonical form: bound variables renamed to #0, #1, ... in traversal order;
// equal strings iff alpha-equivalent (assuming annotated binder types equal).
std::string alphaKey(const TermPtr& t);

std::set<std::string> freeVars(const TermPtr& t);
std::set<std::string> boundVars(const TermPtr& t);
bool alphaEq(const TermPtr& s, const TermPtr& t);

// Capture-avoiding simultaneous substitution of free variables.
using Substitution = std::map<std::string, TermPtr>;
TermPtr substitute(const TermPtr& t, const Substitution& subst);
// Fresh variable name not occurring (free or bound) in any of the terms.
std::string freshName(const std::string& base, const std::vector<TermPtr>& avoid);

// ---------------------------------------------------------------- Positions

using Position = std::vector<int>;  // 1-based child indexes; empty = root
TermPtr subtermAt(const TermPtr& t, const Position& p);           // throws std::out_of_range
TermPtr replaceAt(const TermPtr& t, const Position& p, const TermPtr& u);
// All strict subterms (every proper-subtree occurrence, deduplicated up to alpha).
std::vector<TermPtr> strictSubterms(const TermPtr& t);
// true iff s |> t (strict subterm modulo alpha)
bool strictSubterm(const TermPtr& s, const TermPtr& t);

// ---------------------------------------------------------------- Flattening

// All partial left-flattenings of nested App nodes, longest spine first:
// @(@(@(u,v1),v2),v3) yields (u,v1,v2,v3), (@(u,v1),v2,v3), (@(@(u,v1),v2),v3).
// Each result has length >= 2. Empty if t is not an App.
std::vector<std::vector<TermPtr>> leftFlattenings(const TermPtr& t);

// ---------------------------------------------------------------- Typing

using Environment = std::map<std::string, TypePtr>;

struct FunctionSymbol {
  std::string name;
  std::vector<TypePtr> argTypes;
  TypePtr resultType;
};

struct TypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class SymbolTable {
 public:
  void declare(const FunctionSymbol& f);
  const FunctionSymbol* find(const std::string& name) const;  // null if absent
  const FunctionSymbol& get(const std::string& name) const;   // throws
  std::vector<std::string> names() const;

 private:
  std::map<std::string, FunctionSymbol> symbols_;
};

// The four typing rules (variable lookup, uncurried function application,
// abstraction, application). Throws TypeError with a located message.
TypePtr typecheck(const SymbolTable& sig, const Environment& env, const TermPtr& t);
// nullopt instead of throwing.
std::optional<TypePtr> typeOf(const SymbolTable& sig, const Environment& env, const TermPtr& t);

// ---------------------------------------------------------------- Reduction

enum class ReduceMode { Beta, Eta, BetaEta };
// All one-step reducts with their redex positions.
std::vector<std::pair<Position, TermPtr>> reduceStep(const TermPtr& t, ReduceMode mode);

}  // namespace hrs
