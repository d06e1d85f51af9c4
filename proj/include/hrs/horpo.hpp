#pragma once
// Higher-order recursive path ordering on typing judgments (twelve cases),
// with proof traces and an independent replay checker.

#include <memory>
#include <optional>
#include <vector>

#include "hrs/extensions.hpp"
#include "hrs/signature.hpp"
#include "hrs/term.hpp"

namespace hrs {

struct HorpoProof;
using HorpoProofPtr = std::shared_ptr<HorpoProof>;

// ruleCase 1..12 per the definition; 0 marks the reflexive alpha-equality
// leaf of the weak relation.
struct HorpoProof {
  TermPtr lhs, rhs;
  TypePtr lhsType, rhsType;  // the embedded type-comparison evidence
  int ruleCase = 0;
  int witnessIndex = -1;  // case 1: arg index; case 5: 1=fun/2=arg; case 4: lex index
  std::vector<TermPtr> flattening;             // cases 7/9: chosen flattening of rhs
  std::optional<MulDecomposition> mulWitness;  // cases 3/9
  std::vector<HorpoProofPtr> subs;
  std::vector<int> aBranch;  // cases 2/4/7: -1 = s > v_j, else index of u in s args
  std::vector<HorpoProofPtr> aSubs;
  bool vacuousAbstraction = false;  // case 8 fired; its binder condition makes t's body closed
};

struct HorpoVerdict {
  bool accepted = false;
  HorpoProofPtr proof;
};

// Throws TypeError when s or t does not typecheck in env.
std::optional<HorpoProofPtr> horpoGT(const SignatureConfig& cfg, const Environment& env,
                                     const TermPtr& s, const TermPtr& t);
bool horpoCheckProof(const SignatureConfig& cfg, const Environment& env,
                     const HorpoProofPtr& proof);

struct RewriteRule {
  std::string name;
  Environment env;
  TermPtr lhs, rhs;
  TypePtr type;
};

struct RewriteSystem {
  SignatureConfig cfg;
  std::vector<RewriteRule> rules;
};

HorpoVerdict horpoOrientRule(const SignatureConfig& cfg, const RewriteRule& rule);

}  // namespace hrs
