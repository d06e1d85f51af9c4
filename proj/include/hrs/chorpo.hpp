#pragma once
// Unified ordering: mutually recursive head ordering (cases 1, 2a-c, 3a-c,
// 4a-c) and context-indexed closure relation (cases 1-6), with accessibility
// (ancestor-goal or positivity) and proof traces.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hrs/extensions.hpp"
#include "hrs/horpo.hpp"  // RewriteRule
#include "hrs/signature.hpp"
#include "hrs/term.hpp"

namespace hrs {

enum class Polarity { Positive, Negative, Both, Absent };
std::string polarityName(Polarity p);

// Occurrence polarity of `sort` within type tau: codomain positions keep
// polarity, domain positions flip it, sort-application arguments count Both.
Polarity polarity(const SignatureConfig& cfg, const std::string& sort, const TypePtr& tau);

struct AccessEvidence {
  int clause = 0;    // 1 = lhs of an enclosing head-ordering goal, 2 = positivity
  int argIndex = -1;
  Polarity pol = Polarity::Absent;  // clause 2 only
};

struct ChorpoProof;
using ChorpoProofPtr = std::shared_ptr<ChorpoProof>;

enum class ChorpoKind { Horpo, Closure };

struct ChorpoProof {
  ChorpoKind kind = ChorpoKind::Horpo;
  std::string caseTag;  // Horpo: "1","2a".."4c","refl"; Closure: "1".."6","refl"
  TermPtr lhs, rhs;
  std::vector<std::pair<std::string, TypePtr>> X;  // Closure goals: context, in order
  TypePtr lhsType, rhsType;  // Horpo cases 2-4: embedded type evidence (absent for case 1)
  std::optional<AccessEvidence> access;        // Closure cases 2 and 4
  std::vector<AccessEvidence> accessAll;       // Closure case 4: per-argument evidence
  int witnessIndex = -1;  // Closure 2: arg index; Horpo 3b: 1/2; 2b/3a lex index; Closure 4 lex
  std::optional<MulDecomposition> mulWitness;  // Horpo 2b/3a, Closure 4 under Mul
  std::vector<ChorpoProofPtr> subs;
  std::vector<int> aBranch;  // Horpo 2a/2b/2c condition A
  std::vector<ChorpoProofPtr> aSubs;
};

struct ChorpoBudget {
  int depth = 32;
};

struct ChorpoOutcome {
  std::optional<ChorpoProofPtr> proof;
  bool hitBudget = false;
};

ChorpoOutcome chorpoGT(const SignatureConfig& cfg, const Environment& env, const TermPtr& s,
                       const TermPtr& t, const ChorpoBudget& budget = {});

bool chorpoCheckProof(const SignatureConfig& cfg, const Environment& env,
                      const ChorpoProofPtr& proof);

// Accepted iff the head ordering orients lhs over rhs.
struct ChorpoRuleVerdict {
  bool accepted = false;
  bool hitBudget = false;
  ChorpoProofPtr proof;
};
ChorpoRuleVerdict chorpoOrientRule(const SignatureConfig& cfg, const RewriteRule& rule,
                                   const ChorpoBudget& budget = {});

}  // namespace hrs
