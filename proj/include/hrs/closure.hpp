#pragma once
// Computability-closure membership as a budgeted three-valued search, plus
// the rule-level criterion (every rhs in the closure of its lhs).

#include <memory>
#include <optional>
#include <vector>

#include "hrs/extensions.hpp"
#include "hrs/horpo.hpp"  // RewriteRule / RewriteSystem
#include "hrs/signature.hpp"
#include "hrs/term.hpp"

namespace hrs {

enum class ClosureRuleTag {
  BaseVar,      // member of the abstraction context V
  BaseArg,      // one of the anchor's arguments
  Subterm,      // rule 1: subterm of basic type of a member
  Precedence,   // rule 2: strictly smaller head symbol
  RecCall,      // rule 3: equivalent head with decreasing argument tuple
  Application,  // rule 4
  Abstraction,  // rule 5
  Reduction,    // rule 6: one beta/subterm step from a member
};

std::string closureRuleName(ClosureRuleTag tag);

struct ClosureProof;
using ClosureProofPtr = std::shared_ptr<ClosureProof>;

struct ClosureProof {
  ClosureRuleTag rule;
  TermPtr candidate;
  int argIndex = -1;     // BaseArg: which anchor argument
  ClosureProofPtr via;   // Subterm/Reduction: proof of the containing/reduced member
  std::string binder;    // Abstraction: the fresh bound variable
  TypePtr binderType;    // Abstraction
  std::vector<ClosureProofPtr> subs;           // Precedence/RecCall/Application args
  std::optional<MulDecomposition> mulWitness;  // RecCall under Mul status
  int lexIndex = -1;                           // RecCall under Lex status
};

enum class SearchStatus { Accepted, Rejected, Unknown };

struct ClosureResult {
  SearchStatus status = SearchStatus::Rejected;
  ClosureProofPtr proof;  // set iff Accepted
};

struct ClosureBudget {
  int depth = 32;      // goal-recursion depth
  int betaSteps = 8;   // steps of beta/subterm reachability inside rule 3
};

// Membership of `candidate` in the closure of `anchor` (which must be
// symbol-headed) with the extra typed variables V.
ClosureResult inClosure(const SignatureConfig& cfg, const Environment& env, const TermPtr& anchor,
                        const Environment& V, const TermPtr& candidate,
                        const ClosureBudget& budget = {});

bool closureCheckProof(const SignatureConfig& cfg, const Environment& env, const TermPtr& anchor,
                       const Environment& V, const ClosureProofPtr& proof,
                       const ClosureBudget& budget = {});

struct SchemaVerdict {
  SearchStatus status;
  ClosureProofPtr proof;
};

std::vector<SchemaVerdict> checkGeneralSchema(const RewriteSystem& system,
                                              const ClosureBudget& budget = {});

}  // namespace hrs
