#pragma once
// Exhaustive well-typed term enumeration, reduction exploration, order-axiom
// checking, stability/monotonicity sampling, and the brute-force first-order
// ordering oracle.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hrs/horpo.hpp"  // RewriteRule
#include "hrs/signature.hpp"
#include "hrs/term.hpp"

namespace hrs {

struct EnumSpec {
  SignatureConfig cfg;
  Environment seedVars;
  std::size_t maxSize = 4;
  std::optional<TypePtr> targetType;  // restrict to one type if set
  bool lambdas = false;  // when set, the type universe includes one arrow level
};

// Every well-typed term within the size bound, exactly once up to alpha.
std::vector<TermPtr> enumerateTerms(const EnumSpec& spec);

struct PropertyReport {
  std::string property;
  std::size_t instanceCount = 0;
  std::vector<std::string> counterexamples;
  double elapsedMs = 0.0;
  bool ok() const { return counterexamples.empty(); }
};

using Relation = std::function<bool(const TermPtr&, const TermPtr&)>;

enum class OrderAxiom { Irreflexive, Transitive, Acyclic };

// Exhaustive check of the requested axioms over the enumerated term grid.
PropertyReport checkOrderAxioms(const std::string& relationName, const Relation& rel,
                                const EnumSpec& spec, const std::vector<OrderAxiom>& axioms);

// Sampled check: for ordered pairs found on the grid, substitution instances
// and one-hole contexts must preserve the comparison. Fixed-seed sampling.
PropertyReport checkStabilityMonotonicity(const std::string& relationName, const Relation& rel,
                                          const EnumSpec& spec, std::size_t sampleCount,
                                          unsigned seed = 20240817);

struct ExploreResult {
  bool terminated = false;
  std::size_t maxChainLength = 0;        // longest reduction chain when terminated
  std::vector<TermPtr> witnessChain;     // a chain of stepBound steps otherwise
};

// Exhaustive reduction-tree search from startTerm under beta/eta plus the
// given rules (matched syntactically), up to stepBound consecutive steps.
ExploreResult exploreReduction(const SignatureConfig& cfg, const std::vector<RewriteRule>& rules,
                               const TermPtr& startTerm, std::size_t stepBound,
                               ReduceMode mode = ReduceMode::Beta);

// Direct, memo-free transcription of the first-order ordering; differential
// oracle only. Throws NotFirstOrder on Abs/App nodes.
bool oracleRpo(const SignatureConfig& cfg, const TermPtr& s, const TermPtr& t);

}  // namespace hrs
