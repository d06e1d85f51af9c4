#pragma once
// First-order recursive path ordering with proof traces and replay checking.

#include <memory>
#include <optional>
#include <vector>

#include "hrs/extensions.hpp"
#include "hrs/signature.hpp"
#include "hrs/term.hpp"

namespace hrs {

struct RpoProof;
using RpoProofPtr = std::shared_ptr<RpoProof>;

// Case numbering: 1 subterm, 2 precedence, 3 multiset, 4 lexicographic;
// 0 marks the reflexive leaf of the weak relation (s = t syntactically).
struct RpoProof {
  TermPtr lhs, rhs;
  int ruleCase = 0;
  // case 1: index of the chosen argument u in lhs args
  // case 4: index of the first strictly decreasing component
  int witnessIndex = -1;
  std::optional<MulDecomposition> mulWitness;  // case 3
  std::vector<RpoProofPtr> subs;
  // case 2/4: per-component condition-A evidence, aligned with rhs args:
  // aBranch[j] = -1 means s > v_j (proof in aSubs[j]); >= 0 means args[aBranch[j]] >= v_j.
  std::vector<int> aBranch;
  std::vector<RpoProofPtr> aSubs;
};

struct NotFirstOrder : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Throws NotFirstOrder when either term contains Abs/App nodes.
std::optional<RpoProofPtr> rpoGT(const SignatureConfig& cfg, const TermPtr& s, const TermPtr& t);
bool rpoCheckProof(const SignatureConfig& cfg, const RpoProofPtr& proof);

}  // namespace hrs
