#pragma once
// Concrete type ordering over simple types, parameterized by the sort
// precedence, plus the axiom validator (arrow preservation, arrow
// decreasingness, arrow monotonicity, acyclicity of the strict part).

#include <functional>
#include <vector>

#include "hrs/signature.hpp"
#include "hrs/term.hpp"

namespace hrs {

// Structural equality modulo sort-precedence equivalence classes.
bool typeEQ(const SignatureConfig& cfg, const TypePtr& a, const TypePtr& b);
bool typeGT(const SignatureConfig& cfg, const TypePtr& a, const TypePtr& b);
bool typeGE(const SignatureConfig& cfg, const TypePtr& a, const TypePtr& b);

// The codomain-most basic type of t.
TypePtr rootSort(const TypePtr& t);

// Enumerate all types of depth <= depthBound over the declared sorts
// (sort depth 1, arrow depth 1 + max of components; parameterized sorts
// take enumerated arguments within the bound).
std::vector<TypePtr> enumerateTypes(const SignatureConfig& cfg, int depthBound);

// Axiom checks over the enumerated universe; the relation arguments default
// to typeGT/typeEQ and are injectable so deliberately broken orderings can
// be shown to fail.
using TypeRel = std::function<bool(const TypePtr&, const TypePtr&)>;
std::vector<Violation> validateTypeOrder(const SignatureConfig& cfg, int depthBound);
std::vector<Violation> validateTypeOrderWith(const SignatureConfig& cfg, int depthBound,
                                             const TypeRel& gt, const TypeRel& eq);

}  // namespace hrs
