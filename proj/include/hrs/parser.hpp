#pragma once
// Line-oriented surface syntax for rewrite systems (.hrs files): sort,
// sortprec, fun, prec, status, var, and rule declarations, each ended by ';'.

#include <stdexcept>
#include <string>
#include <vector>

#include "hrs/horpo.hpp"
#include "hrs/signature.hpp"

namespace hrs {

struct Diagnostic {
  int line = 0;
  int column = 0;
  std::string message;
  std::string render() const;
};

struct ParseError : std::runtime_error {
  std::vector<Diagnostic> diagnostics;
  explicit ParseError(std::vector<Diagnostic> ds);
};

struct SpecFile {
  SignatureConfig cfg;
  Environment ruleVars;  // declared rule variables, shared by all rules
  std::vector<RewriteRule> rules;
  RewriteSystem system() const { return RewriteSystem{cfg, rules}; }
};

// Parses, resolves names, and typechecks every rule (lhs/rhs types equal,
// lhs symbol-headed, rhs variables contained in the lhs, distinct binders).
// Throws ParseError with located diagnostics; never returns a partial result.
SpecFile parseSpec(const std::string& text);
SpecFile parseSpecFile(const std::string& path);

// Prints a SpecFile back to surface syntax; reparsing yields an
// alpha-equivalent system.
std::string printSpec(const SpecFile& spec);

// Term/type printers in the surface grammar (used by traces and printSpec).
std::string printSurfaceType(const TypePtr& ty);
std::string printSurfaceTerm(const TermPtr& t);

}  // namespace hrs
