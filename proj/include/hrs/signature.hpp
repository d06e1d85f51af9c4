#pragma once
// Precedences (over function symbols and over sorts), statuses, and the
// bundled signature configuration used by every ordering engine.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hrs/term.hpp"

namespace hrs {

enum class StatusKind { Mul, Lex };
enum class PrecResult { Greater, Equiv, Incomparable };

// A quasi-order given by strict edges (f > g) and equivalence edges (f = g),
// closed under transitivity / equivalence classes on demand.
class Precedence {
 public:
  void addStrict(const std::string& a, const std::string& b);  // a > b
  void addEquiv(const std::string& a, const std::string& b);   // a = b

  PrecResult compare(const std::string& a, const std::string& b) const;
  bool greater(const std::string& a, const std::string& b) const;
  bool equiv(const std::string& a, const std::string& b) const;
  // Names mentioned by any edge.
  std::set<std::string> mentioned() const;
  const std::vector<std::pair<std::string, std::string>>& strictEdges() const {
    return strict_;
  }
  const std::vector<std::pair<std::string, std::string>>& equivEdges() const { return equiv_; }

 private:
  std::vector<std::pair<std::string, std::string>> strict_;
  std::vector<std::pair<std::string, std::string>> equiv_;

  std::string repr(const std::string& x) const;  // equivalence-class representative
};

struct SortSymbol {
  std::string name;
  int arity = 0;
};

struct SignatureConfig {
  SymbolTable symbols;
  std::map<std::string, SortSymbol> sorts;
  Precedence prec;      // over function symbols
  Precedence sortPrec;  // over sort symbols
  std::map<std::string, StatusKind> status;

  StatusKind statusOf(const std::string& f) const;  // defaults to Mul
};

PrecResult precCompare(const SignatureConfig& cfg, const std::string& f, const std::string& g);

struct Violation {
  std::string kind;
  std::string detail;
};

// Checks: strict part acyclic across equivalence classes; =F-equivalent
// symbols have equal arity and equal status; precedence mentions only
// declared symbols; every declared symbol has a status entry or default.
std::vector<Violation> validatePrecedence(const SignatureConfig& cfg);

}  // namespace hrs
