#include "hrs/signature.hpp"

#include <functional>

namespace hrs {

void Precedence::addStrict(const std::string& a, const std::string& b) {
  strict_.emplace_back(a, b);
}

void Precedence::addEquiv(const std::string& a, const std::string& b) {
  equiv_.emplace_back(a, b);
}

std::string Precedence::repr(const std::string& x) const {
  // Union-find over the (small) equivalence edge list, recomputed per query.
  std::map<std::string, std::string> parent;
  std::function<std::string(const std::string&)> find = [&](const std::string& v) {
    auto it = parent.find(v);
    if (it == parent.end() || it->second == v) return v;
    std::string r = find(it->second);
    parent[v] = r;
    return r;
  };
  for (auto& [a, b] : equiv_) {
    parent.emplace(a, a);
    parent.emplace(b, b);
    std::string ra = find(a), rb = find(b);
    if (ra != rb) parent[ra] = rb;
  }
  return find(x);
}

bool Precedence::equiv(const std::string& a, const std::string& b) const {
  return a == b || repr(a) == repr(b);
}

bool Precedence::greater(const std::string& a, const std::string& b) const {
  // BFS over strict edges lifted to equivalence classes.
  if (equiv(a, b)) return false;
  std::set<std::string> visited{repr(a)};
  std::vector<std::string> frontier{repr(a)};
  while (!frontier.empty()) {
    std::vector<std::string> next;
    for (auto& cls : frontier) {
      for (auto& [x, y] : strict_) {
        if (repr(x) != cls) continue;
        std::string ry = repr(y);
        if (ry == repr(b)) return true;
        if (visited.insert(ry).second) next.push_back(ry);
      }
    }
    frontier = std::move(next);
  }
  return false;
}

PrecResult Precedence::compare(const std::string& a, const std::string& b) const {
  if (equiv(a, b)) return PrecResult::Equiv;
  if (greater(a, b)) return PrecResult::Greater;
  return PrecResult::Incomparable;
}

std::set<std::string> Precedence::mentioned() const {
  std::set<std::string> out;
  for (auto& [a, b] : strict_) {
    out.insert(a);
    out.insert(b);
  }
  for (auto& [a, b] : equiv_) {
    out.insert(a);
    out.insert(b);
  }
  return out;
}

StatusKind SignatureConfig::statusOf(const std::string& f) const {
  auto it = status.find(f);
  return it == status.end() ? StatusKind::Mul : it->second;
}

PrecResult precCompare(const SignatureConfig& cfg, const std::string& f, const std::string& g) {
  if (!cfg.symbols.find(f)) throw TypeError("undeclared symbol in precedence query: " + f);
  if (!cfg.symbols.find(g)) throw TypeError("undeclared symbol in precedence query: " + g);
  return cfg.prec.compare(f, g);
}

namespace {
// Cycle check: every class-level cycle contains a strict edge from whose
// head the tail is weakly reachable again.
void checkAcyclic(const Precedence& p, const std::string& what, std::vector<Violation>& out) {
  for (auto& [x, y] : p.strictEdges()) {
    if (p.equiv(y, x))
      out.push_back({what + "-cycle", x + " > " + y + " but they are equivalent"});
    else if (p.greater(y, x))
      out.push_back({what + "-cycle", x + " > " + y + " and " + y + " > " + x});
  }
}
}  // namespace

std::vector<Violation> validatePrecedence(const SignatureConfig& cfg) {
  std::vector<Violation> out;
  checkAcyclic(cfg.prec, "precedence", out);
  checkAcyclic(cfg.sortPrec, "sort-precedence", out);
  for (auto& n : cfg.prec.mentioned())
    if (!cfg.symbols.find(n))
      out.push_back({"undeclared-symbol", "precedence mentions undeclared symbol " + n});
  for (auto& n : cfg.sortPrec.mentioned())
    if (!cfg.sorts.count(n))
      out.push_back({"undeclared-sort", "sort precedence mentions undeclared sort " + n});
  // Equal arity and equal status within an equivalence class.
  auto names = cfg.symbols.names();
  for (auto& f : names) {
    for (auto& g : names) {
      if (f >= g || !cfg.prec.equiv(f, g)) continue;
      if (cfg.symbols.get(f).argTypes.size() != cfg.symbols.get(g).argTypes.size())
        out.push_back({"equiv-arity", f + " = " + g + " but arities differ"});
      if (cfg.statusOf(f) != cfg.statusOf(g))
        out.push_back({"equiv-status", f + " = " + g + " but statuses differ"});
    }
  }
  return out;
}

}  // namespace hrs
