#include "hrs/term.hpp"

#include <algorithm>
#include <sstream>

namespace hrs {

// ---------------------------------------------------------------- Types

TypePtr mkSort(std::string name, std::vector<TypePtr> args) {
  auto t = std::make_shared<Type>();
  t->arrow = false;
  t->sort = std::move(name);
  t->sortArgs = std::move(args);
  return t;
}

TypePtr mkArrow(TypePtr dom, TypePtr cod) {
  auto t = std::make_shared<Type>();
  t->arrow = true;
  t->dom = std::move(dom);
  t->cod = std::move(cod);
  return t;
}

TypePtr mkArrows(const std::vector<TypePtr>& doms, TypePtr res) {
  TypePtr t = std::move(res);
  for (auto it = doms.rbegin(); it != doms.rend(); ++it) t = mkArrow(*it, t);
  return t;
}

bool typeStructEq(const TypePtr& a, const TypePtr& b) {
  if (a->arrow != b->arrow) return false;
  if (a->arrow) return typeStructEq(a->dom, b->dom) && typeStructEq(a->cod, b->cod);
  if (a->sort != b->sort || a->sortArgs.size() != b->sortArgs.size()) return false;
  for (std::size_t i = 0; i < a->sortArgs.size(); ++i)
    if (!typeStructEq(a->sortArgs[i], b->sortArgs[i])) return false;
  return true;
}

std::string showType(const TypePtr& t) {
  if (!t->arrow) {
    std::string s = t->sort;
    if (!t->sortArgs.empty()) {
      s += "(";
      for (std::size_t i = 0; i < t->sortArgs.size(); ++i) {
        if (i) s += ",";
        s += showType(t->sortArgs[i]);
      }
      s += ")";
    }
    return s;
  }
  std::string lhs = showType(t->dom);
  if (t->dom->arrow) lhs = "(" + lhs + ")";
  return lhs + " -> " + showType(t->cod);
}

int typeDepth(const TypePtr& t) {
  if (!t->arrow) {
    int d = 1;
    for (auto& a : t->sortArgs) d = std::max(d, 1 + typeDepth(a));
    return d;
  }
  return 1 + std::max(typeDepth(t->dom), typeDepth(t->cod));
}

// ---------------------------------------------------------------- Terms

TermPtr mkVar(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Var;
  t->name = std::move(name);
  return t;
}

TermPtr mkAbs(std::string x, TypePtr ty, TermPtr body) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Abs;
  t->name = std::move(x);
  t->varType = std::move(ty);
  t->body = std::move(body);
  return t;
}

TermPtr mkApp(TermPtr fun, TermPtr arg) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::App;
  t->fun = std::move(fun);
  t->arg = std::move(arg);
  return t;
}

TermPtr mkApps(TermPtr fun, const std::vector<TermPtr>& args) {
  TermPtr t = std::move(fun);
  for (auto& a : args) t = mkApp(t, a);
  return t;
}

TermPtr mkFun(std::string symbol, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Fun;
  t->name = std::move(symbol);
  t->args = std::move(args);
  return t;
}

std::size_t termSize(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var: return 1;
    case TermKind::Abs: return 2 + termSize(t->body);  // the binder counts as a node
    case TermKind::App: return 1 + termSize(t->fun) + termSize(t->arg);
    case TermKind::Fun: {
      std::size_t n = 1;
      for (auto& a : t->args) n += termSize(a);
      return n;
    }
  }
  return 0;
}

std::string showTerm(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var: return t->name;
    case TermKind::Abs:
      return "\\" + t->name + ":" + showType(t->varType) + ". " + showTerm(t->body);
    case TermKind::App: {
      std::string f = showTerm(t->fun);
      if (t->fun->kind == TermKind::Abs) f = "(" + f + ")";
      std::string a = showTerm(t->arg);
      if (t->arg->kind == TermKind::App || t->arg->kind == TermKind::Abs) a = "(" + a + ")";
      return f + " " + a;
    }
    case TermKind::Fun: {
      if (t->args.empty()) return t->name;
      std::string s = t->name + "(";
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i) s += ", ";
        s += showTerm(t->args[i]);
      }
      return s + ")";
    }
  }
  return "?";
}

namespace {

void alphaKeyRec(const TermPtr& t, std::map<std::string, std::string>& bound, int& counter,
                 std::string& out) {
  switch (t->kind) {
    case TermKind::Var: {
      auto it = bound.find(t->name);
      out += "v:";
      out += (it == bound.end()) ? t->name : it->second;
      out += ";";
      break;
    }
    case TermKind::Abs: {
      std::string fresh = "#" + std::to_string(counter++);
      out += "L" + fresh + ":" + showType(t->varType) + ".";
      auto saved = bound.find(t->name) == bound.end()
                       ? std::optional<std::string>{}
                       : std::optional<std::string>{bound[t->name]};
      bound[t->name] = fresh;
      alphaKeyRec(t->body, bound, counter, out);
      if (saved)
        bound[t->name] = *saved;
      else
        bound.erase(t->name);
      break;
    }
    case TermKind::App:
      out += "@(";
      alphaKeyRec(t->fun, bound, counter, out);
      out += ",";
      alphaKeyRec(t->arg, bound, counter, out);
      out += ")";
      break;
    case TermKind::Fun:
      out += "f:" + t->name + "(";
      for (auto& a : t->args) {
        alphaKeyRec(a, bound, counter, out);
        out += ",";
      }
      out += ")";
      break;
  }
}

}  // namespace

std::string alphaKey(const TermPtr& t) {
  std::string out;
  std::map<std::string, std::string> bound;
  int counter = 0;
  alphaKeyRec(t, bound, counter, out);
  return out;
}

namespace {
void collectVars(const TermPtr& t, std::set<std::string>& bound, std::set<std::string>& freeOut,
                 std::set<std::string>& boundOut) {
  switch (t->kind) {
    case TermKind::Var:
      if (!bound.count(t->name)) freeOut.insert(t->name);
      break;
    case TermKind::Abs: {
      boundOut.insert(t->name);
      bool wasBound = bound.count(t->name) > 0;
      bound.insert(t->name);
      collectVars(t->body, bound, freeOut, boundOut);
      if (!wasBound) bound.erase(t->name);
      break;
    }
    case TermKind::App:
      collectVars(t->fun, bound, freeOut, boundOut);
      collectVars(t->arg, bound, freeOut, boundOut);
      break;
    case TermKind::Fun:
      for (auto& a : t->args) collectVars(a, bound, freeOut, boundOut);
      break;
  }
}
}  // namespace

std::set<std::string> freeVars(const TermPtr& t) {
  std::set<std::string> b, f, bo;
  collectVars(t, b, f, bo);
  return f;
}

std::set<std::string> boundVars(const TermPtr& t) {
  std::set<std::string> b, f, bo;
  collectVars(t, b, f, bo);
  return bo;
}

bool alphaEq(const TermPtr& s, const TermPtr& t) { return alphaKey(s) == alphaKey(t); }

std::string freshName(const std::string& base, const std::vector<TermPtr>& avoid) {
  std::set<std::string> used;
  for (auto& t : avoid) {
    auto f = freeVars(t);
    auto b = boundVars(t);
    used.insert(f.begin(), f.end());
    used.insert(b.begin(), b.end());
  }
  if (!used.count(base)) return base;
  for (int i = 0;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

TermPtr substitute(const TermPtr& t, const Substitution& subst) {
  if (subst.empty()) return t;
  switch (t->kind) {
    case TermKind::Var: {
      auto it = subst.find(t->name);
      return it == subst.end() ? t : it->second;
    }
    case TermKind::App:
      return mkApp(substitute(t->fun, subst), substitute(t->arg, subst));
    case TermKind::Fun: {
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      for (auto& a : t->args) args.push_back(substitute(a, subst));
      return mkFun(t->name, std::move(args));
    }
    case TermKind::Abs: {
      Substitution inner = subst;
      inner.erase(t->name);
      if (inner.empty()) return t;
      // Rename the binder when a replacement would capture it.
      bool capture = false;
      auto bodyFree = freeVars(t->body);
      for (auto& [v, rep] : inner) {
        if (!bodyFree.count(v)) continue;
        if (freeVars(rep).count(t->name)) {
          capture = true;
          break;
        }
      }
      if (!capture) return mkAbs(t->name, t->varType, substitute(t->body, inner));
      std::vector<TermPtr> avoid = {t->body};
      for (auto& [v, rep] : inner) avoid.push_back(rep);
      std::string z = freshName(t->name, avoid);
      inner[t->name] = mkVar(z);
      return mkAbs(z, t->varType, substitute(t->body, inner));
    }
  }
  return t;
}

// ---------------------------------------------------------------- Positions

TermPtr subtermAt(const TermPtr& t, const Position& p) {
  TermPtr cur = t;
  for (int i : p) {
    switch (cur->kind) {
      case TermKind::Var: throw std::out_of_range("position under a variable");
      case TermKind::Abs:
        if (i != 1) throw std::out_of_range("abstraction has a single child");
        cur = cur->body;
        break;
      case TermKind::App:
        if (i == 1)
          cur = cur->fun;
        else if (i == 2)
          cur = cur->arg;
        else
          throw std::out_of_range("application has two children");
        break;
      case TermKind::Fun:
        if (i < 1 || i > static_cast<int>(cur->args.size()))
          throw std::out_of_range("argument index out of range");
        cur = cur->args[i - 1];
        break;
    }
  }
  return cur;
}

TermPtr replaceAt(const TermPtr& t, const Position& p, const TermPtr& u) {
  if (p.empty()) return u;
  Position rest(p.begin() + 1, p.end());
  int i = p.front();
  switch (t->kind) {
    case TermKind::Var: throw std::out_of_range("position under a variable");
    case TermKind::Abs:
      if (i != 1) throw std::out_of_range("abstraction has a single child");
      return mkAbs(t->name, t->varType, replaceAt(t->body, rest, u));
    case TermKind::App:
      if (i == 1) return mkApp(replaceAt(t->fun, rest, u), t->arg);
      if (i == 2) return mkApp(t->fun, replaceAt(t->arg, rest, u));
      throw std::out_of_range("application has two children");
    case TermKind::Fun: {
      if (i < 1 || i > static_cast<int>(t->args.size()))
        throw std::out_of_range("argument index out of range");
      std::vector<TermPtr> args = t->args;
      args[i - 1] = replaceAt(args[i - 1], rest, u);
      return mkFun(t->name, std::move(args));
    }
  }
  throw std::out_of_range("unreachable");
}

namespace {
void subtermsRec(const TermPtr& t, std::vector<TermPtr>& out) {
  out.push_back(t);
  switch (t->kind) {
    case TermKind::Var: break;
    case TermKind::Abs: subtermsRec(t->body, out); break;
    case TermKind::App:
      subtermsRec(t->fun, out);
      subtermsRec(t->arg, out);
      break;
    case TermKind::Fun:
      for (auto& a : t->args) subtermsRec(a, out);
      break;
  }
}
}  // namespace

std::vector<TermPtr> strictSubterms(const TermPtr& t) {
  std::vector<TermPtr> all;
  subtermsRec(t, all);
  std::vector<TermPtr> out;
  std::set<std::string> seen;
  for (std::size_t i = 1; i < all.size(); ++i)
    if (seen.insert(alphaKey(all[i])).second) out.push_back(all[i]);
  return out;
}

bool strictSubterm(const TermPtr& s, const TermPtr& t) {
  for (auto& u : strictSubterms(s))
    if (alphaEq(u, t)) return true;
  return false;
}

std::vector<std::vector<TermPtr>> leftFlattenings(const TermPtr& t) {
  if (t->kind != TermKind::App) return {};
  // Full spine.
  std::vector<TermPtr> spine;
  TermPtr cur = t;
  while (cur->kind == TermKind::App) {
    spine.push_back(cur->arg);
    cur = cur->fun;
  }
  spine.push_back(cur);
  std::reverse(spine.begin(), spine.end());  // head, v1, ..., vn
  std::vector<std::vector<TermPtr>> out;
  // Longest first: (head, v1..vn), then (@(head,v1), v2..vn), ...
  for (std::size_t keep = 0; keep + 2 <= spine.size(); ++keep) {
    std::vector<TermPtr> flat;
    TermPtr head = spine[0];
    for (std::size_t i = 1; i <= keep; ++i) head = mkApp(head, spine[i]);
    flat.push_back(head);
    for (std::size_t i = keep + 1; i < spine.size(); ++i) flat.push_back(spine[i]);
    out.push_back(std::move(flat));
  }
  return out;
}

// ---------------------------------------------------------------- Typing

void SymbolTable::declare(const FunctionSymbol& f) {
  if (symbols_.count(f.name)) throw TypeError("duplicate function symbol: " + f.name);
  symbols_[f.name] = f;
}

const FunctionSymbol* SymbolTable::find(const std::string& name) const {
  auto it = symbols_.find(name);
  return it == symbols_.end() ? nullptr : &it->second;
}

const FunctionSymbol& SymbolTable::get(const std::string& name) const {
  auto* f = find(name);
  if (!f) throw TypeError("undeclared function symbol: " + name);
  return *f;
}

std::vector<std::string> SymbolTable::names() const {
  std::vector<std::string> out;
  for (auto& [n, f] : symbols_) out.push_back(n);
  return out;
}

TypePtr typecheck(const SymbolTable& sig, const Environment& env, const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var: {
      auto it = env.find(t->name);
      if (it == env.end()) throw TypeError("unbound variable: " + t->name);
      return it->second;
    }
    case TermKind::Abs: {
      Environment inner = env;
      inner[t->name] = t->varType;
      return mkArrow(t->varType, typecheck(sig, inner, t->body));
    }
    case TermKind::App: {
      TypePtr f = typecheck(sig, env, t->fun);
      TypePtr a = typecheck(sig, env, t->arg);
      if (!f->arrow)
        throw TypeError("application of a non-arrow term: " + showTerm(t->fun) + " : " +
                        showType(f));
      if (!typeStructEq(f->dom, a))
        throw TypeError("domain mismatch applying " + showTerm(t->fun) + " : " + showType(f) +
                        " to " + showTerm(t->arg) + " : " + showType(a));
      return f->cod;
    }
    case TermKind::Fun: {
      const FunctionSymbol& f = sig.get(t->name);
      if (f.argTypes.size() != t->args.size())
        throw TypeError("arity mismatch: " + t->name + " expects " +
                        std::to_string(f.argTypes.size()) + " arguments, got " +
                        std::to_string(t->args.size()));
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        TypePtr a = typecheck(sig, env, t->args[i]);
        if (!typeStructEq(a, f.argTypes[i]))
          throw TypeError("argument " + std::to_string(i + 1) + " of " + t->name +
                          " has type " + showType(a) + ", expected " + showType(f.argTypes[i]));
      }
      return f.resultType;
    }
  }
  throw TypeError("unreachable");
}

std::optional<TypePtr> typeOf(const SymbolTable& sig, const Environment& env, const TermPtr& t) {
  try {
    return typecheck(sig, env, t);
  } catch (const TypeError&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------- Reduction

namespace {
void reduceRec(const TermPtr& t, ReduceMode mode, Position& here,
               std::vector<std::pair<Position, TermPtr>>& out) {
  bool beta = mode == ReduceMode::Beta || mode == ReduceMode::BetaEta;
  bool eta = mode == ReduceMode::Eta || mode == ReduceMode::BetaEta;
  if (beta && t->kind == TermKind::App && t->fun->kind == TermKind::Abs) {
    Substitution s{{t->fun->name, t->arg}};
    out.emplace_back(here, substitute(t->fun->body, s));
  }
  if (eta && t->kind == TermKind::Abs && t->body->kind == TermKind::App &&
      t->body->arg->kind == TermKind::Var && t->body->arg->name == t->name &&
      !freeVars(t->body->fun).count(t->name)) {
    out.emplace_back(here, t->body->fun);
  }
  switch (t->kind) {
    case TermKind::Var: break;
    case TermKind::Abs: {
      here.push_back(1);
      std::size_t mark = out.size();
      reduceRec(t->body, mode, here, out);
      for (std::size_t i = mark; i < out.size(); ++i)
        out[i].second = mkAbs(t->name, t->varType, out[i].second);
      here.pop_back();
      break;
    }
    case TermKind::App: {
      here.push_back(1);
      std::size_t mark = out.size();
      reduceRec(t->fun, mode, here, out);
      for (std::size_t i = mark; i < out.size(); ++i) out[i].second = mkApp(out[i].second, t->arg);
      here.pop_back();
      here.push_back(2);
      mark = out.size();
      reduceRec(t->arg, mode, here, out);
      for (std::size_t i = mark; i < out.size(); ++i) out[i].second = mkApp(t->fun, out[i].second);
      here.pop_back();
      break;
    }
    case TermKind::Fun: {
      for (std::size_t k = 0; k < t->args.size(); ++k) {
        here.push_back(static_cast<int>(k + 1));
        std::size_t mark = out.size();
        reduceRec(t->args[k], mode, here, out);
        for (std::size_t i = mark; i < out.size(); ++i) {
          std::vector<TermPtr> args = t->args;
          args[k] = out[i].second;
          out[i].second = mkFun(t->name, std::move(args));
        }
        here.pop_back();
      }
      break;
    }
  }
}
}  // namespace

std::vector<std::pair<Position, TermPtr>> reduceStep(const TermPtr& t, ReduceMode mode) {
  std::vector<std::pair<Position, TermPtr>> out;
  Position here;
  reduceRec(t, mode, here, out);
  return out;
}

}  // namespace hrs
