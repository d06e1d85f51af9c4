#include "hrs/enumerate.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "hrs/rpo.hpp"

namespace hrs {

// ----------------------------------------------------------- enumeration

namespace {

struct Enumerator {
  const EnumSpec& spec;
  std::vector<TypePtr> universe;
  std::map<std::string, std::vector<TermPtr>> memo;

  explicit Enumerator(const EnumSpec& s) : spec(s) { buildUniverse(); }

  void addType(std::vector<TypePtr>& out, std::set<std::string>& seen, const TypePtr& t) {
    if (!t) return;
    if (seen.insert(showType(t)).second) out.push_back(t);
    if (t->arrow) {
      addType(out, seen, t->dom);
      addType(out, seen, t->cod);
    }
  }

  void buildUniverse() {
    std::set<std::string> seen;
    for (auto& [x, ty] : spec.seedVars) addType(universe, seen, ty);
    for (auto& name : spec.cfg.symbols.names()) {
      const FunctionSymbol& f = spec.cfg.symbols.get(name);
      for (auto& a : f.argTypes) addType(universe, seen, a);
      addType(universe, seen, f.resultType);
    }
    for (auto& [name, s] : spec.cfg.sorts) addType(universe, seen, mkSort(name));
    if (spec.targetType) addType(universe, seen, *spec.targetType);
    if (spec.lambdas) {
      // One extra level of arrows between the base types.
      std::vector<TypePtr> base = universe;
      for (auto& a : base)
        for (auto& b : base) addType(universe, seen, mkArrow(a, b));
    }
  }

  std::string envKey(const Environment& env) {
    std::string k;
    for (auto& [x, ty] : env) k += x + ":" + showType(ty) + ";";
    return k;
  }

  // All terms of exactly `size` nodes with the given type, in env.
  const std::vector<TermPtr>& terms(const Environment& env, const TypePtr& ty, std::size_t size,
                                    int binderDepth) {
    std::string key =
        showType(ty) + "|" + std::to_string(size) + "|" + envKey(env);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<TermPtr> out;
    std::set<std::string> seen;
    auto push = [&](const TermPtr& t) {
      if (seen.insert(alphaKey(t)).second) out.push_back(t);
    };
    if (size >= 1) {
      // Variables.
      if (size == 1)
        for (auto& [x, vt] : env)
          if (typeStructEq(vt, ty)) push(mkVar(x));
      // Function symbols with this result type.
      for (auto& name : spec.cfg.symbols.names()) {
        const FunctionSymbol& f = spec.cfg.symbols.get(name);
        if (!typeStructEq(f.resultType, ty)) continue;
        fillArgs(env, f, 0, size - 1, {}, binderDepth, push);
      }
      // Abstractions (binder plus abstraction node cost two).
      if (ty->arrow && size >= 3) {
        std::string x = "_x" + std::to_string(binderDepth);
        Environment inner = env;
        inner[x] = ty->dom;
        for (auto& body : terms(inner, ty->cod, size - 2, binderDepth + 1))
          push(mkAbs(x, ty->dom, body));
      }
      // Applications: argument type ranges over the universe.
      if (size >= 3) {
        for (auto& sigma : universe) {
          TypePtr fty = mkArrow(sigma, ty);
          for (std::size_t k1 = 1; k1 + 2 <= size; ++k1) {
            std::size_t k2 = size - 1 - k1;
            for (auto& f : terms(env, fty, k1, binderDepth))
              for (auto& a : terms(env, sigma, k2, binderDepth))
                push(mkApp(f, a));
          }
        }
      }
    }
    return memo[key] = std::move(out);
  }

  template <typename Push>
  void fillArgs(const Environment& env, const FunctionSymbol& f, std::size_t idx,
                std::size_t budget, std::vector<TermPtr> acc, int binderDepth, Push push) {
    if (idx == f.argTypes.size()) {
      if (budget == 0) push(mkFun(f.name, acc));
      return;
    }
    std::size_t remaining = f.argTypes.size() - idx - 1;
    for (std::size_t k = 1; k + remaining <= budget; ++k) {
      for (auto& t : terms(env, f.argTypes[idx], k, binderDepth)) {
        auto acc2 = acc;
        acc2.push_back(t);
        fillArgs(env, f, idx + 1, budget - k, std::move(acc2), binderDepth, push);
      }
    }
  }
};

}  // namespace

std::vector<TermPtr> enumerateTerms(const EnumSpec& spec) {
  Enumerator en(spec);
  std::vector<TermPtr> out;
  std::set<std::string> seen;
  std::vector<TypePtr> targets;
  if (spec.targetType)
    targets.push_back(*spec.targetType);
  else
    targets = en.universe;
  for (std::size_t size = 1; size <= spec.maxSize; ++size)
    for (auto& ty : targets)
      for (auto& t : en.terms(spec.seedVars, ty, size, 0))
        if (seen.insert(alphaKey(t)).second) out.push_back(t);
  return out;
}

// ----------------------------------------------------------- order axioms

namespace {

double msSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

PropertyReport checkOrderAxioms(const std::string& relationName, const Relation& rel,
                                const EnumSpec& spec, const std::vector<OrderAxiom>& axioms) {
  auto t0 = std::chrono::steady_clock::now();
  PropertyReport rep;
  rep.property = relationName + " order axioms";
  std::vector<TermPtr> ts = enumerateTerms(spec);
  std::size_t n = ts.size();
  std::vector<std::vector<bool>> gt(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      gt[i][j] = rel(ts[i], ts[j]);
      ++rep.instanceCount;
    }
  for (OrderAxiom ax : axioms) {
    if (ax == OrderAxiom::Irreflexive) {
      for (std::size_t i = 0; i < n; ++i)
        if (gt[i][i])
          rep.counterexamples.push_back("irreflexivity: " + showTerm(ts[i]) + " > itself");
    } else if (ax == OrderAxiom::Transitive) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (!gt[i][j]) continue;
          for (std::size_t k = 0; k < n; ++k) {
            if (gt[j][k] && !gt[i][k]) {
              rep.counterexamples.push_back("transitivity: " + showTerm(ts[i]) + " > " +
                                            showTerm(ts[j]) + " > " + showTerm(ts[k]) +
                                            " but not " + showTerm(ts[i]) + " > " +
                                            showTerm(ts[k]));
            }
            ++rep.instanceCount;
          }
        }
    } else {  // Acyclic
      // DFS over the comparison graph.
      std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
      std::function<bool(std::size_t, std::vector<std::size_t>&)> dfs =
          [&](std::size_t i, std::vector<std::size_t>& path) -> bool {
        state[i] = 1;
        path.push_back(i);
        for (std::size_t j = 0; j < n; ++j) {
          if (!gt[i][j]) continue;
          if (state[j] == 1) {
            std::string cyc = "cycle:";
            auto it = std::find(path.begin(), path.end(), j);
            for (; it != path.end(); ++it) cyc += " " + showTerm(ts[*it]) + " >";
            rep.counterexamples.push_back(cyc + " " + showTerm(ts[j]));
            return true;
          }
          if (state[j] == 0 && dfs(j, path)) return true;
        }
        path.pop_back();
        state[i] = 2;
        return false;
      };
      for (std::size_t i = 0; i < n && rep.counterexamples.empty(); ++i)
        if (state[i] == 0) {
          std::vector<std::size_t> path;
          dfs(i, path);
        }
    }
  }
  rep.elapsedMs = msSince(t0);
  return rep;
}

// ------------------------------------------- stability / monotonicity

PropertyReport checkStabilityMonotonicity(const std::string& relationName, const Relation& rel,
                                          const EnumSpec& spec, std::size_t sampleCount,
                                          unsigned seed) {
  auto t0 = std::chrono::steady_clock::now();
  PropertyReport rep;
  rep.property = relationName + " stability+monotonicity (seed " + std::to_string(seed) + ")";
  std::mt19937 rng(seed);
  std::vector<TermPtr> ts = enumerateTerms(spec);
  // Terms grouped by type, for substitution targets.
  std::map<std::string, std::vector<TermPtr>> byType;
  for (auto& t : ts)
    if (auto ty = typeOf(spec.cfg.symbols, spec.seedVars, t)) byType[showType(*ty)].push_back(t);
  // Ordered pairs on the grid.
  std::vector<std::pair<TermPtr, TermPtr>> pairs;
  for (auto& s : ts)
    for (auto& t : ts)
      if (rel(s, t)) pairs.push_back({s, t});
  if (pairs.empty()) {
    rep.elapsedMs = msSince(t0);
    return rep;
  }
  std::uniform_int_distribution<std::size_t> pickPair(0, pairs.size() - 1);
  for (std::size_t round = 0; round < sampleCount; ++round) {
    auto [s, t] = pairs[pickPair(rng)];
    ++rep.instanceCount;
    // Stability: substitute each shared free variable by a random grid term
    // of the same type.
    Substitution gamma;
    bool feasible = true;
    auto fvs = freeVars(s);
    for (auto& x : fvs) {
      auto it = spec.seedVars.find(x);
      if (it == spec.seedVars.end()) continue;
      auto& pool = byType[showType(it->second)];
      if (pool.empty()) {
        feasible = false;
        break;
      }
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      gamma[x] = pool[pick(rng)];
    }
    if (feasible && !gamma.empty()) {
      TermPtr sg = substitute(s, gamma), tg = substitute(t, gamma);
      if (!rel(sg, tg))
        rep.counterexamples.push_back("stability: " + showTerm(s) + " > " + showTerm(t) +
                                      " but not " + showTerm(sg) + " > " + showTerm(tg));
    }
    // Monotonicity: wrap both sides in a random symbol context at a matching
    // argument position.
    auto sty = typeOf(spec.cfg.symbols, spec.seedVars, s);
    auto tty = typeOf(spec.cfg.symbols, spec.seedVars, t);
    if (!sty || !tty || !typeStructEq(*sty, *tty)) continue;
    std::vector<std::pair<std::string, std::size_t>> holes;
    for (auto& name : spec.cfg.symbols.names()) {
      const FunctionSymbol& f = spec.cfg.symbols.get(name);
      for (std::size_t i = 0; i < f.argTypes.size(); ++i)
        if (typeStructEq(f.argTypes[i], *sty)) holes.push_back({name, i});
    }
    if (holes.empty()) continue;
    std::uniform_int_distribution<std::size_t> pickHole(0, holes.size() - 1);
    auto [fname, hole] = holes[pickHole(rng)];
    const FunctionSymbol& f = spec.cfg.symbols.get(fname);
    std::vector<TermPtr> argsS, argsT;
    bool built = true;
    for (std::size_t i = 0; i < f.argTypes.size(); ++i) {
      if (i == hole) {
        argsS.push_back(s);
        argsT.push_back(t);
        continue;
      }
      auto& pool = byType[showType(f.argTypes[i])];
      if (pool.empty()) {
        built = false;
        break;
      }
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      TermPtr filler = pool[pick(rng)];
      argsS.push_back(filler);
      argsT.push_back(filler);
    }
    if (!built) continue;
    TermPtr cs = mkFun(fname, argsS), ct = mkFun(fname, argsT);
    if (!rel(cs, ct))
      rep.counterexamples.push_back("monotonicity: " + showTerm(s) + " > " + showTerm(t) +
                                    " but not " + showTerm(cs) + " > " + showTerm(ct));
  }
  rep.elapsedMs = msSince(t0);
  return rep;
}

// ----------------------------------------------------------- reduction

namespace {

// Syntactic first-order-style matching: variables of the rule environment
// match any subterm; everything else must agree structurally.
bool matchTerm(const Environment& patVars, const TermPtr& pat, const TermPtr& sub,
               Substitution& binding) {
  switch (pat->kind) {
    case TermKind::Var: {
      if (patVars.count(pat->name)) {
        auto it = binding.find(pat->name);
        if (it != binding.end()) return alphaEq(it->second, sub);
        binding[pat->name] = sub;
        return true;
      }
      return sub->kind == TermKind::Var && sub->name == pat->name;
    }
    case TermKind::Fun:
      if (sub->kind != TermKind::Fun || sub->name != pat->name ||
          sub->args.size() != pat->args.size())
        return false;
      for (std::size_t i = 0; i < pat->args.size(); ++i)
        if (!matchTerm(patVars, pat->args[i], sub->args[i], binding)) return false;
      return true;
    case TermKind::App:
      return sub->kind == TermKind::App && matchTerm(patVars, pat->fun, sub->fun, binding) &&
             matchTerm(patVars, pat->arg, sub->arg, binding);
    case TermKind::Abs:
      return sub->kind == TermKind::Abs && typeStructEq(pat->varType, sub->varType) &&
             sub->name == pat->name && matchTerm(patVars, pat->body, sub->body, binding);
  }
  return false;
}

void allPositions(const TermPtr& t, Position cur, std::vector<Position>& out) {
  out.push_back(cur);
  switch (t->kind) {
    case TermKind::Var: return;
    case TermKind::Abs: {
      cur.push_back(1);
      allPositions(t->body, cur, out);
      return;
    }
    case TermKind::App: {
      Position a = cur, b = cur;
      a.push_back(1);
      b.push_back(2);
      allPositions(t->fun, a, out);
      allPositions(t->arg, b, out);
      return;
    }
    case TermKind::Fun:
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        Position p = cur;
        p.push_back(static_cast<int>(i) + 1);
        allPositions(t->args[i], p, out);
      }
      return;
  }
}

std::vector<TermPtr> successors(const SignatureConfig& cfg,
                                const std::vector<RewriteRule>& rules, const TermPtr& t,
                                ReduceMode mode) {
  std::vector<TermPtr> out;
  std::set<std::string> seen;
  auto push = [&](const TermPtr& u) {
    if (seen.insert(alphaKey(u)).second) out.push_back(u);
  };
  for (auto& [pos, red] : reduceStep(t, mode)) push(red);
  std::vector<Position> poss;
  allPositions(t, {}, poss);
  for (auto& pos : poss) {
    TermPtr sub = subtermAt(t, pos);
    for (auto& rule : rules) {
      Substitution binding;
      if (matchTerm(rule.env, rule.lhs, sub, binding))
        push(replaceAt(t, pos, substitute(rule.rhs, binding)));
    }
  }
  return out;
}

}  // namespace

ExploreResult exploreReduction(const SignatureConfig& cfg, const std::vector<RewriteRule>& rules,
                               const TermPtr& startTerm, std::size_t stepBound,
                               ReduceMode mode) {
  ExploreResult res;
  // Longest-chain DFS with cycle detection; chain longer than stepBound (or a
  // cycle) counts as a bound hit and yields the witness chain.
  std::map<std::string, std::size_t> done;  // alphaKey -> longest chain below
  std::set<std::string> onStack;
  std::vector<TermPtr> chain;
  bool hit = false;

  std::function<std::size_t(const TermPtr&)> dfs = [&](const TermPtr& t) -> std::size_t {
    std::string key = alphaKey(t);
    auto it = done.find(key);
    if (it != done.end()) return it->second;
    chain.push_back(t);
    if (onStack.count(key) || chain.size() > stepBound + 1) {
      hit = true;
      res.witnessChain = chain;
      chain.pop_back();
      return 0;
    }
    onStack.insert(key);
    std::size_t best = 0;
    for (auto& u : successors(cfg, rules, t, mode)) {
      if (hit) break;
      best = std::max(best, 1 + dfs(u));
    }
    onStack.erase(key);
    chain.pop_back();
    if (!hit) done[key] = best;
    return best;
  };

  std::size_t longest = dfs(startTerm);
  res.terminated = !hit;
  res.maxChainLength = longest;
  return res;
}

// ----------------------------------------------------------- oracle

namespace {

void assertFirstOrder(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Abs:
    case TermKind::App: throw NotFirstOrder("higher-order construct in first-order oracle");
    case TermKind::Var: return;
    case TermKind::Fun:
      for (auto& a : t->args) assertFirstOrder(a);
      return;
  }
}

bool oGT(const SignatureConfig& cfg, const TermPtr& s, const TermPtr& t);

bool oGE(const SignatureConfig& cfg, const TermPtr& s, const TermPtr& t) {
  return alphaEq(s, t) || oGT(cfg, s, t);
}

bool oA(const SignatureConfig& cfg, const TermPtr& s, const std::vector<TermPtr>& sArgs,
        const TermPtr& v) {
  if (oGT(cfg, s, v)) return true;
  for (auto& u : sArgs)
    if (oGE(cfg, u, v)) return true;
  return false;
}

// Classical multiset-extension characterization: M > N iff M != N and every
// element of N - M is strictly dominated by some element of M - N.
bool oMul(const SignatureConfig& cfg, std::vector<TermPtr> M, std::vector<TermPtr> N) {
  for (auto it = N.begin(); it != N.end();) {
    bool removed = false;
    for (auto jt = M.begin(); jt != M.end(); ++jt) {
      if (alphaEq(*jt, *it)) {
        M.erase(jt);
        it = N.erase(it);
        removed = true;
        break;
      }
    }
    if (!removed) ++it;
  }
  if (M.empty()) return false;  // covers M == N and M strictly included in N
  for (auto& n : N) {
    bool dominated = false;
    for (auto& m : M)
      if (oGT(cfg, m, n)) {
        dominated = true;
        break;
      }
    if (!dominated) return false;
  }
  return true;
}

bool oGT(const SignatureConfig& cfg, const TermPtr& s, const TermPtr& t) {
  if (s->kind != TermKind::Fun) return false;
  // Case 1: some argument weakly dominates the rhs.
  for (auto& u : s->args)
    if (oGE(cfg, u, t)) return true;
  if (t->kind != TermKind::Fun) return false;
  PrecResult pr = cfg.prec.compare(s->name, t->name);
  // Case 2: strictly smaller head, all rhs arguments handled by A.
  if (pr == PrecResult::Greater) {
    bool all = true;
    for (auto& v : t->args)
      if (!oA(cfg, s, s->args, v)) {
        all = false;
        break;
      }
    if (all) return true;
  }
  if (pr == PrecResult::Equiv) {
    if (cfg.statusOf(s->name) == StatusKind::Mul) {
      // Case 3.
      if (oMul(cfg, s->args, t->args)) return true;
    } else if (s->args.size() == t->args.size()) {
      // Case 4: lexicographic decrease plus A on every rhs argument.
      for (std::size_t i = 0; i < s->args.size(); ++i) {
        if (alphaEq(s->args[i], t->args[i])) continue;
        if (oGT(cfg, s->args[i], t->args[i])) {
          bool all = true;
          for (auto& v : t->args)
            if (!oA(cfg, s, s->args, v)) {
              all = false;
              break;
            }
          if (all) return true;
        }
        break;
      }
    }
  }
  return false;
}

}  // namespace

bool oracleRpo(const SignatureConfig& cfg, const TermPtr& s, const TermPtr& t) {
  assertFirstOrder(s);
  assertFirstOrder(t);
  return oGT(cfg, s, t);
}

}  // namespace hrs
