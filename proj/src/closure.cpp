#include "hrs/closure.hpp"

#include <map>

namespace hrs {

std::string closureRuleName(ClosureRuleTag tag) {
  switch (tag) {
    case ClosureRuleTag::BaseVar: return "base-var";
    case ClosureRuleTag::BaseArg: return "base-arg";
    case ClosureRuleTag::Subterm: return "subterm";
    case ClosureRuleTag::Precedence: return "precedence";
    case ClosureRuleTag::RecCall: return "recursive-call";
    case ClosureRuleTag::Application: return "application";
    case ClosureRuleTag::Abstraction: return "abstraction";
    case ClosureRuleTag::Reduction: return "reduction";
  }
  return "?";
}

namespace {

// One-step beta-or-immediate-subterm reducts (the relation of rules 3 and 6).
std::vector<TermPtr> betaSubtermSteps(const TermPtr& t) {
  std::vector<TermPtr> out;
  for (auto& [pos, r] : reduceStep(t, ReduceMode::Beta)) out.push_back(r);
  switch (t->kind) {
    case TermKind::Var: break;
    case TermKind::Abs: out.push_back(t->body); break;
    case TermKind::App:
      out.push_back(t->fun);
      out.push_back(t->arg);
      break;
    case TermKind::Fun:
      for (auto& a : t->args) out.push_back(a);
      break;
  }
  return out;
}

// Terms reachable from t in 1..bound steps, deduplicated up to alpha.
std::vector<TermPtr> reachable(const TermPtr& t, int bound) {
  std::vector<TermPtr> out;
  std::map<std::string, bool> seen{{alphaKey(t), true}};
  std::vector<TermPtr> frontier{t};
  for (int step = 0; step < bound && !frontier.empty(); ++step) {
    std::vector<TermPtr> next;
    for (auto& u : frontier) {
      for (auto& v : betaSubtermSteps(u)) {
        if (seen.emplace(alphaKey(v), true).second) {
          out.push_back(v);
          next.push_back(v);
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

bool reachesWithin(const TermPtr& from, const TermPtr& to, int bound) {
  for (auto& v : reachable(from, bound))
    if (alphaEq(v, to)) return true;
  return false;
}

struct Member {
  TermPtr term;
  ClosureProofPtr proof;
};

struct Search {
  const SignatureConfig& cfg;
  const Environment& env;  // rule environment (free variables of the anchor)
  TermPtr anchor;          // f(t...)
  std::set<std::string> anchorVars;
  ClosureBudget budget;
  bool hitBudget = false;

  // Frontier saturated from the anchor's arguments under rules 1 and 6; the
  // V-variables are added per goal since rule 5 extends V as search descends.
  std::vector<Member> frontier;

  void buildFrontier() {
    std::map<std::string, bool> seen;
    auto add = [&](const TermPtr& t, ClosureProofPtr p) -> bool {
      if (!seen.emplace(alphaKey(t), true).second) return false;
      frontier.push_back({t, std::move(p)});
      return true;
    };
    for (std::size_t i = 0; i < anchor->args.size(); ++i) {
      auto p = std::make_shared<ClosureProof>();
      p->rule = ClosureRuleTag::BaseArg;
      p->candidate = anchor->args[i];
      p->argIndex = static_cast<int>(i);
      add(anchor->args[i], p);
    }
    // Saturation rounds bounded by the depth budget. Rule 1 is tried before
    // rule 6 so subterm-of-basic-type members carry the more specific tag.
    for (int round = 0; round < budget.depth; ++round) {
      bool grew = false;
      std::vector<Member> snapshot = frontier;
      for (auto& m : snapshot) {
        for (auto& u : strictSubterms(m.term)) {
          auto fv = freeVars(u);
          bool inAnchor = true;
          for (auto& x : fv) inAnchor = inAnchor && anchorVars.count(x);
          if (!inAnchor) continue;  // keeps member terms typable in env
          TypePtr ty;
          try {
            ty = typecheck(cfg.symbols, env, u);
          } catch (const TypeError&) {
            continue;
          }
          if (!ty->arrow) {
            auto p = std::make_shared<ClosureProof>();
            p->rule = ClosureRuleTag::Subterm;
            p->candidate = u;
            p->via = m.proof;
            grew = add(u, p) || grew;
          }
        }
        for (auto& v : betaSubtermSteps(m.term)) {
          auto fv = freeVars(v);
          bool inAnchor = true;
          for (auto& x : fv) inAnchor = inAnchor && anchorVars.count(x);
          if (!inAnchor) continue;
          auto p = std::make_shared<ClosureProof>();
          p->rule = ClosureRuleTag::Reduction;
          p->candidate = v;
          p->via = m.proof;
          grew = add(v, p) || grew;
        }
      }
      if (!grew) break;
    }
  }

  std::optional<ClosureProofPtr> solve(const Environment& V, const TermPtr& cand, int depth) {
    if (depth <= 0) {
      hitBudget = true;
      return std::nullopt;
    }
    // Base: V-variables.
    if (cand->kind == TermKind::Var) {
      auto it = V.find(cand->name);
      if (it != V.end()) {
        auto p = std::make_shared<ClosureProof>();
        p->rule = ClosureRuleTag::BaseVar;
        p->candidate = cand;
        return p;
      }
    }
    // Base / rules 1 and 6 via the saturated frontier.
    for (auto& m : frontier)
      if (alphaEq(m.term, cand)) return m.proof;

    const std::string& f = anchor->name;
    if (cand->kind == TermKind::Fun) {
      PrecResult pr = cfg.prec.compare(f, cand->name);
      // Rule 2: strictly smaller head.
      if (pr == PrecResult::Greater) {
        if (auto subs = solveAll(V, cand->args, depth)) {
          auto p = std::make_shared<ClosureProof>();
          p->rule = ClosureRuleTag::Precedence;
          p->candidate = cand;
          p->subs = *subs;
          return p;
        }
      }
      // Rule 3 tried after the structural rules 4/5 per the search order;
      // see below.
    }
    // Rule 4: application.
    if (cand->kind == TermKind::App) {
      auto pf = solve(V, cand->fun, depth - 1);
      if (pf) {
        auto pa = solve(V, cand->arg, depth - 1);
        if (pa) {
          auto p = std::make_shared<ClosureProof>();
          p->rule = ClosureRuleTag::Application;
          p->candidate = cand;
          p->subs = {*pf, *pa};
          return p;
        }
      }
    }
    // Rule 5: abstraction with a fresh variable added to V.
    if (cand->kind == TermKind::Abs) {
      TermPtr fresh = cand;
      if (V.count(cand->name) || anchorVars.count(cand->name)) {
        std::string z = freshName(cand->name, {anchor, cand->body});
        while (V.count(z) || anchorVars.count(z)) z += "_";
        Substitution ren{{cand->name, mkVar(z)}};
        fresh = mkAbs(z, cand->varType, substitute(cand->body, ren));
      }
      Environment V2 = V;
      V2[fresh->name] = fresh->varType;
      if (auto sub = solve(V2, fresh->body, depth - 1)) {
        auto p = std::make_shared<ClosureProof>();
        p->rule = ClosureRuleTag::Abstraction;
        p->candidate = cand;
        p->binder = fresh->name;
        p->binderType = fresh->varType;
        p->subs = {*sub};
        return p;
      }
    }
    // Rule 3: recursive call with an equivalent head.
    if (cand->kind == TermKind::Fun &&
        cfg.prec.compare(f, cand->name) == PrecResult::Equiv) {
      std::function<bool(const TermPtr&, const TermPtr&)> rel =
          [&](const TermPtr& a, const TermPtr& b) { return reachesWithin(a, b, budget.betaSteps); };
      std::function<bool(const TermPtr&, const TermPtr&)> eqr =
          [&](const TermPtr& a, const TermPtr& b) { return alphaEq(a, b); };
      bool tupleDecreases = false;
      std::optional<MulDecomposition> mulW;
      int lexIdx = -1;
      if (cfg.statusOf(f) == StatusKind::Mul) {
        if (auto d = mulExt<TermPtr>(rel, eqr, anchor->args, cand->args)) {
          tupleDecreases = true;
          mulW = *d;
        }
      } else {
        if (auto idx = lexExt<TermPtr>(rel, eqr, anchor->args, cand->args)) {
          tupleDecreases = true;
          lexIdx = static_cast<int>(*idx);
        }
      }
      if (tupleDecreases) {
        if (auto subs = solveAll(V, cand->args, depth)) {
          auto p = std::make_shared<ClosureProof>();
          p->rule = ClosureRuleTag::RecCall;
          p->candidate = cand;
          p->subs = *subs;
          p->mulWitness = mulW;
          p->lexIndex = lexIdx;
          return p;
        }
      }
    }
    return std::nullopt;
  }

  std::optional<std::vector<ClosureProofPtr>> solveAll(const Environment& V,
                                                       const std::vector<TermPtr>& goals,
                                                       int depth) {
    std::vector<ClosureProofPtr> out;
    for (auto& g : goals) {
      auto p = solve(V, g, depth - 1);
      if (!p) return std::nullopt;
      out.push_back(*p);
    }
    return out;
  }
};

}  // namespace

ClosureResult inClosure(const SignatureConfig& cfg, const Environment& env, const TermPtr& anchor,
                        const Environment& V, const TermPtr& candidate,
                        const ClosureBudget& budget) {
  if (anchor->kind != TermKind::Fun)
    throw TypeError("closure anchor must be symbol-headed: " + showTerm(anchor));
  cfg.symbols.get(anchor->name);
  Search search{cfg, env, anchor, freeVars(anchor), budget};
  for (auto& [x, ty] : V)
    if (search.anchorVars.count(x))
      throw TypeError("closure context variable occurs in the anchor: " + x);
  search.buildFrontier();
  ClosureResult res;
  if (auto p = search.solve(V, candidate, budget.depth)) {
    res.status = SearchStatus::Accepted;
    res.proof = *p;
  } else {
    res.status = search.hitBudget ? SearchStatus::Unknown : SearchStatus::Rejected;
  }
  return res;
}

namespace {

bool checkClosureNode(const SignatureConfig& cfg, const Environment& env, const TermPtr& anchor,
                      Environment V, const ClosureProofPtr& p, const ClosureBudget& budget) {
  if (!p || !p->candidate) return false;
  const TermPtr& c = p->candidate;
  auto anchorVars = freeVars(anchor);
  switch (p->rule) {
    case ClosureRuleTag::BaseVar:
      return c->kind == TermKind::Var && V.count(c->name) > 0;
    case ClosureRuleTag::BaseArg:
      return p->argIndex >= 0 && p->argIndex < static_cast<int>(anchor->args.size()) &&
             alphaEq(c, anchor->args[p->argIndex]);
    case ClosureRuleTag::Subterm: {
      if (!p->via || !checkClosureNode(cfg, env, anchor, V, p->via, budget)) return false;
      if (!strictSubterm(p->via->candidate, c)) return false;
      auto ty = typeOf(cfg.symbols, env, c);
      if (!ty || (*ty)->arrow) return false;
      for (auto& x : freeVars(c))
        if (!anchorVars.count(x)) return false;
      return true;
    }
    case ClosureRuleTag::Precedence: {
      if (c->kind != TermKind::Fun) return false;
      if (cfg.prec.compare(anchor->name, c->name) != PrecResult::Greater) return false;
      if (p->subs.size() != c->args.size()) return false;
      for (std::size_t i = 0; i < c->args.size(); ++i)
        if (!p->subs[i] || !alphaEq(p->subs[i]->candidate, c->args[i]) ||
            !checkClosureNode(cfg, env, anchor, V, p->subs[i], budget))
          return false;
      return true;
    }
    case ClosureRuleTag::RecCall: {
      if (c->kind != TermKind::Fun) return false;
      if (cfg.prec.compare(anchor->name, c->name) != PrecResult::Equiv) return false;
      if (p->subs.size() != c->args.size()) return false;
      for (std::size_t i = 0; i < c->args.size(); ++i)
        if (!p->subs[i] || !alphaEq(p->subs[i]->candidate, c->args[i]) ||
            !checkClosureNode(cfg, env, anchor, V, p->subs[i], budget))
          return false;
      std::function<bool(const TermPtr&, const TermPtr&)> rel =
          [&](const TermPtr& a, const TermPtr& b) { return reachesWithin(a, b, budget.betaSteps); };
      std::function<bool(const TermPtr&, const TermPtr&)> eqr =
          [&](const TermPtr& a, const TermPtr& b) { return alphaEq(a, b); };
      if (cfg.statusOf(anchor->name) == StatusKind::Mul)
        return mulExt<TermPtr>(rel, eqr, anchor->args, c->args).has_value();
      return lexExt<TermPtr>(rel, eqr, anchor->args, c->args).has_value();
    }
    case ClosureRuleTag::Application:
      return c->kind == TermKind::App && p->subs.size() == 2 && p->subs[0] && p->subs[1] &&
             alphaEq(p->subs[0]->candidate, c->fun) && alphaEq(p->subs[1]->candidate, c->arg) &&
             checkClosureNode(cfg, env, anchor, V, p->subs[0], budget) &&
             checkClosureNode(cfg, env, anchor, V, p->subs[1], budget);
    case ClosureRuleTag::Abstraction: {
      if (c->kind != TermKind::Abs || p->subs.size() != 1 || !p->subs[0]) return false;
      if (p->binder.empty() || V.count(p->binder) || anchorVars.count(p->binder)) return false;
      if (!p->binderType || !typeStructEq(p->binderType, c->varType)) return false;
      Substitution ren{{c->name, mkVar(p->binder)}};
      TermPtr body = c->name == p->binder ? c->body : substitute(c->body, ren);
      if (!alphaEq(p->subs[0]->candidate, body)) return false;
      Environment V2 = V;
      V2[p->binder] = p->binderType;
      return checkClosureNode(cfg, env, anchor, V2, p->subs[0], budget);
    }
    case ClosureRuleTag::Reduction: {
      if (!p->via || !checkClosureNode(cfg, env, anchor, V, p->via, budget)) return false;
      for (auto& v : betaSubtermSteps(p->via->candidate))
        if (alphaEq(v, c)) return true;
      return false;
    }
  }
  return false;
}

}  // namespace

bool closureCheckProof(const SignatureConfig& cfg, const Environment& env, const TermPtr& anchor,
                       const Environment& V, const ClosureProofPtr& proof,
                       const ClosureBudget& budget) {
  try {
    return checkClosureNode(cfg, env, anchor, V, proof, budget);
  } catch (const std::exception&) {
    return false;
  }
}

std::vector<SchemaVerdict> checkGeneralSchema(const RewriteSystem& system,
                                              const ClosureBudget& budget) {
  std::vector<SchemaVerdict> out;
  for (auto& rule : system.rules) {
    if (rule.lhs->kind != TermKind::Fun)
      throw TypeError("rule lhs is not symbol-headed: " + showTerm(rule.lhs));
    ClosureResult r = inClosure(system.cfg, rule.env, rule.lhs, {}, rule.rhs, budget);
    out.push_back({r.status, r.proof});
  }
  return out;
}

}  // namespace hrs
