#include "hrs/chorpo.hpp"

#include <map>

#include "hrs/typeorder.hpp"

namespace hrs {

std::string polarityName(Polarity p) {
  switch (p) {
    case Polarity::Positive: return "positive";
    case Polarity::Negative: return "negative";
    case Polarity::Both: return "both";
    case Polarity::Absent: return "absent";
  }
  return "?";
}

namespace {

Polarity flip(Polarity p) {
  if (p == Polarity::Positive) return Polarity::Negative;
  if (p == Polarity::Negative) return Polarity::Positive;
  return p;
}

Polarity join(Polarity a, Polarity b) {
  if (a == Polarity::Absent) return b;
  if (b == Polarity::Absent) return a;
  if (a == b) return a;
  return Polarity::Both;
}

}  // namespace

Polarity polarity(const SignatureConfig& cfg, const std::string& sort, const TypePtr& tau) {
  if (!tau->arrow) {
    Polarity here = cfg.sortPrec.equiv(sort, tau->sort) ? Polarity::Positive : Polarity::Absent;
    for (auto& a : tau->sortArgs) {
      // Occurrences under sort-application arguments count as Both.
      Polarity sub = polarity(cfg, sort, a);
      if (sub != Polarity::Absent) here = join(here, Polarity::Both);
    }
    return here;
  }
  return join(flip(polarity(cfg, sort, tau->dom)), polarity(cfg, sort, tau->cod));
}

namespace {

using XContext = std::vector<std::pair<std::string, TypePtr>>;

struct Ctx {
  const SignatureConfig& cfg;
  Environment env;  // rule environment; extended copies passed where X grows
  ChorpoBudget budget;
  bool hitBudget = false;
  // lhs terms of enclosing head-ordering goals, for accessibility clause 1
  std::vector<TermPtr> ancestry;
};

std::optional<ChorpoProofPtr> horpoGoal(Ctx& ctx, const Environment& env, const TermPtr& s,
                                        const TermPtr& t, int depth);
std::optional<ChorpoProofPtr> closureGoal(Ctx& ctx, const Environment& env, const TermPtr& s,
                                          const XContext& X, const TermPtr& t, int depth);

std::optional<ChorpoProofPtr> horpoWeak(Ctx& ctx, const Environment& env, const TermPtr& s,
                                        const TermPtr& t, int depth) {
  if (alphaEq(s, t)) {
    auto p = std::make_shared<ChorpoProof>();
    p->kind = ChorpoKind::Horpo;
    p->caseTag = "refl";
    p->lhs = s;
    p->rhs = t;
    return p;
  }
  return horpoGoal(ctx, env, s, t, depth);
}

std::optional<AccessEvidence> accessible(Ctx& ctx, const SignatureConfig& cfg, const TermPtr& s,
                                         std::size_t i) {
  // Clause 1: s is the lhs of an enclosing head-ordering goal.
  for (auto& anc : ctx.ancestry) {
    if (alphaEq(anc, s)) {
      AccessEvidence e;
      e.clause = 1;
      e.argIndex = static_cast<int>(i);
      return e;
    }
  }
  // Clause 2: the head's result sort occurs only positively (or not at all)
  // in the argument's declared type.
  const FunctionSymbol& f = cfg.symbols.get(s->name);
  if (i >= f.argTypes.size()) return std::nullopt;
  std::string resSort = rootSort(f.resultType)->sort;
  Polarity p = polarity(cfg, resSort, f.argTypes[i]);
  if (p == Polarity::Positive || p == Polarity::Absent) {
    AccessEvidence e;
    e.clause = 2;
    e.argIndex = static_cast<int>(i);
    e.pol = p;
    return e;
  }
  return std::nullopt;
}

bool conditionA(Ctx& ctx, const Environment& env, const TermPtr& s,
                const std::vector<TermPtr>& sArgs, const std::vector<TermPtr>& tArgs,
                std::vector<int>& branch, std::vector<ChorpoProofPtr>& subs, int depth) {
  for (auto& v : tArgs) {
    if (auto p = horpoGoal(ctx, env, s, v, depth)) {
      branch.push_back(-1);
      subs.push_back(*p);
      continue;
    }
    bool done = false;
    for (std::size_t i = 0; i < sArgs.size() && !done; ++i) {
      // The display's A uses strict comparisons on both disjuncts.
      if (auto p = horpoGoal(ctx, env, sArgs[i], v, depth)) {
        branch.push_back(static_cast<int>(i));
        subs.push_back(*p);
        done = true;
      }
    }
    if (!done) return false;
  }
  return true;
}

TermPtr abstractOverX(const XContext& X, const TermPtr& t) {
  TermPtr out = t;
  for (auto it = X.rbegin(); it != X.rend(); ++it) out = mkAbs(it->first, it->second, out);
  return out;
}

std::optional<ChorpoProofPtr> horpoGoal(Ctx& ctx, const Environment& env, const TermPtr& s,
                                        const TermPtr& t, int depth) {
  if (depth <= 0) {
    ctx.hitBudget = true;
    return std::nullopt;
  }
  // Top-level variable condition.
  {
    auto fvS = freeVars(s);
    for (auto& x : freeVars(t))
      if (!fvS.count(x)) return std::nullopt;
  }
  const SignatureConfig& cfg = ctx.cfg;
  TypePtr sigma, tau;
  try {
    sigma = typecheck(cfg.symbols, env, s);
    tau = typecheck(cfg.symbols, env, t);
  } catch (const TypeError&) {
    return std::nullopt;
  }
  auto mk = [&](const std::string& tag, bool withTypes) {
    auto p = std::make_shared<ChorpoProof>();
    p->kind = ChorpoKind::Horpo;
    p->caseTag = tag;
    p->lhs = s;
    p->rhs = t;
    if (withTypes) {
      p->lhsType = sigma;
      p->rhsType = tau;
    }
    return p;
  };

  // Case 1: symbol-headed lhs hands off to the closure relation; no type
  // comparison here.
  if (s->kind == TermKind::Fun) {
    ctx.ancestry.push_back(s);
    auto sub = closureGoal(ctx, env, s, {}, t, depth - 1);
    ctx.ancestry.pop_back();
    if (sub) {
      auto p = mk("1", false);
      p->subs.push_back(*sub);
      return p;
    }
  }

  bool typeOK = typeGE(cfg, sigma, tau);
  if (s->kind == TermKind::Fun && typeOK) {
    if (t->kind == TermKind::Fun) {
      PrecResult pr = cfg.prec.compare(s->name, t->name);
      // Case 2a.
      if (pr == PrecResult::Greater) {
        auto p = mk("2a", true);
        if (conditionA(ctx, env, s, s->args, t->args, p->aBranch, p->aSubs, depth - 1)) return p;
      }
      // Case 2b.
      if (pr == PrecResult::Equiv) {
        std::function<bool(const TermPtr&, const TermPtr&)> rel =
            [&](const TermPtr& a, const TermPtr& b) {
              return horpoGoal(ctx, env, a, b, depth - 1).has_value();
            };
        std::function<bool(const TermPtr&, const TermPtr&)> eqr =
            [&](const TermPtr& a, const TermPtr& b) { return alphaEq(a, b); };
        auto p = mk("2b", true);
        bool ext = false;
        if (cfg.statusOf(s->name) == StatusKind::Mul) {
          if (auto d = mulExt<TermPtr>(rel, eqr, s->args, t->args)) {
            p->mulWitness = *d;
            for (auto& [i, j] : d->dominated)
              p->subs.push_back(*horpoGoal(ctx, env, s->args[i], t->args[j], depth - 1));
            ext = true;
          }
        } else if (auto idx = lexExt<TermPtr>(rel, eqr, s->args, t->args)) {
          p->witnessIndex = static_cast<int>(*idx);
          p->subs.push_back(*horpoGoal(ctx, env, s->args[*idx], t->args[*idx], depth - 1));
          ext = true;
        }
        if (ext && conditionA(ctx, env, s, s->args, t->args, p->aBranch, p->aSubs, depth - 1))
          return p;
      }
    }
    // Case 2c: application right-hand side.
    if (t->kind == TermKind::App) {
      for (auto& flat : leftFlattenings(t)) {
        auto p = mk("2c", true);
        if (conditionA(ctx, env, s, s->args, flat, p->aBranch, p->aSubs, depth - 1)) return p;
      }
    }
  }
  if (s->kind == TermKind::App && typeOK) {
    // Case 3c: beta.
    if (s->fun->kind == TermKind::Abs) {
      Substitution sub{{s->fun->name, s->arg}};
      TermPtr contractum = substitute(s->fun->body, sub);
      if (auto q = horpoWeak(ctx, env, contractum, t, depth - 1)) {
        auto p = mk("3c", true);
        p->subs.push_back(*q);
        return p;
      }
    }
    // Case 3a: multiset of the two halves.
    if (t->kind == TermKind::App) {
      std::function<bool(const TermPtr&, const TermPtr&)> rel =
          [&](const TermPtr& a, const TermPtr& b) {
            return horpoGoal(ctx, env, a, b, depth - 1).has_value();
          };
      std::function<bool(const TermPtr&, const TermPtr&)> eqr =
          [&](const TermPtr& a, const TermPtr& b) { return alphaEq(a, b); };
      std::vector<TermPtr> sHalves{s->fun, s->arg};
      std::vector<TermPtr> tHalves{t->fun, t->arg};
      if (auto d = mulExt<TermPtr>(rel, eqr, sHalves, tHalves)) {
        auto p = mk("3a", true);
        p->mulWitness = *d;
        for (auto& [i, j] : d->dominated)
          p->subs.push_back(*horpoGoal(ctx, env, sHalves[i], tHalves[j], depth - 1));
        return p;
      }
    }
    // Case 3b: application subterm.
    for (int side = 1; side <= 2; ++side) {
      const TermPtr& u = side == 1 ? s->fun : s->arg;
      if (auto q = horpoWeak(ctx, env, u, t, depth - 1)) {
        auto p = mk("3b", true);
        p->witnessIndex = side;
        p->subs.push_back(*q);
        return p;
      }
    }
  }
  if (s->kind == TermKind::Abs && typeOK) {
    // Case 4c: eta.
    if (s->body->kind == TermKind::App && s->body->arg->kind == TermKind::Var &&
        s->body->arg->name == s->name && !freeVars(s->body->fun).count(s->name)) {
      if (auto q = horpoWeak(ctx, env, s->body->fun, t, depth - 1)) {
        auto p = mk("4c", true);
        p->subs.push_back(*q);
        return p;
      }
    }
    // Case 4a: abstraction vs abstraction with equivalent binder types.
    if (t->kind == TermKind::Abs && typeEQ(cfg, s->varType, t->varType)) {
      std::string z = s->name;
      if (env.count(z) || freeVars(t).count(z)) {
        z = freshName(s->name, {s->body, t->body, t});
        while (env.count(z)) z += "_";
      }
      Substitution renS{{s->name, mkVar(z)}};
      Substitution renT{{t->name, mkVar(z)}};
      TermPtr su = s->name == z ? s->body : substitute(s->body, renS);
      TermPtr tv = t->name == z ? t->body : substitute(t->body, renT);
      Environment inner = env;
      inner[z] = s->varType;
      if (auto q = horpoGoal(ctx, inner, su, tv, depth - 1)) {
        auto p = mk("4a", true);
        p->subs.push_back(*q);
        return p;
      }
    }
    // Case 4b: abstraction subterm.
    {
      std::string z = s->name;
      TermPtr body = s->body;
      if (env.count(z) || freeVars(t).count(z) || boundVars(t).count(z)) {
        z = freshName(s->name, {s->body, t});
        while (env.count(z)) z += "_";
        Substitution ren{{s->name, mkVar(z)}};
        body = substitute(s->body, ren);
      }
      Environment inner = env;
      inner[z] = s->varType;
      if (!freeVars(t).count(z)) {
        if (auto q = horpoWeak(ctx, inner, body, t, depth - 1)) {
          auto p = mk("4b", true);
          p->subs.push_back(*q);
          return p;
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<ChorpoProofPtr> closureGoal(Ctx& ctx, const Environment& env, const TermPtr& s,
                                          const XContext& X, const TermPtr& t, int depth) {
  if (depth <= 0) {
    ctx.hitBudget = true;
    return std::nullopt;
  }
  const SignatureConfig& cfg = ctx.cfg;
  auto mk = [&](const std::string& tag) {
    auto p = std::make_shared<ChorpoProof>();
    p->kind = ChorpoKind::Closure;
    p->caseTag = tag;
    p->lhs = s;
    p->rhs = t;
    p->X = X;
    return p;
  };

  // Case 1: t is a context variable.
  if (t->kind == TermKind::Var)
    for (auto& [x, ty] : X)
      if (x == t->name) return mk("1");

  // Case 5 before 2/3/4: applications split along the full left-flattening.
  if (t->kind == TermKind::App) {
    auto flats = leftFlattenings(t);
    // Longest spine = full flattening.
    const std::vector<TermPtr>& flat = flats.front();
    std::vector<ChorpoProofPtr> subs;
    bool ok = true;
    for (auto& piece : flat) {
      auto q = closureGoal(ctx, env, s, X, piece, depth - 1);
      if (!q) {
        ok = false;
        break;
      }
      subs.push_back(*q);
    }
    if (ok) {
      auto p = mk("5");
      p->subs = std::move(subs);
      return p;
    }
  }

  // Case 2: an accessible argument covers t.
  for (std::size_t i = 0; i < s->args.size(); ++i) {
    auto acc = accessible(ctx, cfg, s, i);
    if (!acc) continue;
    const TermPtr& si = s->args[i];
    if (alphaEq(si, t)) {
      auto p = mk("2");
      p->witnessIndex = static_cast<int>(i);
      p->access = acc;
      return p;
    }
    if (si->kind == TermKind::Fun) {
      if (auto q = closureGoal(ctx, env, si, X, t, depth - 1)) {
        auto p = mk("2");
        p->witnessIndex = static_cast<int>(i);
        p->access = acc;
        p->subs.push_back(*q);
        return p;
      }
    }
  }

  if (t->kind == TermKind::Fun) {
    PrecResult pr = cfg.prec.compare(s->name, t->name);
    // Case 3: strictly smaller head.
    if (pr == PrecResult::Greater) {
      std::vector<ChorpoProofPtr> subs;
      bool ok = true;
      for (auto& v : t->args) {
        auto q = closureGoal(ctx, env, s, X, v, depth - 1);
        if (!q) {
          ok = false;
          break;
        }
        subs.push_back(*q);
      }
      if (ok) {
        auto p = mk("3");
        p->subs = std::move(subs);
        return p;
      }
    }
    // Case 4: equivalent head; every argument covered, accessible arguments
    // beat the X-abstracted right arguments under the status.
    if (pr == PrecResult::Equiv) {
      std::vector<AccessEvidence> evid;
      bool allAccessible = true;
      for (std::size_t i = 0; i < s->args.size(); ++i) {
        auto acc = accessible(ctx, cfg, s, i);
        if (!acc) {
          allAccessible = false;
          break;
        }
        evid.push_back(*acc);
      }
      if (allAccessible) {
        std::vector<ChorpoProofPtr> subs;
        bool ok = true;
        for (auto& v : t->args) {
          auto q = closureGoal(ctx, env, s, X, v, depth - 1);
          if (!q) {
            ok = false;
            break;
          }
          subs.push_back(*q);
        }
        if (ok) {
          Environment envX = env;
          for (auto& [x, ty] : X) envX[x] = ty;
          std::vector<TermPtr> rhsAbs;
          for (auto& v : t->args) rhsAbs.push_back(abstractOverX(X, v));
          std::function<bool(const TermPtr&, const TermPtr&)> rel =
              [&](const TermPtr& a, const TermPtr& b) {
                return horpoGoal(ctx, envX, a, b, depth - 1).has_value();
              };
          std::function<bool(const TermPtr&, const TermPtr&)> eqr =
              [&](const TermPtr& a, const TermPtr& b) { return alphaEq(a, b); };
          auto p = mk("4");
          p->accessAll = evid;
          p->subs = std::move(subs);
          bool ext = false;
          if (cfg.statusOf(s->name) == StatusKind::Mul) {
            if (auto d = mulExt<TermPtr>(rel, eqr, s->args, rhsAbs)) {
              p->mulWitness = *d;
              for (auto& [i, j] : d->dominated)
                p->subs.push_back(*horpoGoal(ctx, envX, s->args[i], rhsAbs[j], depth - 1));
              ext = true;
            }
          } else if (auto idx = lexExt<TermPtr>(rel, eqr, s->args, rhsAbs)) {
            p->witnessIndex = static_cast<int>(*idx);
            p->subs.push_back(*horpoGoal(ctx, envX, s->args[*idx], rhsAbs[*idx], depth - 1));
            ext = true;
          }
          if (ext) return p;
        }
      }
    }
  }

  // Case 6: abstraction extends the context.
  if (t->kind == TermKind::Abs) {
    TermPtr fresh = t;
    bool clash = env.count(t->name) || freeVars(s).count(t->name);
    for (auto& [x, ty] : X) clash = clash || x == t->name;
    if (clash) {
      std::string z = freshName(t->name, {s, t->body});
      bool bad = true;
      while (bad) {
        bad = env.count(z) > 0;
        for (auto& [x, ty] : X) bad = bad || x == z;
        if (bad) z += "_";
      }
      Substitution ren{{t->name, mkVar(z)}};
      fresh = mkAbs(z, t->varType, substitute(t->body, ren));
    }
    XContext X2 = X;
    X2.emplace_back(fresh->name, fresh->varType);
    if (auto q = closureGoal(ctx, env, s, X2, fresh->body, depth - 1)) {
      auto p = mk("6");
      p->subs.push_back(*q);
      return p;
    }
  }

  return std::nullopt;
}

}  // namespace

ChorpoOutcome chorpoGT(const SignatureConfig& cfg, const Environment& env, const TermPtr& s,
                       const TermPtr& t, const ChorpoBudget& budget) {
  Ctx ctx{cfg, env, budget, false, {}};
  typecheck(cfg.symbols, env, s);
  typecheck(cfg.symbols, env, t);
  ChorpoOutcome out;
  out.proof = horpoGoal(ctx, env, s, t, budget.depth);
  out.hitBudget = ctx.hitBudget;
  return out;
}

ChorpoRuleVerdict chorpoOrientRule(const SignatureConfig& cfg, const RewriteRule& rule,
                                   const ChorpoBudget& budget) {
  ChorpoRuleVerdict v;
  auto out = chorpoGT(cfg, rule.env, rule.lhs, rule.rhs, budget);
  v.accepted = out.proof.has_value();
  v.hitBudget = out.hitBudget;
  if (out.proof) v.proof = *out.proof;
  return v;
}

// ------------------------------------------------------------- checker

namespace {

struct CheckCtx {
  const SignatureConfig& cfg;
  std::vector<TermPtr> ancestry;
};

bool sameX(const XContext& a, const XContext& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || !typeStructEq(a[i].second, b[i].second)) return false;
  return true;
}

bool checkHorpoNode(CheckCtx& ctx, const Environment& env, const ChorpoProofPtr& p);
bool checkClosureNode(CheckCtx& ctx, const Environment& env, const ChorpoProofPtr& p);

bool checkHorpoWeak(CheckCtx& ctx, const Environment& env, const ChorpoProofPtr& p) {
  if (!p) return false;
  if (p->caseTag == "refl") return alphaEq(p->lhs, p->rhs);
  return checkHorpoNode(ctx, env, p);
}

bool checkAccess(CheckCtx& ctx, const Environment& env, const TermPtr& s,
                 const AccessEvidence& e) {
  if (e.argIndex < 0 || s->kind != TermKind::Fun ||
      e.argIndex >= static_cast<int>(s->args.size()))
    return false;
  if (e.clause == 1) {
    for (auto& anc : ctx.ancestry)
      if (alphaEq(anc, s)) return true;
    return false;
  }
  if (e.clause == 2) {
    const FunctionSymbol& f = ctx.cfg.symbols.get(s->name);
    Polarity p = polarity(ctx.cfg, rootSort(f.resultType)->sort, f.argTypes[e.argIndex]);
    return p == Polarity::Positive || p == Polarity::Absent;
  }
  return false;
}

bool checkConditionA(CheckCtx& ctx, const Environment& env, const ChorpoProofPtr& p,
                     const std::vector<TermPtr>& sArgs, const std::vector<TermPtr>& tArgs) {
  if (p->aBranch.size() != tArgs.size() || p->aSubs.size() != tArgs.size()) return false;
  for (std::size_t j = 0; j < tArgs.size(); ++j) {
    const ChorpoProofPtr& sub = p->aSubs[j];
    if (!sub || sub->caseTag == "refl" || !alphaEq(sub->rhs, tArgs[j])) return false;
    if (p->aBranch[j] == -1) {
      if (!alphaEq(sub->lhs, p->lhs)) return false;
    } else {
      std::size_t i = static_cast<std::size_t>(p->aBranch[j]);
      if (i >= sArgs.size() || !alphaEq(sub->lhs, sArgs[i])) return false;
    }
    if (!checkHorpoNode(ctx, env, sub)) return false;
  }
  return true;
}

bool checkHorpoNode(CheckCtx& ctx, const Environment& env, const ChorpoProofPtr& p) {
  if (!p || p->kind != ChorpoKind::Horpo) return false;
  const SignatureConfig& cfg = ctx.cfg;
  const TermPtr& s = p->lhs;
  const TermPtr& t = p->rhs;
  {
    auto fvS = freeVars(s);
    for (auto& x : freeVars(t))
      if (!fvS.count(x)) return false;
  }
  TypePtr sigma, tau;
  try {
    sigma = typecheck(cfg.symbols, env, s);
    tau = typecheck(cfg.symbols, env, t);
  } catch (const TypeError&) {
    return false;
  }
  if (p->caseTag == "1") {
    // No type evidence may appear on a case-1 node.
    if (p->lhsType || p->rhsType) return false;
    if (s->kind != TermKind::Fun || p->subs.size() != 1) return false;
    const ChorpoProofPtr& sub = p->subs[0];
    if (!sub || sub->kind != ChorpoKind::Closure || !sub->X.empty()) return false;
    if (!alphaEq(sub->lhs, s) || !alphaEq(sub->rhs, t)) return false;
    ctx.ancestry.push_back(s);
    bool ok = checkClosureNode(ctx, env, sub);
    ctx.ancestry.pop_back();
    return ok;
  }
  // Cases 2-4 require the embedded type evidence to be present and true.
  if (!p->lhsType || !p->rhsType) return false;
  if (!typeEQ(cfg, sigma, p->lhsType) || !typeEQ(cfg, tau, p->rhsType)) return false;
  if (!typeGE(cfg, sigma, tau)) return false;

  if (p->caseTag == "2a") {
    if (s->kind != TermKind::Fun || t->kind != TermKind::Fun) return false;
    if (cfg.prec.compare(s->name, t->name) != PrecResult::Greater) return false;
    return checkConditionA(ctx, env, p, s->args, t->args);
  }
  if (p->caseTag == "2b") {
    if (s->kind != TermKind::Fun || t->kind != TermKind::Fun) return false;
    if (cfg.prec.compare(s->name, t->name) != PrecResult::Equiv) return false;
    if (cfg.statusOf(s->name) == StatusKind::Mul) {
      if (!p->mulWitness) return false;
    } else {
      int idx = p->witnessIndex;
      if (idx < 0 || idx >= static_cast<int>(s->args.size()) ||
          s->args.size() != t->args.size() || p->subs.empty())
        return false;
      for (int j = 0; j < idx; ++j)
        if (!alphaEq(s->args[j], t->args[j])) return false;
      const ChorpoProofPtr& sub = p->subs[0];
      if (!sub || sub->caseTag == "refl" || !alphaEq(sub->lhs, s->args[idx]) ||
          !alphaEq(sub->rhs, t->args[idx]) || !checkHorpoNode(ctx, env, sub))
        return false;
    }
    return checkConditionA(ctx, env, p, s->args, t->args);
  }
  if (p->caseTag == "2c") {
    if (s->kind != TermKind::Fun || t->kind != TermKind::App) return false;
    // Recover the flattening from the A-evidence arity.
    for (auto& flat : leftFlattenings(t))
      if (flat.size() == p->aBranch.size() && checkConditionA(ctx, env, p, s->args, flat))
        return true;
    return false;
  }
  if (p->caseTag == "3a") {
    if (s->kind != TermKind::App || t->kind != TermKind::App || !p->mulWitness) return false;
    std::vector<TermPtr> sH{s->fun, s->arg}, tH{t->fun, t->arg};
    const MulDecomposition& d = *p->mulWitness;
    std::vector<bool> yCov(2, false), xKept(2, false);
    for (auto& [i, j] : d.kept) {
      if (i >= 2 || j >= 2 || xKept[i] || yCov[j] || !alphaEq(sH[i], tH[j])) return false;
      xKept[i] = true;
      yCov[j] = true;
    }
    if (d.kept.size() == 2 || d.dominated.size() != p->subs.size()) return false;
    for (std::size_t k = 0; k < d.dominated.size(); ++k) {
      auto [i, j] = d.dominated[k];
      if (i >= 2 || j >= 2 || xKept[i] || yCov[j]) return false;
      yCov[j] = true;
      const ChorpoProofPtr& sub = p->subs[k];
      if (!sub || sub->caseTag == "refl" || !alphaEq(sub->lhs, sH[i]) ||
          !alphaEq(sub->rhs, tH[j]) || !checkHorpoNode(ctx, env, sub))
        return false;
    }
    for (bool c : yCov)
      if (!c) return false;
    return true;
  }
  if (p->caseTag == "3b") {
    if (s->kind != TermKind::App || p->subs.size() != 1) return false;
    if (p->witnessIndex != 1 && p->witnessIndex != 2) return false;
    const TermPtr& u = p->witnessIndex == 1 ? s->fun : s->arg;
    const ChorpoProofPtr& sub = p->subs[0];
    return sub && alphaEq(sub->lhs, u) && alphaEq(sub->rhs, t) && checkHorpoWeak(ctx, env, sub);
  }
  if (p->caseTag == "3c") {
    if (s->kind != TermKind::App || s->fun->kind != TermKind::Abs || p->subs.size() != 1)
      return false;
    Substitution sub{{s->fun->name, s->arg}};
    TermPtr contractum = substitute(s->fun->body, sub);
    const ChorpoProofPtr& q = p->subs[0];
    return q && alphaEq(q->lhs, contractum) && alphaEq(q->rhs, t) && checkHorpoWeak(ctx, env, q);
  }
  if (p->caseTag == "4a") {
    if (s->kind != TermKind::Abs || t->kind != TermKind::Abs ||
        !typeEQ(cfg, s->varType, t->varType) || p->subs.size() != 1)
      return false;
    const ChorpoProofPtr& sub = p->subs[0];
    if (!sub || sub->caseTag == "refl") return false;
    std::set<std::string> cands = freeVars(sub->lhs);
    auto r = freeVars(sub->rhs);
    cands.insert(r.begin(), r.end());
    cands.insert(s->name);
    for (auto& x : cands) {
      if (!alphaEq(mkAbs(x, s->varType, sub->lhs), s)) continue;
      if (!alphaEq(mkAbs(x, t->varType, sub->rhs), t)) continue;
      Environment inner = env;
      inner[x] = s->varType;
      return checkHorpoNode(ctx, inner, sub);
    }
    return false;
  }
  if (p->caseTag == "4b") {
    if (s->kind != TermKind::Abs || p->subs.size() != 1) return false;
    const ChorpoProofPtr& sub = p->subs[0];
    if (!sub || !alphaEq(sub->rhs, t)) return false;
    std::set<std::string> cands = freeVars(sub->lhs);
    cands.insert(s->name);
    for (auto& x : cands) {
      if (env.count(x) && x != s->name) continue;
      if (!alphaEq(mkAbs(x, s->varType, sub->lhs), s)) continue;
      if (freeVars(t).count(x)) return false;
      Environment inner = env;
      inner[x] = s->varType;
      return checkHorpoWeak(ctx, inner, sub);
    }
    // Binder unused in the body.
    if (alphaEq(sub->lhs, s->body) && !freeVars(s->body).count(s->name))
      return checkHorpoWeak(ctx, env, sub);
    return false;
  }
  if (p->caseTag == "4c") {
    if (s->kind != TermKind::Abs || s->body->kind != TermKind::App ||
        s->body->arg->kind != TermKind::Var || s->body->arg->name != s->name ||
        freeVars(s->body->fun).count(s->name) || p->subs.size() != 1)
      return false;
    const ChorpoProofPtr& q = p->subs[0];
    return q && alphaEq(q->lhs, s->body->fun) && alphaEq(q->rhs, t) &&
           checkHorpoWeak(ctx, env, q);
  }
  return false;
}

bool checkClosureNode(CheckCtx& ctx, const Environment& env, const ChorpoProofPtr& p) {
  if (!p || p->kind != ChorpoKind::Closure) return false;
  const SignatureConfig& cfg = ctx.cfg;
  const TermPtr& s = p->lhs;
  const TermPtr& t = p->rhs;
  if (s->kind != TermKind::Fun) return false;
  Environment envX = env;
  for (auto& [x, ty] : p->X) envX[x] = ty;

  if (p->caseTag == "1") {
    if (t->kind != TermKind::Var) return false;
    for (auto& [x, ty] : p->X)
      if (x == t->name) return true;
    return false;
  }
  if (p->caseTag == "2") {
    int i = p->witnessIndex;
    if (i < 0 || i >= static_cast<int>(s->args.size()) || !p->access) return false;
    if (p->access->argIndex != i || !checkAccess(ctx, env, s, *p->access)) return false;
    const TermPtr& si = s->args[i];
    if (p->subs.empty()) return alphaEq(si, t);
    const ChorpoProofPtr& sub = p->subs[0];
    return sub && sub->kind == ChorpoKind::Closure && alphaEq(sub->lhs, si) &&
           alphaEq(sub->rhs, t) && sameX(sub->X, p->X) && checkClosureNode(ctx, env, sub);
  }
  if (p->caseTag == "3" || p->caseTag == "4") {
    if (t->kind != TermKind::Fun) return false;
    PrecResult pr = cfg.prec.compare(s->name, t->name);
    std::size_t n = t->args.size();
    if (p->caseTag == "3") {
      if (pr != PrecResult::Greater || p->subs.size() != n) return false;
    } else {
      if (pr != PrecResult::Equiv || p->subs.size() < n) return false;
    }
    for (std::size_t j = 0; j < n; ++j) {
      const ChorpoProofPtr& sub = p->subs[j];
      if (!sub || sub->kind != ChorpoKind::Closure || !alphaEq(sub->lhs, s) ||
          !alphaEq(sub->rhs, t->args[j]) || !sameX(sub->X, p->X) || !checkClosureNode(ctx, env, sub))
        return false;
    }
    if (p->caseTag == "3") return true;
    // Case 4: accessibility of every argument plus the status comparison.
    if (p->accessAll.size() != s->args.size()) return false;
    for (std::size_t i = 0; i < s->args.size(); ++i)
      if (p->accessAll[i].argIndex != static_cast<int>(i) ||
          !checkAccess(ctx, env, s, p->accessAll[i]))
        return false;
    std::vector<TermPtr> rhsAbs;
    for (auto& v : t->args) {
      TermPtr a = v;
      for (auto it = p->X.rbegin(); it != p->X.rend(); ++it)
        a = mkAbs(it->first, it->second, a);
      rhsAbs.push_back(a);
    }
    if (cfg.statusOf(s->name) == StatusKind::Mul) {
      if (!p->mulWitness) return false;
      const MulDecomposition& d = *p->mulWitness;
      std::vector<bool> yCov(rhsAbs.size(), false), xKept(s->args.size(), false);
      std::size_t k = n;  // strict subproofs stored after the n argument subs
      for (auto& [i, j] : d.kept) {
        if (i >= s->args.size() || j >= rhsAbs.size() || xKept[i] || yCov[j] ||
            !alphaEq(s->args[i], rhsAbs[j]))
          return false;
        xKept[i] = true;
        yCov[j] = true;
      }
      if (d.kept.size() == s->args.size()) return false;
      if (p->subs.size() != n + d.dominated.size()) return false;
      for (auto& [i, j] : d.dominated) {
        if (i >= s->args.size() || j >= rhsAbs.size() || xKept[i] || yCov[j]) return false;
        yCov[j] = true;
        const ChorpoProofPtr& sub = p->subs[k++];
        if (!sub || sub->kind != ChorpoKind::Horpo || sub->caseTag == "refl" ||
            !alphaEq(sub->lhs, s->args[i]) || !alphaEq(sub->rhs, rhsAbs[j]) ||
            !checkHorpoNode(ctx, envX, sub))
          return false;
      }
      for (bool c : yCov)
        if (!c) return false;
      return true;
    }
    int idx = p->witnessIndex;
    if (idx < 0 || idx >= static_cast<int>(s->args.size()) ||
        s->args.size() != rhsAbs.size() || p->subs.size() != n + 1)
      return false;
    for (int j = 0; j < idx; ++j)
      if (!alphaEq(s->args[j], rhsAbs[j])) return false;
    const ChorpoProofPtr& sub = p->subs[n];
    return sub && sub->kind == ChorpoKind::Horpo && sub->caseTag != "refl" &&
           alphaEq(sub->lhs, s->args[idx]) && alphaEq(sub->rhs, rhsAbs[idx]) &&
           checkHorpoNode(ctx, envX, sub);
  }
  if (p->caseTag == "5") {
    if (t->kind != TermKind::App) return false;
    auto flats = leftFlattenings(t);
    const std::vector<TermPtr>& flat = flats.front();
    if (p->subs.size() != flat.size()) return false;
    for (std::size_t j = 0; j < flat.size(); ++j) {
      const ChorpoProofPtr& sub = p->subs[j];
      if (!sub || sub->kind != ChorpoKind::Closure || !alphaEq(sub->lhs, s) ||
          !alphaEq(sub->rhs, flat[j]) || !sameX(sub->X, p->X) || !checkClosureNode(ctx, env, sub))
        return false;
    }
    return true;
  }
  if (p->caseTag == "6") {
    if (t->kind != TermKind::Abs || p->subs.size() != 1) return false;
    const ChorpoProofPtr& sub = p->subs[0];
    if (!sub || sub->kind != ChorpoKind::Closure || !alphaEq(sub->lhs, s)) return false;
    if (sub->X.size() != p->X.size() + 1) return false;
    for (std::size_t i = 0; i < p->X.size(); ++i)
      if (sub->X[i].first != p->X[i].first ||
          !typeStructEq(sub->X[i].second, p->X[i].second))
        return false;
    auto& [z, zTy] = sub->X.back();
    if (!typeStructEq(zTy, t->varType)) return false;
    if (env.count(z) || freeVars(s).count(z)) return false;
    for (auto& [x, ty] : p->X)
      if (x == z) return false;
    Substitution ren{{t->name, mkVar(z)}};
    TermPtr body = t->name == z ? t->body : substitute(t->body, ren);
    return alphaEq(sub->rhs, body) && checkClosureNode(ctx, env, sub);
  }
  return false;
}

}  // namespace

bool chorpoCheckProof(const SignatureConfig& cfg, const Environment& env,
                      const ChorpoProofPtr& proof) {
  if (!proof || proof->kind != ChorpoKind::Horpo || proof->caseTag == "refl") return false;
  try {
    CheckCtx ctx{cfg, {}};
    return checkHorpoNode(ctx, env, proof);
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace hrs
