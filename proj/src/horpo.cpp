#include "hrs/horpo.hpp"

#include <map>

#include "hrs/typeorder.hpp"

namespace hrs {

namespace {

struct Ctx {
  const SignatureConfig& cfg;
  // Results keyed by alpha-normalized goal; within one top-level call every
  // free variable has a single type, so the key is sound.
  std::map<std::string, std::optional<HorpoProofPtr>> memo;
};

std::optional<HorpoProofPtr> gt(Ctx& ctx, const Environment& env, const TermPtr& s,
                                const TermPtr& t);

std::optional<HorpoProofPtr> ge(Ctx& ctx, const Environment& env, const TermPtr& s,
                                const TermPtr& t) {
  if (alphaEq(s, t)) {
    auto p = std::make_shared<HorpoProof>();
    p->lhs = s;
    p->rhs = t;
    p->ruleCase = 0;
    return p;
  }
  return gt(ctx, env, s, t);
}

// Rename the binder of an abstraction so it clashes neither with env nor
// with the given terms; returns the renamed abstraction.
TermPtr freshenBinder(const Environment& env, const TermPtr& abs,
                      const std::vector<TermPtr>& avoid) {
  bool clash = env.count(abs->name) > 0;
  for (auto& t : avoid) {
    if (clash) break;
    auto fv = freeVars(t);
    auto bv = boundVars(t);
    clash = fv.count(abs->name) || bv.count(abs->name);
  }
  if (!clash) return abs;
  std::vector<TermPtr> all = avoid;
  all.push_back(abs->body);
  std::string z = abs->name;
  // Also avoid every name in env.
  std::set<std::string> used;
  for (auto& [n, ty] : env) used.insert(n);
  for (auto& t : all) {
    auto f = freeVars(t);
    auto b = boundVars(t);
    used.insert(f.begin(), f.end());
    used.insert(b.begin(), b.end());
  }
  if (used.count(z)) {
    for (int i = 0;; ++i) {
      std::string cand = abs->name + "_" + std::to_string(i);
      if (!used.count(cand)) {
        z = cand;
        break;
      }
    }
  }
  Substitution sub{{abs->name, mkVar(z)}};
  return mkAbs(z, abs->varType, substitute(abs->body, sub));
}

bool conditionA(Ctx& ctx, const Environment& env, const TermPtr& s,
                const std::vector<TermPtr>& sArgs, const std::vector<TermPtr>& tArgs,
                std::vector<int>& branch, std::vector<HorpoProofPtr>& subs) {
  for (auto& v : tArgs) {
    if (auto p = gt(ctx, env, s, v)) {
      branch.push_back(-1);
      subs.push_back(*p);
      continue;
    }
    bool done = false;
    for (std::size_t i = 0; i < sArgs.size() && !done; ++i) {
      if (auto p = ge(ctx, env, sArgs[i], v)) {
        branch.push_back(static_cast<int>(i));
        subs.push_back(*p);
        done = true;
      }
    }
    if (!done) return false;
  }
  return true;
}

std::optional<HorpoProofPtr> gtUncached(Ctx& ctx, const Environment& env, const TermPtr& s,
                                        const TermPtr& t) {
  const SignatureConfig& cfg = ctx.cfg;
  TypePtr sigma = typecheck(cfg.symbols, env, s);
  TypePtr tau = typecheck(cfg.symbols, env, t);
  if (!typeGE(cfg, sigma, tau)) return std::nullopt;

  auto mk = [&](int c) {
    auto p = std::make_shared<HorpoProof>();
    p->lhs = s;
    p->rhs = t;
    p->lhsType = sigma;
    p->rhsType = tau;
    p->ruleCase = c;
    return p;
  };

  // Case 11 (beta): s = @(\x.u, v) and u{x -> v} >= t.
  if (s->kind == TermKind::App && s->fun->kind == TermKind::Abs) {
    Substitution sub{{s->fun->name, s->arg}};
    TermPtr contractum = substitute(s->fun->body, sub);
    if (auto q = ge(ctx, env, contractum, t)) {
      auto p = mk(11);
      p->subs.push_back(*q);
      return p;
    }
  }
  // Case 12 (eta): s = \x.@(u, x) with x not free in u, and u >= t.
  if (s->kind == TermKind::Abs && s->body->kind == TermKind::App &&
      s->body->arg->kind == TermKind::Var && s->body->arg->name == s->name &&
      !freeVars(s->body->fun).count(s->name)) {
    if (auto q = ge(ctx, env, s->body->fun, t)) {
      auto p = mk(12);
      p->subs.push_back(*q);
      return p;
    }
  }

  if (s->kind == TermKind::Fun) {
    // Case 1: some argument of s is >= t.
    for (std::size_t i = 0; i < s->args.size(); ++i) {
      if (auto q = ge(ctx, env, s->args[i], t)) {
        auto p = mk(1);
        p->witnessIndex = static_cast<int>(i);
        p->subs.push_back(*q);
        return p;
      }
    }
    if (t->kind == TermKind::Fun) {
      PrecResult pr = cfg.prec.compare(s->name, t->name);
      // Case 2: precedence with condition A.
      if (pr == PrecResult::Greater) {
        auto p = mk(2);
        if (conditionA(ctx, env, s, s->args, t->args, p->aBranch, p->aSubs)) return p;
      }
      if (pr == PrecResult::Equiv) {
        std::function<bool(const TermPtr&, const TermPtr&)> rel =
            [&](const TermPtr& a, const TermPtr& b) { return gt(ctx, env, a, b).has_value(); };
        std::function<bool(const TermPtr&, const TermPtr&)> eqr =
            [&](const TermPtr& a, const TermPtr& b) { return alphaEq(a, b); };
        if (cfg.statusOf(s->name) == StatusKind::Mul) {
          // Case 3.
          if (auto d = mulExt<TermPtr>(rel, eqr, s->args, t->args)) {
            auto p = mk(3);
            p->mulWitness = *d;
            for (auto& [i, j] : d->dominated)
              p->subs.push_back(*gt(ctx, env, s->args[i], t->args[j]));
            return p;
          }
        } else {
          // Case 4: lexicographic with condition A.
          if (auto idx = lexExt<TermPtr>(rel, eqr, s->args, t->args)) {
            auto p = mk(4);
            p->witnessIndex = static_cast<int>(*idx);
            p->subs.push_back(*gt(ctx, env, s->args[*idx], t->args[*idx]));
            if (conditionA(ctx, env, s, s->args, t->args, p->aBranch, p->aSubs)) return p;
          }
        }
      }
    }
  }
  // Case 5: application subterm.
  if (s->kind == TermKind::App) {
    for (int side = 1; side <= 2; ++side) {
      const TermPtr& u = side == 1 ? s->fun : s->arg;
      if (auto q = ge(ctx, env, u, t)) {
        auto p = mk(5);
        p->witnessIndex = side;
        p->subs.push_back(*q);
        return p;
      }
    }
  }
  // Case 6: abstraction subterm, binder not free in t.
  if (s->kind == TermKind::Abs) {
    TermPtr s2 = freshenBinder(env, s, {t});
    Environment inner = env;
    inner[s2->name] = s2->varType;
    if (!freeVars(t).count(s2->name)) {
      if (auto q = ge(ctx, inner, s2->body, t)) {
        auto p = mk(6);
        p->subs.push_back(*q);
        return p;
      }
    }
  }
  if (s->kind == TermKind::Fun) {
    // Case 7: against a partial left-flattening of an application.
    if (t->kind == TermKind::App) {
      for (auto& flat : leftFlattenings(t)) {
        auto p = mk(7);
        p->flattening = flat;
        if (conditionA(ctx, env, s, s->args, flat, p->aBranch, p->aSubs)) return p;
      }
    }
    // Case 8: against an abstraction whose binder does not occur in its body
    // (transcribed as stated; flagged because it makes the body closed).
    if (t->kind == TermKind::Abs && !freeVars(t->body).count(t->name)) {
      if (auto q = gt(ctx, env, s, t->body)) {
        auto p = mk(8);
        p->vacuousAbstraction = true;
        p->subs.push_back(*q);
        return p;
      }
    }
  }
  // Case 9: application vs application, multiset of the two halves.
  if (s->kind == TermKind::App && t->kind == TermKind::App) {
    std::function<bool(const TermPtr&, const TermPtr&)> rel =
        [&](const TermPtr& a, const TermPtr& b) { return gt(ctx, env, a, b).has_value(); };
    std::function<bool(const TermPtr&, const TermPtr&)> eqr =
        [&](const TermPtr& a, const TermPtr& b) { return alphaEq(a, b); };
    std::vector<TermPtr> sHalves{s->fun, s->arg};
    for (auto& flat : leftFlattenings(t)) {
      if (auto d = mulExt<TermPtr>(rel, eqr, sHalves, flat)) {
        auto p = mk(9);
        p->flattening = flat;
        p->mulWitness = *d;
        for (auto& [i, j] : d->dominated) p->subs.push_back(*gt(ctx, env, sHalves[i], flat[j]));
        return p;
      }
    }
  }
  // Case 10: abstraction vs abstraction with equivalent binder types.
  if (s->kind == TermKind::Abs && t->kind == TermKind::Abs &&
      typeEQ(cfg, s->varType, t->varType)) {
    TermPtr s2 = freshenBinder(env, s, {t});
    Substitution sub{{t->name, mkVar(s2->name)}};
    TermPtr tBody = substitute(t->body, sub);
    Environment inner = env;
    inner[s2->name] = s2->varType;
    if (auto q = gt(ctx, inner, s2->body, tBody)) {
      auto p = mk(10);
      p->subs.push_back(*q);
      return p;
    }
  }
  return std::nullopt;
}

std::optional<HorpoProofPtr> gt(Ctx& ctx, const Environment& env, const TermPtr& s,
                                const TermPtr& t) {
  std::string key = alphaKey(s) + "|" + alphaKey(t);
  auto it = ctx.memo.find(key);
  if (it != ctx.memo.end()) return it->second;
  // Break potential re-entrancy conservatively: mark as failed while computing.
  ctx.memo[key] = std::nullopt;
  auto result = gtUncached(ctx, env, s, t);
  ctx.memo[key] = result;
  return result;
}

// ------------------------------------------------------------- checker

bool checkNode(const SignatureConfig& cfg, const Environment& env, const HorpoProofPtr& p);

bool checkWeak(const SignatureConfig& cfg, const Environment& env, const HorpoProofPtr& p) {
  if (!p) return false;
  if (p->ruleCase == 0) return alphaEq(p->lhs, p->rhs);
  return checkNode(cfg, env, p);
}

bool checkA(const SignatureConfig& cfg, const Environment& env, const HorpoProofPtr& p,
            const std::vector<TermPtr>& sArgs, const std::vector<TermPtr>& tArgs) {
  if (p->aBranch.size() != tArgs.size() || p->aSubs.size() != tArgs.size()) return false;
  for (std::size_t j = 0; j < tArgs.size(); ++j) {
    const HorpoProofPtr& sub = p->aSubs[j];
    if (!sub || !alphaEq(sub->rhs, tArgs[j])) return false;
    if (p->aBranch[j] == -1) {
      if (!alphaEq(sub->lhs, p->lhs) || sub->ruleCase == 0 || !checkNode(cfg, env, sub))
        return false;
    } else {
      std::size_t i = static_cast<std::size_t>(p->aBranch[j]);
      if (i >= sArgs.size() || !alphaEq(sub->lhs, sArgs[i]) || !checkWeak(cfg, env, sub))
        return false;
    }
  }
  return true;
}

bool checkNode(const SignatureConfig& cfg, const Environment& env, const HorpoProofPtr& p) {
  if (!p) return false;
  const TermPtr& s = p->lhs;
  const TermPtr& t = p->rhs;
  // Recompute and verify the embedded type evidence.
  TypePtr sigma, tau;
  try {
    sigma = typecheck(cfg.symbols, env, s);
    tau = typecheck(cfg.symbols, env, t);
  } catch (const TypeError&) {
    return false;
  }
  if (!p->lhsType || !p->rhsType) return false;
  if (!typeEQ(cfg, sigma, p->lhsType) || !typeEQ(cfg, tau, p->rhsType)) return false;
  if (!typeGE(cfg, sigma, tau)) return false;

  switch (p->ruleCase) {
    case 1: {
      if (s->kind != TermKind::Fun || p->witnessIndex < 0 ||
          p->witnessIndex >= static_cast<int>(s->args.size()) || p->subs.size() != 1)
        return false;
      const HorpoProofPtr& sub = p->subs[0];
      return alphaEq(sub->lhs, s->args[p->witnessIndex]) && alphaEq(sub->rhs, t) &&
             checkWeak(cfg, env, sub);
    }
    case 2:
      if (s->kind != TermKind::Fun || t->kind != TermKind::Fun) return false;
      if (cfg.prec.compare(s->name, t->name) != PrecResult::Greater) return false;
      return checkA(cfg, env, p, s->args, t->args);
    case 3: {
      if (s->kind != TermKind::Fun || t->kind != TermKind::Fun ||
          cfg.prec.compare(s->name, t->name) != PrecResult::Equiv ||
          cfg.statusOf(s->name) != StatusKind::Mul || !p->mulWitness)
        return false;
      const MulDecomposition& d = *p->mulWitness;
      std::vector<bool> yCovered(t->args.size(), false), xKept(s->args.size(), false);
      for (auto& [i, j] : d.kept) {
        if (i >= s->args.size() || j >= t->args.size() || xKept[i] || yCovered[j]) return false;
        if (!alphaEq(s->args[i], t->args[j])) return false;
        xKept[i] = true;
        yCovered[j] = true;
      }
      if (d.kept.size() == s->args.size()) return false;
      if (d.dominated.size() != p->subs.size()) return false;
      for (std::size_t k = 0; k < d.dominated.size(); ++k) {
        auto [i, j] = d.dominated[k];
        if (i >= s->args.size() || j >= t->args.size() || xKept[i] || yCovered[j]) return false;
        yCovered[j] = true;
        const HorpoProofPtr& sub = p->subs[k];
        if (!alphaEq(sub->lhs, s->args[i]) || !alphaEq(sub->rhs, t->args[j]) ||
            sub->ruleCase == 0 || !checkNode(cfg, env, sub))
          return false;
      }
      for (bool c : yCovered)
        if (!c) return false;
      return true;
    }
    case 4: {
      if (s->kind != TermKind::Fun || t->kind != TermKind::Fun ||
          cfg.prec.compare(s->name, t->name) != PrecResult::Equiv ||
          cfg.statusOf(s->name) != StatusKind::Lex || s->args.size() != t->args.size())
        return false;
      int idx = p->witnessIndex;
      if (idx < 0 || idx >= static_cast<int>(s->args.size()) || p->subs.size() != 1) return false;
      for (int j = 0; j < idx; ++j)
        if (!alphaEq(s->args[j], t->args[j])) return false;
      const HorpoProofPtr& sub = p->subs[0];
      if (!alphaEq(sub->lhs, s->args[idx]) || !alphaEq(sub->rhs, t->args[idx]) ||
          sub->ruleCase == 0 || !checkNode(cfg, env, sub))
        return false;
      return checkA(cfg, env, p, s->args, t->args);
    }
    case 5: {
      if (s->kind != TermKind::App || p->subs.size() != 1) return false;
      const TermPtr& u = p->witnessIndex == 1 ? s->fun : s->arg;
      if (p->witnessIndex != 1 && p->witnessIndex != 2) return false;
      const HorpoProofPtr& sub = p->subs[0];
      return alphaEq(sub->lhs, u) && alphaEq(sub->rhs, t) && checkWeak(cfg, env, sub);
    }
    case 6: {
      if (s->kind != TermKind::Abs || p->subs.size() != 1) return false;
      const HorpoProofPtr& sub = p->subs[0];
      // The stored subproof's lhs must be the body under some renaming of the
      // binder that avoids capture in t.
      if (!alphaEq(sub->rhs, t)) return false;
      // Accept when lambda(binder).storedLhs is alpha-equal to s and the
      // binder is not free in t.
      for (auto& cand : {s->name, std::string("_ck")}) {
        Substitution ren{{s->name, mkVar(cand)}};
        TermPtr body = cand == s->name ? s->body : substitute(s->body, ren);
        if (!alphaEq(body, sub->lhs)) continue;
        if (freeVars(t).count(cand)) return false;
        Environment inner = env;
        inner[cand] = s->varType;
        return checkWeak(cfg, inner, sub);
      }
      // Fall back: recover the binder name from the stored lhs directly.
      {
        std::set<std::string> fv = freeVars(sub->lhs);
        for (auto& x : fv) {
          if (env.count(x)) continue;
          if (freeVars(t).count(x)) continue;
          if (!alphaEq(mkAbs(x, s->varType, sub->lhs), s)) continue;
          Environment inner = env;
          inner[x] = s->varType;
          return checkWeak(cfg, inner, sub);
        }
        // Binder unused in the body.
        if (alphaEq(sub->lhs, s->body) && boundVars(s).count(s->name) &&
            !freeVars(s->body).count(s->name))
          return checkWeak(cfg, env, sub);
      }
      return false;
    }
    case 7: {
      if (s->kind != TermKind::Fun || t->kind != TermKind::App) return false;
      // The stored flattening must re-assemble to t.
      if (p->flattening.size() < 2) return false;
      TermPtr re = p->flattening[0];
      for (std::size_t i = 1; i < p->flattening.size(); ++i) re = mkApp(re, p->flattening[i]);
      if (!alphaEq(re, t)) return false;
      return checkA(cfg, env, p, s->args, p->flattening);
    }
    case 8: {
      if (s->kind != TermKind::Fun || t->kind != TermKind::Abs ||
          freeVars(t->body).count(t->name) || p->subs.size() != 1)
        return false;
      const HorpoProofPtr& sub = p->subs[0];
      return alphaEq(sub->lhs, s) && alphaEq(sub->rhs, t->body) && sub->ruleCase != 0 &&
             checkNode(cfg, env, sub);
    }
    case 9: {
      if (s->kind != TermKind::App || t->kind != TermKind::App || !p->mulWitness) return false;
      if (p->flattening.size() < 2) return false;
      TermPtr re = p->flattening[0];
      for (std::size_t i = 1; i < p->flattening.size(); ++i) re = mkApp(re, p->flattening[i]);
      if (!alphaEq(re, t)) return false;
      std::vector<TermPtr> sHalves{s->fun, s->arg};
      const MulDecomposition& d = *p->mulWitness;
      std::vector<bool> yCovered(p->flattening.size(), false), xKept(2, false);
      for (auto& [i, j] : d.kept) {
        if (i >= 2 || j >= p->flattening.size() || xKept[i] || yCovered[j]) return false;
        if (!alphaEq(sHalves[i], p->flattening[j])) return false;
        xKept[i] = true;
        yCovered[j] = true;
      }
      if (d.kept.size() == 2) return false;
      if (d.dominated.size() != p->subs.size()) return false;
      for (std::size_t k = 0; k < d.dominated.size(); ++k) {
        auto [i, j] = d.dominated[k];
        if (i >= 2 || j >= p->flattening.size() || xKept[i] || yCovered[j]) return false;
        yCovered[j] = true;
        const HorpoProofPtr& sub = p->subs[k];
        if (!alphaEq(sub->lhs, sHalves[i]) || !alphaEq(sub->rhs, p->flattening[j]) ||
            sub->ruleCase == 0 || !checkNode(cfg, env, sub))
          return false;
      }
      for (bool c : yCovered)
        if (!c) return false;
      return true;
    }
    case 10: {
      if (s->kind != TermKind::Abs || t->kind != TermKind::Abs ||
          !typeEQ(cfg, s->varType, t->varType) || p->subs.size() != 1)
        return false;
      const HorpoProofPtr& sub = p->subs[0];
      if (sub->ruleCase == 0) return false;
      // lambda(x).subLhs must equal s and lambda(x).subRhs must equal t for
      // the binder x used in the stored bodies.
      std::set<std::string> cands = freeVars(sub->lhs);
      auto rcands = freeVars(sub->rhs);
      cands.insert(rcands.begin(), rcands.end());
      cands.insert(s->name);
      for (auto& x : cands) {
        if (!alphaEq(mkAbs(x, s->varType, sub->lhs), s)) continue;
        if (!alphaEq(mkAbs(x, t->varType, sub->rhs), t)) continue;
        Environment inner = env;
        inner[x] = s->varType;
        return checkNode(cfg, inner, sub);
      }
      return false;
    }
    case 11: {
      if (s->kind != TermKind::App || s->fun->kind != TermKind::Abs || p->subs.size() != 1)
        return false;
      Substitution sub{{s->fun->name, s->arg}};
      TermPtr contractum = substitute(s->fun->body, sub);
      const HorpoProofPtr& q = p->subs[0];
      return alphaEq(q->lhs, contractum) && alphaEq(q->rhs, t) && checkWeak(cfg, env, q);
    }
    case 12: {
      if (s->kind != TermKind::Abs || s->body->kind != TermKind::App ||
          s->body->arg->kind != TermKind::Var || s->body->arg->name != s->name ||
          freeVars(s->body->fun).count(s->name) || p->subs.size() != 1)
        return false;
      const HorpoProofPtr& q = p->subs[0];
      return alphaEq(q->lhs, s->body->fun) && alphaEq(q->rhs, t) && checkWeak(cfg, env, q);
    }
    default: return false;
  }
}

}  // namespace

std::optional<HorpoProofPtr> horpoGT(const SignatureConfig& cfg, const Environment& env,
                                     const TermPtr& s, const TermPtr& t) {
  Ctx ctx{cfg, {}};
  typecheck(cfg.symbols, env, s);
  typecheck(cfg.symbols, env, t);
  return gt(ctx, env, s, t);
}

bool horpoCheckProof(const SignatureConfig& cfg, const Environment& env,
                     const HorpoProofPtr& proof) {
  if (!proof || proof->ruleCase == 0) return false;
  try {
    return checkNode(cfg, env, proof);
  } catch (const std::exception&) {
    return false;
  }
}

HorpoVerdict horpoOrientRule(const SignatureConfig& cfg, const RewriteRule& rule) {
  HorpoVerdict v;
  auto p = horpoGT(cfg, rule.env, rule.lhs, rule.rhs);
  v.accepted = p.has_value();
  if (p) v.proof = *p;
  return v;
}

}  // namespace hrs
