#include "hrs/rpo.hpp"

namespace hrs {

namespace {

void requireFirstOrder(const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var: return;
    case TermKind::Abs:
    case TermKind::App:
      throw NotFirstOrder("term is not first-order algebraic: " + showTerm(t));
    case TermKind::Fun:
      for (auto& a : t->args) requireFirstOrder(a);
      return;
  }
}

std::optional<RpoProofPtr> gt(const SignatureConfig& cfg, const TermPtr& s, const TermPtr& t);

// s >= t: syntactic equality (first-order, so alpha is trivial) or s > t.
std::optional<RpoProofPtr> ge(const SignatureConfig& cfg, const TermPtr& s, const TermPtr& t) {
  if (alphaEq(s, t)) {
    auto p = std::make_shared<RpoProof>();
    p->lhs = s;
    p->rhs = t;
    p->ruleCase = 0;
    return p;
  }
  return gt(cfg, s, t);
}

// Condition A: every v in t's arguments satisfies s > v or u >= v for some
// argument u of s. Tries s > v first for deterministic traces.
bool conditionA(const SignatureConfig& cfg, const TermPtr& s, const std::vector<TermPtr>& tArgs,
                std::vector<int>& branch, std::vector<RpoProofPtr>& subs) {
  for (auto& v : tArgs) {
    if (auto p = gt(cfg, s, v)) {
      branch.push_back(-1);
      subs.push_back(*p);
      continue;
    }
    bool done = false;
    for (std::size_t i = 0; i < s->args.size() && !done; ++i) {
      if (auto p = ge(cfg, s->args[i], v)) {
        branch.push_back(static_cast<int>(i));
        subs.push_back(*p);
        done = true;
      }
    }
    if (!done) return false;
  }
  return true;
}

std::optional<RpoProofPtr> gt(const SignatureConfig& cfg, const TermPtr& s, const TermPtr& t) {
  if (s->kind != TermKind::Fun) return std::nullopt;  // variables are minimal
  cfg.symbols.get(s->name);
  auto mk = [&](int c) {
    auto p = std::make_shared<RpoProof>();
    p->lhs = s;
    p->rhs = t;
    p->ruleCase = c;
    return p;
  };
  // Case 1: some argument u >= t.
  for (std::size_t i = 0; i < s->args.size(); ++i) {
    if (auto sub = ge(cfg, s->args[i], t)) {
      auto p = mk(1);
      p->witnessIndex = static_cast<int>(i);
      p->subs.push_back(*sub);
      return p;
    }
  }
  if (t->kind != TermKind::Fun) return std::nullopt;
  cfg.symbols.get(t->name);
  PrecResult pr = cfg.prec.compare(s->name, t->name);
  // Case 2: precedence plus condition A.
  if (pr == PrecResult::Greater) {
    auto p = mk(2);
    if (conditionA(cfg, s, t->args, p->aBranch, p->aSubs)) return p;
  }
  if (pr == PrecResult::Equiv) {
    std::function<bool(const TermPtr&, const TermPtr&)> rel =
        [&](const TermPtr& a, const TermPtr& b) { return gt(cfg, a, b).has_value(); };
    std::function<bool(const TermPtr&, const TermPtr&)> eqr =
        [&](const TermPtr& a, const TermPtr& b) { return alphaEq(a, b); };
    if (cfg.statusOf(s->name) == StatusKind::Mul) {
      // Case 3: multiset extension.
      if (auto d = mulExt<TermPtr>(rel, eqr, s->args, t->args)) {
        auto p = mk(3);
        p->mulWitness = *d;
        for (auto& [i, j] : d->dominated) p->subs.push_back(*gt(cfg, s->args[i], t->args[j]));
        return p;
      }
    } else {
      // Case 4: lexicographic extension plus condition A.
      if (auto idx = lexExt<TermPtr>(rel, eqr, s->args, t->args)) {
        auto p = mk(4);
        p->witnessIndex = static_cast<int>(*idx);
        p->subs.push_back(*gt(cfg, s->args[*idx], t->args[*idx]));
        if (conditionA(cfg, s, t->args, p->aBranch, p->aSubs)) return p;
      }
    }
  }
  return std::nullopt;
}

bool checkNode(const SignatureConfig& cfg, const RpoProofPtr& p);

bool checkWeak(const SignatureConfig& cfg, const RpoProofPtr& p) {
  if (!p) return false;
  if (p->ruleCase == 0) return alphaEq(p->lhs, p->rhs);
  return checkNode(cfg, p);
}

bool checkA(const SignatureConfig& cfg, const RpoProofPtr& p, const std::vector<TermPtr>& tArgs) {
  if (p->aBranch.size() != tArgs.size() || p->aSubs.size() != tArgs.size()) return false;
  for (std::size_t j = 0; j < tArgs.size(); ++j) {
    const RpoProofPtr& sub = p->aSubs[j];
    if (!sub || !alphaEq(sub->rhs, tArgs[j])) return false;
    if (p->aBranch[j] == -1) {
      if (!alphaEq(sub->lhs, p->lhs) || sub->ruleCase == 0 || !checkNode(cfg, sub)) return false;
    } else {
      std::size_t i = static_cast<std::size_t>(p->aBranch[j]);
      if (i >= p->lhs->args.size() || !alphaEq(sub->lhs, p->lhs->args[i]) ||
          !checkWeak(cfg, sub))
        return false;
    }
  }
  return true;
}

bool checkNode(const SignatureConfig& cfg, const RpoProofPtr& p) {
  if (!p || p->lhs->kind != TermKind::Fun) return false;
  const TermPtr& s = p->lhs;
  const TermPtr& t = p->rhs;
  switch (p->ruleCase) {
    case 1: {
      if (p->witnessIndex < 0 || p->witnessIndex >= static_cast<int>(s->args.size())) return false;
      if (p->subs.size() != 1) return false;
      const RpoProofPtr& sub = p->subs[0];
      return alphaEq(sub->lhs, s->args[p->witnessIndex]) && alphaEq(sub->rhs, t) &&
             checkWeak(cfg, sub);
    }
    case 2: {
      if (t->kind != TermKind::Fun) return false;
      if (cfg.prec.compare(s->name, t->name) != PrecResult::Greater) return false;
      return checkA(cfg, p, t->args);
    }
    case 3: {
      if (t->kind != TermKind::Fun || cfg.prec.compare(s->name, t->name) != PrecResult::Equiv ||
          cfg.statusOf(s->name) != StatusKind::Mul || !p->mulWitness)
        return false;
      const MulDecomposition& d = *p->mulWitness;
      // The decomposition must cover every y exactly once, use each kept x at
      // most once, keep only equal pairs, leave X nonempty, and dominate every
      // remaining y through a valid strict subproof.
      std::vector<bool> yCovered(t->args.size(), false), xKept(s->args.size(), false);
      for (auto& [i, j] : d.kept) {
        if (i >= s->args.size() || j >= t->args.size() || xKept[i] || yCovered[j]) return false;
        if (!alphaEq(s->args[i], t->args[j])) return false;
        xKept[i] = true;
        yCovered[j] = true;
      }
      if (d.kept.size() == s->args.size()) return false;  // X empty
      if (d.dominated.size() != p->subs.size()) return false;
      for (std::size_t k = 0; k < d.dominated.size(); ++k) {
        auto [i, j] = d.dominated[k];
        if (i >= s->args.size() || j >= t->args.size() || xKept[i] || yCovered[j]) return false;
        yCovered[j] = true;
        const RpoProofPtr& sub = p->subs[k];
        if (!alphaEq(sub->lhs, s->args[i]) || !alphaEq(sub->rhs, t->args[j]) ||
            sub->ruleCase == 0 || !checkNode(cfg, sub))
          return false;
      }
      for (bool c : yCovered)
        if (!c) return false;
      return true;
    }
    case 4: {
      if (t->kind != TermKind::Fun || cfg.prec.compare(s->name, t->name) != PrecResult::Equiv ||
          cfg.statusOf(s->name) != StatusKind::Lex)
        return false;
      if (s->args.size() != t->args.size()) return false;
      int idx = p->witnessIndex;
      if (idx < 0 || idx >= static_cast<int>(s->args.size()) || p->subs.size() != 1) return false;
      for (int j = 0; j < idx; ++j)
        if (!alphaEq(s->args[j], t->args[j])) return false;
      const RpoProofPtr& sub = p->subs[0];
      if (!alphaEq(sub->lhs, s->args[idx]) || !alphaEq(sub->rhs, t->args[idx]) ||
          sub->ruleCase == 0 || !checkNode(cfg, sub))
        return false;
      return checkA(cfg, p, t->args);
    }
    default: return false;
  }
}

}  // namespace

std::optional<RpoProofPtr> rpoGT(const SignatureConfig& cfg, const TermPtr& s, const TermPtr& t) {
  requireFirstOrder(s);
  requireFirstOrder(t);
  return gt(cfg, s, t);
}

bool rpoCheckProof(const SignatureConfig& cfg, const RpoProofPtr& proof) {
  if (!proof) return false;
  try {
    return proof->ruleCase != 0 && checkNode(cfg, proof);
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace hrs
