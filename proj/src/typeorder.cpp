#include "hrs/typeorder.hpp"

#include <map>

namespace hrs {

bool typeEQ(const SignatureConfig& cfg, const TypePtr& a, const TypePtr& b) {
  if (a->arrow != b->arrow) return false;
  if (a->arrow) return typeEQ(cfg, a->dom, b->dom) && typeEQ(cfg, a->cod, b->cod);
  if (!cfg.sortPrec.equiv(a->sort, b->sort)) return false;
  if (a->sortArgs.size() != b->sortArgs.size()) return false;
  for (std::size_t i = 0; i < a->sortArgs.size(); ++i)
    if (!typeEQ(cfg, a->sortArgs[i], b->sortArgs[i])) return false;
  return true;
}

TypePtr rootSort(const TypePtr& t) { return t->arrow ? rootSort(t->cod) : t; }

namespace {

// a is a basic type whose sort lies strictly below the root sort of b.
bool guard(const SignatureConfig& cfg, const TypePtr& a, const TypePtr& b) {
  if (a->arrow) return false;
  return cfg.sortPrec.greater(rootSort(b)->sort, a->sort);
}

// t mentions, at some basic position, a sort with something strictly below it.
bool dominating(const SignatureConfig& cfg, const TypePtr& t) {
  if (t->arrow) return dominating(cfg, t->dom) || dominating(cfg, t->cod);
  for (auto& [name, s] : cfg.sorts)
    if (cfg.sortPrec.greater(t->sort, name)) return true;
  return false;
}

}  // namespace

bool typeGT(const SignatureConfig& cfg, const TypePtr& s, const TypePtr& t) {
  if (typeEQ(cfg, s, t)) return false;
  auto ge = [&](const TypePtr& a, const TypePtr& b) {
    return typeEQ(cfg, a, b) || typeGT(cfg, a, b);
  };
  if (s->arrow) {
    const TypePtr& a = s->dom;
    const TypePtr& b = s->cod;
    // Guarded codomain descent: the domain sort is dominated by the codomain's
    // root sort, so the arrow may fall to anything its codomain covers.
    if (guard(cfg, a, b) && ge(b, t)) return true;
    if (t->arrow) {
      const TypePtr& a2 = t->dom;
      const TypePtr& b2 = t->cod;
      // Covariant lift.
      if (ge(a, a2) && ge(b, b2)) return true;
      // Dominated-domain absorption: an unguarded arrow whose domain carries a
      // dominating sort is covered whenever its codomain is.
      if (dominating(cfg, a2) && !guard(cfg, a2, b2) && ge(s, b2)) return true;
    }
    return false;
  }
  // s is a basic type.
  if (t->arrow) {
    const TypePtr& a2 = t->dom;
    const TypePtr& b2 = t->cod;
    if (dominating(cfg, a2) && !guard(cfg, a2, b2) &&
        cfg.sortPrec.equiv(rootSort(b2)->sort, s->sort))
      return true;
  }
  // Parameterized sorts: a basic type covers whatever its sort arguments cover.
  for (auto& u : s->sortArgs)
    if (ge(u, t)) return true;
  return false;
}

bool typeGE(const SignatureConfig& cfg, const TypePtr& a, const TypePtr& b) {
  return typeEQ(cfg, a, b) || typeGT(cfg, a, b);
}

std::vector<TypePtr> enumerateTypes(const SignatureConfig& cfg, int depthBound) {
  // byDepth[d] = types of depth exactly d+1.
  std::vector<std::vector<TypePtr>> byDepth;
  std::vector<TypePtr> all;
  for (int d = 1; d <= depthBound; ++d) {
    std::vector<TypePtr> level;
    if (d == 1) {
      for (auto& [name, s] : cfg.sorts)
        if (s.arity == 0) level.push_back(mkSort(name));
    }
    // Parameterized sorts of depth d: arguments of depth <= d-1.
    if (d > 1) {
      std::vector<TypePtr> smaller;
      for (int k = 0; k < d - 1; ++k)
        smaller.insert(smaller.end(), byDepth[k].begin(), byDepth[k].end());
      for (auto& [name, s] : cfg.sorts) {
        if (s.arity == 0) continue;
        // Only arity 1 is enumerated beyond the trivial case; higher arities
        // would explode the universe and do not occur in the shipped corpus.
        if (s.arity == 1)
          for (auto& a : smaller)
            if (typeDepth(a) == d - 1) level.push_back(mkSort(name, {a}));
      }
      // Arrows of depth d: max component depth = d-1.
      for (auto& a : smaller)
        for (auto& b : smaller)
          if (std::max(typeDepth(a), typeDepth(b)) == d - 1) level.push_back(mkArrow(a, b));
    }
    byDepth.push_back(level);
    all.insert(all.end(), level.begin(), level.end());
  }
  return all;
}

std::vector<Violation> validateTypeOrder(const SignatureConfig& cfg, int depthBound) {
  return validateTypeOrderWith(
      cfg, depthBound, [&](const TypePtr& a, const TypePtr& b) { return typeGT(cfg, a, b); },
      [&](const TypePtr& a, const TypePtr& b) { return typeEQ(cfg, a, b); });
}

std::vector<Violation> validateTypeOrderWith(const SignatureConfig& cfg, int depthBound,
                                             const TypeRel& gt, const TypeRel& eq) {
  std::vector<Violation> out;
  auto ge = [&](const TypePtr& a, const TypePtr& b) { return eq(a, b) || gt(a, b); };
  std::vector<TypePtr> types = enumerateTypes(cfg, depthBound);
  std::size_t n = types.size();

  // (a) Arrow preservation: tau->sigma = alpha iff alpha = tau'->sigma' with
  // tau' = tau and sigma' = sigma.
  for (auto& s : types) {
    if (!s->arrow) continue;
    for (auto& t : types) {
      bool e = eq(s, t);
      bool structural = t->arrow && eq(s->dom, t->dom) && eq(s->cod, t->cod);
      if (e != structural)
        out.push_back({"arrow-preservation",
                       showType(s) + (e ? " = " : " != ") + showType(t) + " disagrees with "
                       "componentwise equality"});
    }
  }
  // (b) Arrow decreasingness.
  for (auto& s : types) {
    if (!s->arrow) continue;
    for (auto& t : types) {
      if (!gt(s, t)) continue;
      bool escape1 = ge(s->cod, t);
      bool escape2 = t->arrow && eq(t->dom, s->dom) && gt(s->cod, t->cod);
      if (!escape1 && !escape2)
        out.push_back({"arrow-decreasingness",
                       showType(s) + " > " + showType(t) + " but neither escape holds"});
    }
  }
  // (c) Arrow monotonicity (within the enumerated universe).
  for (auto& tau : types) {
    for (auto& sigma : types) {
      if (!ge(tau, sigma)) continue;
      for (auto& alpha : types) {
        if (typeDepth(tau) + 1 > depthBound || typeDepth(sigma) + 1 > depthBound ||
            typeDepth(alpha) + 1 > depthBound)
          continue;
        if (!ge(mkArrow(alpha, tau), mkArrow(alpha, sigma)))
          out.push_back({"arrow-monotonicity", showType(tau) + " >= " + showType(sigma) +
                                                   " but codomain lift fails at " +
                                                   showType(alpha)});
        if (!ge(mkArrow(tau, alpha), mkArrow(sigma, alpha)))
          out.push_back({"arrow-monotonicity", showType(tau) + " >= " + showType(sigma) +
                                                   " but domain lift fails at " +
                                                   showType(alpha)});
      }
    }
  }
  // (d) Acyclicity of the strict part over the enumerated universe.
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && gt(types[i], types[j])) adj[i].push_back(j);
  std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
  std::function<bool(std::size_t)> dfs = [&](std::size_t v) {
    state[v] = 1;
    for (auto w : adj[v]) {
      if (state[w] == 1) return true;
      if (state[w] == 0 && dfs(w)) return true;
    }
    state[v] = 2;
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (state[i] == 0 && dfs(i)) {
      out.push_back({"cycle", "strict part has a cycle through " + showType(types[i])});
      break;
    }
  }
  // Irreflexivity of the strict part.
  for (auto& s : types)
    if (gt(s, s)) out.push_back({"irreflexive", showType(s) + " > itself"});
  return out;
}

}  // namespace hrs
