#pragma once
// Lexicographic and multiset extensions of an arbitrary strict relation.

#include <functional>
#include <optional>
#include <vector>

namespace hrs {

// Equal-length lexicographic extension: returns the first index i such that
// xs[j] eq ys[j] for all j < i and rel(xs[i], ys[i]); components after i are
// unconstrained. nullopt when no such index (including the all-equal case).
template <typename T>
std::optional<std::size_t> lexExt(const std::function<bool(const T&, const T&)>& rel,
                                  const std::function<bool(const T&, const T&)>& eq,
                                  const std::vector<T>& xs, const std::vector<T>& ys) {
  if (xs.size() != ys.size()) return std::nullopt;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (eq(xs[i], ys[i])) continue;
    if (rel(xs[i], ys[i])) return i;
    return std::nullopt;
  }
  return std::nullopt;
}

// Witness for the Dershowitz–Manna one-shot decomposition: ys = (xs − X) ⊎ Y
// with X nonempty and every y ∈ Y dominated by some x ∈ X.
struct MulDecomposition {
  std::vector<std::pair<std::size_t, std::size_t>> kept;       // eq-matched (x index, y index)
  std::vector<std::pair<std::size_t, std::size_t>> dominated;  // rel-witness (x index, y index)
};

// Multiset extension: true iff a decomposition exists; backtracking search
// over eq-matchings, domination deferred to the end (X = unmatched xs).
template <typename T>
std::optional<MulDecomposition> mulExt(const std::function<bool(const T&, const T&)>& rel,
                                       const std::function<bool(const T&, const T&)>& eq,
                                       const std::vector<T>& xs, const std::vector<T>& ys) {
  std::vector<int> matchOfY(ys.size(), -1);  // xs index or -1 = dominated
  std::vector<bool> usedX(xs.size(), false);

  std::function<std::optional<MulDecomposition>(std::size_t)> go =
      [&](std::size_t j) -> std::optional<MulDecomposition> {
    if (j == ys.size()) {
      MulDecomposition d;
      std::vector<std::size_t> X;
      for (std::size_t i = 0; i < xs.size(); ++i)
        if (!usedX[i]) X.push_back(i);
      if (X.empty()) return std::nullopt;
      for (std::size_t y = 0; y < ys.size(); ++y) {
        if (matchOfY[y] >= 0) {
          d.kept.emplace_back(static_cast<std::size_t>(matchOfY[y]), y);
          continue;
        }
        bool found = false;
        for (auto i : X) {
          if (rel(xs[i], ys[y])) {
            d.dominated.emplace_back(i, y);
            found = true;
            break;
          }
        }
        if (!found) return std::nullopt;
      }
      return d;
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (usedX[i] || !eq(xs[i], ys[j])) continue;
      usedX[i] = true;
      matchOfY[j] = static_cast<int>(i);
      if (auto d = go(j + 1)) return d;
      usedX[i] = false;
      matchOfY[j] = -1;
    }
    matchOfY[j] = -1;  // leave j to domination
    if (auto d = go(j + 1)) return d;
    return std::nullopt;
  };
  return go(0);
}

}  // namespace hrs
