#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "relfix/space.hpp"

namespace relfix {

enum class ChainDirection { Ascending, Descending };

inline const char* chain_direction_name(ChainDirection d) {
  return d == ChainDirection::Ascending ? "asc" : "desc";
}

// An epsilon-monotonic chain witness: consecutive vertices related in the
// stated direction, every step strictly below epsilon.
struct Chain {
  std::vector<std::size_t> vertices;
  ChainDirection direction = ChainDirection::Ascending;
  double epsilon = 0.0;
  std::vector<double> step_dists;

  std::size_t hops() const { return step_dists.size(); }
  double max_step() const {
    double m = 0.0;
    for (double s : step_dists) m = std::max(m, s);
    return m;
  }
};

// Re-verifies a chain against an instance, independent of how it was found.
inline bool verify_chain(const FiniteInstance& inst, const Chain& chain,
                         std::size_t x, std::size_t y) {
  if (chain.vertices.empty()) return false;
  if (chain.vertices.front() != x || chain.vertices.back() != y) return false;
  if (chain.step_dists.size() + 1 != chain.vertices.size()) return false;
  for (std::size_t i = 1; i < chain.vertices.size(); ++i) {
    const std::size_t a = chain.vertices[i - 1];
    const std::size_t b = chain.vertices[i];
    const bool related = chain.direction == ChainDirection::Ascending
                             ? inst.relation.holds(a, b)
                             : inst.relation.holds(b, a);
    if (!related) return false;
    const double step = inst.d(a, b);
    if (!(step < chain.epsilon)) return false;
    if (step != chain.step_dists[i - 1]) return false;
  }
  return true;
}

namespace detail {

// Lexicographically smallest shortest path from x to y over the edge
// predicate (u -> v admissible). BFS from y over reversed edges gives
// hop counts to the target; a greedy forward walk picking the smallest
// admissible successor on a shortest route is then lexicographically
// minimal among all minimum-hop vertex sequences.
template <typename EdgeFn>
std::optional<std::vector<std::size_t>> lex_min_shortest_path(
    std::size_t n, std::size_t x, std::size_t y, EdgeFn edge) {
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> hops_to_target(n, kInf);
  std::deque<std::size_t> queue;
  hops_to_target[y] = 0;
  queue.push_back(y);
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t u = 0; u < n; ++u) {
      if (u == v || hops_to_target[u] != kInf) continue;
      if (edge(u, v)) {
        hops_to_target[u] = hops_to_target[v] + 1;
        queue.push_back(u);
      }
    }
  }
  if (hops_to_target[x] == kInf) return std::nullopt;
  std::vector<std::size_t> path{x};
  std::size_t cur = x;
  while (cur != y) {
    const std::size_t need = hops_to_target[cur] - 1;
    std::size_t next = kInf;
    for (std::size_t v = 0; v < n; ++v) {
      if (v == cur) continue;
      if (hops_to_target[v] == need && edge(cur, v)) {
        next = v;
        break;  // smallest index first
      }
    }
    path.push_back(next);
    cur = next;
  }
  return path;
}

}  // namespace detail

// Minimal-hop epsilon-monotonic chain from x to y, Ascending tried first.
// x == y is trivially chained with zero hops even under irreflexive
// relations.
inline std::optional<Chain> find_monotonic_chain(const FiniteInstance& inst,
                                                 std::size_t x, std::size_t y,
                                                 double epsilon) {
  const std::size_t n = inst.size();
  if (x >= n || y >= n)
    throw InvalidInput("find_monotonic_chain: point index out of range");
  if (!(epsilon > 0.0)) throw InvalidInput("find_monotonic_chain: epsilon <= 0");

  if (x == y) return Chain{{x}, ChainDirection::Ascending, epsilon, {}};

  const auto build = [&](const std::vector<std::size_t>& path,
                         ChainDirection dir) {
    Chain c;
    c.vertices = path;
    c.direction = dir;
    c.epsilon = epsilon;
    for (std::size_t i = 1; i < path.size(); ++i)
      c.step_dists.push_back(inst.d(path[i - 1], path[i]));
    return c;
  };

  const auto ascending_edge = [&](std::size_t u, std::size_t v) {
    return inst.relation.holds(u, v) && inst.d(u, v) < epsilon;
  };
  if (auto path = detail::lex_min_shortest_path(n, x, y, ascending_edge))
    return build(*path, ChainDirection::Ascending);

  const auto descending_edge = [&](std::size_t u, std::size_t v) {
    return inst.relation.holds(v, u) && inst.d(u, v) < epsilon;
  };
  if (auto path = detail::lex_min_shortest_path(n, x, y, descending_edge))
    return build(*path, ChainDirection::Descending);

  return std::nullopt;
}

struct ChainabilityReport {
  bool chainable = true;
  double epsilon = 0.0;
  // First comparable pair (lexicographic) with no chain in either direction.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

// Definition 2(v): every comparable pair must be joined by a chain.
inline ChainabilityReport check_chainable(const FiniteInstance& inst,
                                          double epsilon) {
  ChainabilityReport report;
  report.epsilon = epsilon;
  const std::size_t n = inst.size();
  for (std::size_t i = 0; i < n && report.chainable; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!is_comparable(inst.relation, i, j)) continue;
      if (!find_monotonic_chain(inst, i, j, epsilon)) {
        report.chainable = false;
        report.witness = {i, j};
        break;
      }
    }
  return report;
}

// Smallest epsilon at which the whole instance is chainable: the max over
// comparable pairs of the minimax chain bottleneck, bumped by one ulp so the
// strict step inequality holds.
inline double chainability_threshold(const FiniteInstance& inst) {
  const std::size_t n = inst.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  bool any_comparable = false;
  for (std::size_t i = 0; i < n && !any_comparable; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (inst.relation.holds(i, j)) {
        any_comparable = true;
        break;
      }
  if (!any_comparable)
    throw NoComparablePairs("chainability_threshold: relation is empty");

  // Minimax closure over ascending edges; descending chains are reversed
  // ascending chains, so the pair bottleneck is min(B[i][j], B[j][i]).
  std::vector<double> bottleneck(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) {
    bottleneck[i * n + i] = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && inst.relation.holds(i, j))
        bottleneck[i * n + j] = inst.d(i, j);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const double ik = bottleneck[i * n + k];
      if (ik == kInf) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double via = std::max(ik, bottleneck[k * n + j]);
        if (via < bottleneck[i * n + j]) bottleneck[i * n + j] = via;
      }
    }

  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!is_comparable(inst.relation, i, j)) continue;
      worst = std::max(worst,
                       std::min(bottleneck[i * n + j], bottleneck[j * n + i]));
    }
  return std::nextafter(worst, kInf);
}

}  // namespace relfix
