// tests/support/oracles.hpp - Independent oracles the implementation is
// checked against: brute-force merge semantics and brute-force graph
// closure/cycle enumeration. These must stay free of the production
// algorithms they verify.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "xrl/model.hpp"

namespace xrl_test
{

/// Reference merge semantics: copy the defaults, then write every override
/// key on top (explicit key wins). Order follows the defaults declaration.
inline xrl::ParamMap merge_oracle(const xrl::ParamMap & defaults,
                                  const xrl::ParamMap & overrides)
{
  xrl::ParamMap out;
  for (const auto & e : defaults.entries()) out.set(e.name, e.value);
  for (const auto & e : overrides.entries()) out.set(e.name, e.value);
  return out;
}

// ---------------------------------------------------------------------------
// Brute-force directed graph oracle (adjacency matrix; n <= 10 in tests)
// ---------------------------------------------------------------------------

struct OracleGraph
{
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  bool has_edge(int a, int b) const
  {
    return std::find(edges.begin(), edges.end(), std::make_pair(a, b)) != edges.end();
  }
};

/// Reachability as a fixpoint over the full vertex set.
inline std::set<int> oracle_closure(const OracleGraph & g, int from, bool forward)
{
  std::set<int> seen;
  if (from < 0 || from >= g.n) return seen;
  seen.insert(from);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto & [a, b] : g.edges) {
      int src = forward ? a : b;
      int dst = forward ? b : a;
      if (seen.count(src) && !seen.count(dst)) {
        seen.insert(dst);
        changed = true;
      }
    }
  }
  return seen;
}

/// Every elementary cycle by plain path search: a cycle is canonically
/// rooted at its smallest vertex, so the search only walks vertices larger
/// than the root.
inline std::vector<std::vector<int>> oracle_cycles(const OracleGraph & g)
{
  std::vector<std::vector<int>> cycles;
  std::vector<int> path;
  std::vector<bool> on_path(static_cast<std::size_t>(g.n), false);

  std::function<void(int, int)> walk = [&](int root, int v) {
    path.push_back(v);
    on_path[static_cast<std::size_t>(v)] = true;
    for (const auto & [a, b] : g.edges) {
      if (a != v) continue;
      if (b == root) {
        cycles.push_back(path);
      } else if (b > root && !on_path[static_cast<std::size_t>(b)]) {
        walk(root, b);
      }
    }
    on_path[static_cast<std::size_t>(v)] = false;
    path.pop_back();
  };

  for (int root = 0; root < g.n; ++root) walk(root, root);
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

/// A valid topological order contains each vertex once and never places an
/// edge target before its source.
inline bool oracle_is_topological(const OracleGraph & g, const std::vector<int> & order)
{
  if (static_cast<int>(order.size()) != g.n) return false;
  std::map<int, int> position;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (position.count(order[i])) return false;
    position[order[i]] = static_cast<int>(i);
  }
  for (const auto & [a, b] : g.edges)
    if (position.at(a) >= position.at(b)) return false;
  return true;
}

/// Sparse random digraph without duplicate edges or self-loops.
inline OracleGraph random_graph(std::mt19937 & rng, int max_vertices = 10)
{
  OracleGraph g;
  std::uniform_int_distribution<int> n_dist(1, max_vertices);
  g.n = n_dist(rng);
  std::uniform_int_distribution<int> m_dist(0, g.n + g.n / 2);
  int m = m_dist(rng);
  std::uniform_int_distribution<int> v_dist(0, g.n - 1);
  for (int i = 0; i < m; ++i) {
    int a = v_dist(rng), b = v_dist(rng);
    if (a == b || g.has_edge(a, b)) continue;
    g.edges.emplace_back(a, b);
  }
  return g;
}

}  // namespace xrl_test
