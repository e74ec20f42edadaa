#pragma once

// Independent reference computations used only by tests.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

#include "cliquelist/graph.hpp"
#include "cliquelist/rng.hpp"

namespace testing_oracles {

using cliquelist::Clique;
using cliquelist::CliqueSet;
using cliquelist::Graph;
using cliquelist::NodeId;

// Every p-subset of the nodes, checked pair by pair.
inline CliqueSet subset_cliques(const Graph& g, std::size_t p) {
  const std::size_t n = g.num_nodes();
  std::vector<bool> adj(n * n, false);
  for (const auto& e : g.edges()) {
    adj[e.u * n + e.v] = true;
    adj[e.v * n + e.u] = true;
  }
  CliqueSet out;
  if (p > n) return out;
  std::vector<NodeId> pick(p);
  std::function<void(std::size_t, NodeId)> rec = [&](std::size_t depth, NodeId from) {
    if (depth == p) {
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = i + 1; j < p; ++j)
          if (!adj[pick[i] * n + pick[j]]) return;
      out.emplace_back(pick);
      return;
    }
    for (NodeId v = from; v < n; ++v) {
      pick[depth] = v;
      rec(depth + 1, v + 1);
    }
  };
  rec(0, 0);
  return out;
}

// Largest minimum degree seen while repeatedly deleting a min-degree node.
inline std::size_t exact_degeneracy(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> deg(n);
  std::vector<bool> gone(n, false);
  for (NodeId v = 0; v < n; ++v) deg[v] = g.degree(v);
  std::size_t best = 0;
  for (std::size_t step = 0; step < n; ++step) {
    NodeId pick = 0;
    std::size_t low = static_cast<std::size_t>(-1);
    for (NodeId v = 0; v < n; ++v) {
      if (!gone[v] && deg[v] < low) {
        low = deg[v];
        pick = v;
      }
    }
    best = std::max(best, low);
    gone[pick] = true;
    for (NodeId w : g.neighbors(pick))
      if (!gone[w]) --deg[w];
  }
  return best;
}

inline bool clique_has_edge(const Clique& c, const std::vector<cliquelist::Edge>& sorted_edges) {
  for (std::size_t i = 0; i < c.nodes.size(); ++i)
    for (std::size_t j = i + 1; j < c.nodes.size(); ++j)
      if (std::binary_search(sorted_edges.begin(), sorted_edges.end(), cliquelist::Edge(c.nodes[i], c.nodes[j])))
        return true;
  return false;
}

inline CliqueSet filter_by_edges(const CliqueSet& all, const std::vector<cliquelist::Edge>& sorted_edges) {
  CliqueSet out;
  for (const auto& c : all)
    if (clique_has_edge(c, sorted_edges)) out.push_back(c);
  return out;
}

inline CliqueSet set_union(CliqueSet a, const CliqueSet& b) {
  a.insert(a.end(), b.begin(), b.end());
  cliquelist::normalize(a);
  return a;
}

// Dense blocks with sparse links between them plus sparse loose nodes; the
// decomposition turns the blocks into clusters that have outside neighbors.
inline Graph clumped(std::size_t blocks, std::size_t block_size, std::size_t loose, double q_in, double q_out,
                     double q_loose, std::uint64_t seed) {
  const std::size_t n = blocks * block_size + loose;
  auto rng = cliquelist::make_stream(seed, 0xb10c);
  std::vector<cliquelist::Edge> es;
  auto block = [&](NodeId v) { return v < blocks * block_size ? static_cast<std::int64_t>(v / block_size) : -1; };
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b) {
      const bool same = block(a) >= 0 && block(a) == block(b);
      const bool is_loose = block(a) < 0 || block(b) < 0;
      if (cliquelist::uniform01(rng) < (same ? q_in : is_loose ? q_loose : q_out)) es.emplace_back(a, b);
    }
  return cliquelist::degeneracy_orient(Graph(n, es)).graph;
}

}  // namespace testing_oracles
