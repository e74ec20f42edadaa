#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cliquelist/graph.hpp"

namespace cliquelist {

/// Subgraph relabeled to local indices 0..k-1.
struct LocalGraph {
  std::vector<NodeId> nodes;                       // local -> global, sorted
  std::vector<std::vector<std::uint32_t>> adj;     // local adjacency
  std::size_t num_edges = 0;

  /// Keeps only edges with both endpoints in `members`.
  static LocalGraph induced(std::span<const NodeId> members, std::span<const Edge> edges);

  std::size_t size() const { return nodes.size(); }
  std::size_t volume() const { return 2 * num_edges; }
};

/// cut(S) / min(vol(S), vol(V \ S)) for the side marked true.
double cut_conductance(const LocalGraph& g, const std::vector<bool>& side);

/// Minimum conductance over all nontrivial cuts; exponential, k <= 24.
/// Graphs with fewer than two nodes have conductance 1 by convention.
double exact_conductance(const LocalGraph& g);

struct SpectralCut {
  double lambda2 = 0.0;           // second-smallest eigenvalue of the normalized Laplacian
  std::vector<bool> side;         // best sweep cut over the Fiedler embedding
  double side_conductance = 1.0;
};

/// Dense eigendecomposition of I - D^{-1/2} A D^{-1/2} plus a sweep cut.
SpectralCut spectral_cut(const LocalGraph& g);

/// A lower bound on conductance: exact when size() <= exact_max_nodes,
/// otherwise the Cheeger bound lambda2 / 2.
double certified_conductance(const LocalGraph& g, std::size_t exact_max_nodes);

}  // namespace cliquelist
