#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cliquelist/graph.hpp"

namespace cliquelist {

/// The edges one simulated node has learned, with bitset adjacency.
///
/// This is the listing a node performs on its own knowledge at the end of a
/// protocol. It is kept separate from the reference oracle on purpose.
class KnownEdges {
 public:
  explicit KnownEdges(std::span<const Edge> edges);

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_edges() const { return num_edges_; }
  bool knows(NodeId a, NodeId b) const;

  using Emit = std::function<void(std::span<const NodeId>)>;

  /// Every p-clique that contains all of `required` and otherwise only nodes
  /// accepted by `allowed` (nullptr accepts all). Nodes are passed to `emit`
  /// in increasing order.
  void for_each_clique(std::size_t p, std::span<const NodeId> required,
                       const std::function<bool(NodeId)>& allowed, const Emit& emit) const;

  CliqueSet cliques(std::size_t p) const;
  CliqueSet cliques_containing(std::size_t p, NodeId v) const;

 private:
  using Bits = std::vector<std::uint64_t>;
  std::int64_t local(NodeId v) const;
  void extend(std::size_t p, std::vector<std::uint32_t>& partial, const Bits& candidates, const Emit& emit,
              std::vector<NodeId>& scratch) const;

  std::vector<NodeId> nodes_;  // sorted
  std::vector<Bits> adj_;
  std::size_t words_ = 0;
  std::size_t num_edges_ = 0;
};

}  // namespace cliquelist
