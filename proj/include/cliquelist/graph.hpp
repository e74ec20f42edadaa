#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace cliquelist {

using NodeId = std::uint32_t;
using EdgeIndex = std::size_t;

inline constexpr EdgeIndex kNoEdge = static_cast<EdgeIndex>(-1);

/// Unordered pair, stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  NodeId other(NodeId x) const { return x == u ? v : u; }
  bool has(NodeId x) const { return x == u || x == v; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// An edge together with the endpoint it is directed away from.
struct OrientedEdge {
  NodeId u = 0;
  NodeId v = 0;
  NodeId tail = 0;

  NodeId head() const { return tail == u ? v : u; }
  Edge edge() const { return Edge(u, v); }
};

/// A listed K_p instance: strictly increasing node IDs.
struct Clique {
  std::vector<NodeId> nodes;

  Clique() = default;
  explicit Clique(std::vector<NodeId> ns);

  std::size_t size() const { return nodes.size(); }
  friend auto operator<=>(const Clique&, const Clique&) = default;
  friend bool operator==(const Clique&, const Clique&) = default;
};

/// Sorted, duplicate-free set of cliques.
using CliqueSet = std::vector<Clique>;

/// Sorts and deduplicates in place.
void normalize(CliqueSet& set);
CliqueSet merged(const CliqueSet& a, const CliqueSet& b);

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Immutable simple undirected graph on nodes 0..n-1 with an orientation.
///
/// Edges are kept sorted lexicographically so that edge indices are stable and
/// comparable across graphs built from the same edge set. Every edge carries a
/// tail; graphs built without an explicit orientation direct each edge away
/// from its smaller endpoint.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);
  Graph(std::size_t n, std::vector<Edge> edges);
  /// `tails[i]` is the tail of `edges[i]`; must have the same length.
  Graph(std::size_t n, std::vector<Edge> edges, std::vector<NodeId> tails);
  explicit Graph(std::size_t n, const std::vector<OrientedEdge>& edges);

  std::size_t num_nodes() const { return adj_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeIndex i) const { return edges_[i]; }
  NodeId tail(EdgeIndex i) const { return tails_[i]; }
  NodeId head(EdgeIndex i) const { return edges_[i].other(tails_[i]); }
  OrientedEdge oriented(EdgeIndex i) const {
    return {edges_[i].u, edges_[i].v, tails_[i]};
  }
  std::span<const NodeId> tails() const { return tails_; }

  /// Sorted neighbor list.
  std::span<const NodeId> neighbors(NodeId v) const { return adj_[v]; }
  std::size_t degree(NodeId v) const { return adj_[v].size(); }
  bool adjacent(NodeId a, NodeId b) const;
  EdgeIndex find_edge(NodeId a, NodeId b) const;

  /// Edge indices incident to v, parallel to neighbors(v).
  std::span<const EdgeIndex> incident(NodeId v) const { return inc_[v]; }

  std::vector<std::size_t> out_degrees() const;
  std::size_t max_out_degree() const;
  /// Edges directed away from v.
  std::vector<EdgeIndex> out_edges(NodeId v) const;

  /// Same edges, new orientation.
  Graph reoriented(std::vector<NodeId> tails) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adj_.size() == b.adj_.size() && a.edges_ == b.edges_ && a.tails_ == b.tails_;
  }

 private:
  void build();

  std::vector<Edge> edges_;
  std::vector<NodeId> tails_;
  std::vector<std::vector<NodeId>> adj_;
  std::vector<std::vector<EdgeIndex>> inc_;
};

struct OrientationCertificate {
  std::size_t max_out_degree = 0;
  /// Nodes in the order they were peeled.
  std::vector<NodeId> peel_order;
};

struct OrientedGraph {
  Graph graph;
  OrientationCertificate certificate;
};

/// Min-degree peeling; each edge points from the earlier-peeled endpoint.
/// The resulting max out-degree equals the degeneracy of g.
OrientedGraph degeneracy_orient(const Graph& g);

/// Same node set, edges filtered by `keep`, orientation preserved.
Graph edge_subgraph(const Graph& g, const std::function<bool(const OrientedEdge&)>& keep);
Graph edge_subgraph(const Graph& g, const std::vector<bool>& keep_mask);

/// True iff every pair of `nodes` is adjacent in g.
bool is_clique(const Graph& g, std::span<const NodeId> nodes);

}  // namespace cliquelist
