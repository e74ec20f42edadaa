#include "cliquelist/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace cliquelist {

Clique::Clique(std::vector<NodeId> ns) : nodes(std::move(ns)) {
  std::sort(nodes.begin(), nodes.end());
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end()) {
    throw GraphError("clique has a repeated node");
  }
}

void normalize(CliqueSet& set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

CliqueSet merged(const CliqueSet& a, const CliqueSet& b) {
  CliqueSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Graph::Graph(std::size_t n) : adj_(n), inc_(n) {}

Graph::Graph(std::size_t n, std::vector<Edge> edges) : edges_(std::move(edges)), adj_(n), inc_(n) {
  std::sort(edges_.begin(), edges_.end());
  tails_.resize(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) tails_[i] = edges_[i].u;
  build();
}

Graph::Graph(std::size_t n, std::vector<Edge> edges, std::vector<NodeId> tails) : adj_(n), inc_(n) {
  if (edges.size() != tails.size()) throw GraphError("edge/tail length mismatch");
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  edges_.reserve(edges.size());
  tails_.reserve(edges.size());
  for (auto i : order) {
    if (!edges[i].has(tails[i])) {
      throw GraphError("tail " + std::to_string(tails[i]) + " is not an endpoint of its edge");
    }
    edges_.push_back(edges[i]);
    tails_.push_back(tails[i]);
  }
  build();
}

Graph::Graph(std::size_t n, const std::vector<OrientedEdge>& edges) : adj_(n), inc_(n) {
  std::vector<Edge> es;
  std::vector<NodeId> ts;
  es.reserve(edges.size());
  ts.reserve(edges.size());
  for (const auto& e : edges) {
    es.emplace_back(e.u, e.v);
    ts.push_back(e.tail);
  }
  *this = Graph(n, std::move(es), std::move(ts));
}

void Graph::build() {
  const auto n = adj_.size();
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.u == e.v) throw GraphError("self-loop at node " + std::to_string(e.u));
    if (e.v >= n) throw GraphError("node id " + std::to_string(e.v) + " out of range");
    if (i > 0 && edges_[i - 1] == e) {
      throw GraphError("duplicate edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}");
    }
  }
  std::vector<std::size_t> deg(n, 0);
  for (const auto& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  for (std::size_t v = 0; v < n; ++v) {
    adj_[v].reserve(deg[v]);
    inc_[v].reserve(deg[v]);
  }
  // Sorted edge order makes each adjacency list sorted once both passes are merged.
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    adj_[edges_[i].v].push_back(edges_[i].u);
    inc_[edges_[i].v].push_back(i);
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    adj_[edges_[i].u].push_back(edges_[i].v);
    inc_[edges_[i].u].push_back(i);
  }
}

bool Graph::adjacent(NodeId a, NodeId b) const { return find_edge(a, b) != kNoEdge; }

EdgeIndex Graph::find_edge(NodeId a, NodeId b) const {
  if (a == b || a >= adj_.size() || b >= adj_.size()) return kNoEdge;
  const auto& list = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
  const auto& inc = adj_[a].size() <= adj_[b].size() ? inc_[a] : inc_[b];
  const NodeId target = adj_[a].size() <= adj_[b].size() ? b : a;
  auto it = std::lower_bound(list.begin(), list.end(), target);
  if (it == list.end() || *it != target) return kNoEdge;
  return inc[static_cast<std::size_t>(it - list.begin())];
}

std::vector<std::size_t> Graph::out_degrees() const {
  std::vector<std::size_t> out(adj_.size(), 0);
  for (auto t : tails_) ++out[t];
  return out;
}

std::size_t Graph::max_out_degree() const {
  auto out = out_degrees();
  return out.empty() ? 0 : *std::max_element(out.begin(), out.end());
}

std::vector<EdgeIndex> Graph::out_edges(NodeId v) const {
  std::vector<EdgeIndex> out;
  for (auto i : inc_[v]) {
    if (tails_[i] == v) out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Graph Graph::reoriented(std::vector<NodeId> tails) const {
  return Graph(adj_.size(), edges_, std::move(tails));
}

OrientedGraph degeneracy_orient(const Graph& g) {
  const auto n = g.num_nodes();
  std::vector<std::size_t> deg(n);
  std::size_t max_deg = 0;
  for (NodeId v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  // Bucket queue keyed by current degree; ties broken by node ID for determinism.
  std::vector<std::vector<NodeId>> buckets(max_deg + 1);
  for (NodeId v = n; v-- > 0;) buckets[deg[v]].push_back(v);
  std::vector<bool> removed(n, false);
  std::vector<std::size_t> position(n, 0);

  OrientationCertificate cert;
  cert.peel_order.reserve(n);
  std::size_t cursor = 0;
  while (cert.peel_order.size() < n) {
    cursor = cursor > 0 ? cursor - 1 : 0;
    NodeId v = 0;
    bool found = false;
    while (!found) {
      auto& b = buckets[cursor];
      while (!b.empty()) {
        NodeId cand = b.back();
        b.pop_back();
        if (!removed[cand] && deg[cand] == cursor) {
          v = cand;
          found = true;
          break;
        }
      }
      if (!found) ++cursor;
    }
    removed[v] = true;
    position[v] = cert.peel_order.size();
    cert.peel_order.push_back(v);
    cert.max_out_degree = std::max(cert.max_out_degree, deg[v]);
    for (auto w : g.neighbors(v)) {
      if (!removed[w]) {
        --deg[w];
        buckets[deg[w]].push_back(w);
      }
    }
  }

  std::vector<NodeId> tails(g.num_edges());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const auto& e = g.edge(i);
    tails[i] = position[e.u] < position[e.v] ? e.u : e.v;
  }
  return {g.reoriented(std::move(tails)), std::move(cert)};
}

Graph edge_subgraph(const Graph& g, const std::function<bool(const OrientedEdge&)>& keep) {
  std::vector<bool> mask(g.num_edges());
  for (std::size_t i = 0; i < g.num_edges(); ++i) mask[i] = keep(g.oriented(i));
  return edge_subgraph(g, mask);
}

Graph edge_subgraph(const Graph& g, const std::vector<bool>& keep_mask) {
  std::vector<Edge> edges;
  std::vector<NodeId> tails;
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    if (keep_mask[i]) {
      edges.push_back(g.edge(i));
      tails.push_back(g.tail(i));
    }
  }
  return Graph(g.num_nodes(), std::move(edges), std::move(tails));
}

bool is_clique(const Graph& g, std::span<const NodeId> nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (!g.adjacent(nodes[i], nodes[j])) return false;
    }
  }
  return true;
}

}  // namespace cliquelist
