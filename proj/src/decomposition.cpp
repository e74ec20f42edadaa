#include "cliquelist/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "cliquelist/conductance.hpp"

namespace cliquelist {

const char* to_string(EdgeLabel l) {
  switch (l) {
    case EdgeLabel::M:
      return "M";
    case EdgeLabel::S:
      return "S";
    case EdgeLabel::R:
      return "R";
  }
  return "?";
}

std::size_t EdgePartition::count(EdgeLabel l) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), l));
}

std::vector<std::size_t> EdgePartition::s_out_degrees(std::size_t n) const {
  std::vector<std::size_t> out(n, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == EdgeLabel::S) ++out[s_tail[i]];
  }
  return out;
}

std::size_t s_out_cap(std::size_t n, double delta) {
  // Guard against pow() landing a hair under an exact integer.
  return static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), delta) + 1e-9));
}

namespace {

struct Builder {
  const Graph& g;
  const Config& cfg;
  double tau;
  double phi;
  std::size_t s_cap;
  EdgePartition part;
  std::vector<bool> alive;
  std::vector<std::size_t> wdeg;
  std::vector<std::size_t> s_out;

  Builder(const Graph& graph, double delta, const Config& config)
      : g(graph), cfg(config), alive(graph.num_edges(), true), wdeg(graph.num_nodes(), 0),
        s_out(graph.num_nodes(), 0) {
    const auto n = g.num_nodes();
    const double nd = std::pow(static_cast<double>(n), delta);
    tau = cfg.min_degree_factor * nd;
    phi = cfg.phi_min_for(n);
    s_cap = s_out_cap(n, delta);
    part.delta = delta;
    part.labels.assign(g.num_edges(), EdgeLabel::R);
    part.edge_cluster.assign(g.num_edges(), -1);
    part.s_tail.assign(g.num_edges(), 0);
    part.node_cluster.assign(n, -1);
    for (NodeId v = 0; v < n; ++v) wdeg[v] = g.degree(v);
  }

  void remove(EdgeIndex i) {
    alive[i] = false;
    --wdeg[g.edge(i).u];
    --wdeg[g.edge(i).v];
  }

  bool below(NodeId v) const { return wdeg[v] > 0 && static_cast<double>(wdeg[v]) < tau; }

  // Min-degree peeling of the working set into S.
  void peel() {
    std::deque<NodeId> queue;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      if (below(v)) queue.push_back(v);
    }
    while (!queue.empty()) {
      NodeId v = queue.front();
      queue.pop_front();
      if (!below(v)) continue;
      for (auto i : g.incident(v)) {
        if (!alive[i]) continue;
        remove(i);
        if (s_out[v] < s_cap) {
          part.labels[i] = EdgeLabel::S;
          part.s_tail[i] = v;
          ++s_out[v];
        } else {
          part.labels[i] = EdgeLabel::R;
        }
        NodeId w = g.edge(i).other(v);
        if (below(w)) queue.push_back(w);
      }
    }
  }

  // Connected components of the working set, each as (members, edges).
  std::vector<std::pair<std::vector<NodeId>, std::vector<EdgeIndex>>> components() const {
    std::vector<std::pair<std::vector<NodeId>, std::vector<EdgeIndex>>> out;
    std::vector<bool> seen(g.num_nodes(), false);
    for (NodeId s = 0; s < g.num_nodes(); ++s) {
      if (seen[s] || wdeg[s] == 0) continue;
      std::vector<NodeId> members;
      std::vector<EdgeIndex> edges;
      std::vector<NodeId> stack = {s};
      seen[s] = true;
      while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        members.push_back(v);
        for (auto i : g.incident(v)) {
          if (!alive[i]) continue;
          NodeId w = g.edge(i).other(v);
          if (v < w) edges.push_back(i);
          if (!seen[w]) {
            seen[w] = true;
            stack.push_back(w);
          }
        }
      }
      std::sort(members.begin(), members.end());
      std::sort(edges.begin(), edges.end());
      out.emplace_back(std::move(members), std::move(edges));
    }
    return out;
  }

  void run() {
    for (;;) {
      peel();
      auto comps = components();
      if (comps.empty()) break;
      for (auto& [members, edges] : comps) {
        std::vector<Edge> es;
        es.reserve(edges.size());
        for (auto i : edges) es.push_back(g.edge(i));
        auto local = LocalGraph::induced(members, es);
        const double certified = certified_conductance(local, cfg.exact_conductance_max_nodes);
        if (certified >= phi) {
          const auto idx = static_cast<std::int32_t>(part.clusters.size());
          Cluster c;
          c.id = static_cast<std::uint32_t>(idx);
          c.members = members;
          c.delta = part.delta;
          c.conductance_estimate = certified;
          for (auto i : edges) {
            part.labels[i] = EdgeLabel::M;
            part.edge_cluster[i] = idx;
            remove(i);
          }
          for (auto v : members) part.node_cluster[v] = idx;
          part.clusters.push_back(std::move(c));
        } else {
          auto cut = spectral_cut(local);
          for (auto i : edges) {
            const auto& e = g.edge(i);
            auto lu = std::lower_bound(members.begin(), members.end(), e.u) - members.begin();
            auto lv = std::lower_bound(members.begin(), members.end(), e.v) - members.begin();
            if (cut.side[static_cast<std::size_t>(lu)] != cut.side[static_cast<std::size_t>(lv)]) {
              part.labels[i] = EdgeLabel::R;
              remove(i);
            }
          }
        }
      }
    }
    rescue_remainder();
  }

  // Relabel R-edges as S where an endpoint has out-degree room.
  void rescue_remainder() {
    for (std::size_t i = 0; i < g.num_edges(); ++i) {
      if (part.labels[i] != EdgeLabel::R) continue;
      const auto& e = g.edge(i);
      NodeId t = (s_out[e.v] < s_out[e.u]) ? e.v : e.u;
      if (s_out[t] < s_cap) {
        part.labels[i] = EdgeLabel::S;
        part.s_tail[i] = t;
        ++s_out[t];
      }
    }
  }
};

bool connected_in(const Cluster& c, const Graph& g, const EdgePartition& part, std::int32_t idx) {
  if (c.members.empty()) return false;
  std::vector<bool> seen(g.num_nodes(), false);
  std::vector<NodeId> stack = {c.members.front()};
  seen[c.members.front()] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    for (auto i : g.incident(v)) {
      if (part.labels[i] != EdgeLabel::M || part.edge_cluster[i] != idx) continue;
      NodeId w = g.edge(i).other(v);
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == c.members.size();
}

}  // namespace

EdgePartition expander_decompose(const Graph& g, double delta, const Config& cfg, Accounting& acct) {
  if (!(delta > 0.0 && delta < 1.0)) throw DecompositionError("delta must lie in (0, 1)");
  const auto n = g.num_nodes();
  Builder b(g, delta, cfg);
  b.run();
  const auto r = b.part.count(EdgeLabel::R);
  const double rounds =
      cfg.decomposition_factor * std::pow(static_cast<double>(std::max<std::size_t>(n, 1)), 1.0 - delta) *
      static_cast<double>(ceil_log2(n));
  acct.charge("decomposition", static_cast<std::uint64_t>(std::ceil(rounds - 1e-9)));
  if (6 * r > g.num_edges()) {
    std::ostringstream os;
    os << "decomposition leaves " << r << " of " << g.num_edges() << " edges in R (> |E|/6) at delta=" << delta
       << "; phi_min " << b.phi << " is too aggressive for this graph";
    throw DecompositionError(os.str());
  }
  return std::move(b.part);
}

DecompositionReport verify_decomposition(const Graph& g, const EdgePartition& part, const Config& cfg) {
  DecompositionReport rep;
  const auto n = g.num_nodes();
  const auto m = g.num_edges();
  const double nd = std::pow(static_cast<double>(n), part.delta);
  rep.edge_count = m;
  rep.min_degree_required = cfg.min_degree_factor * nd;
  rep.phi_min = cfg.phi_min_for(n);
  rep.s_cap = s_out_cap(n, part.delta);
  auto fail = [&rep](bool& flag, const std::string& why) {
    flag = false;
    rep.failures.push_back(why);
  };

  if (part.labels.size() != m || part.edge_cluster.size() != m || part.s_tail.size() != m ||
      part.node_cluster.size() != n) {
    fail(rep.labels_total, "label arrays do not cover the edge set");
    return rep;
  }

  // Clusters: disjoint, M-edges inside, connected.
  std::vector<std::int32_t> owner(n, -1);
  for (std::size_t ci = 0; ci < part.clusters.size(); ++ci) {
    const auto& c = part.clusters[ci];
    if (c.members.size() < 2) fail(rep.clusters_valid, "cluster " + std::to_string(c.id) + " has fewer than 2 nodes");
    for (auto v : c.members) {
      if (v >= n) {
        fail(rep.clusters_valid, "cluster member out of range");
        continue;
      }
      if (owner[v] != -1) fail(rep.clusters_valid, "node " + std::to_string(v) + " in two clusters");
      owner[v] = static_cast<std::int32_t>(ci);
    }
  }
  std::vector<std::size_t> mdeg(n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& e = g.edge(i);
    switch (part.labels[i]) {
      case EdgeLabel::M: {
        const auto ci = part.edge_cluster[i];
        if (ci < 0 || static_cast<std::size_t>(ci) >= part.clusters.size() || owner[e.u] != ci ||
            owner[e.v] != ci) {
          fail(rep.clusters_valid, "M-edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                       "} not inside its cluster");
        }
        ++mdeg[e.u];
        ++mdeg[e.v];
        break;
      }
      case EdgeLabel::S:
        if (!e.has(part.s_tail[i])) fail(rep.s_bound_ok, "S-edge tail is not an endpoint");
        break;
      case EdgeLabel::R:
        ++rep.r_count;
        break;
    }
  }
  rep.min_m_degree = part.clusters.empty() ? 0 : static_cast<std::size_t>(-1);
  for (std::size_t ci = 0; ci < part.clusters.size(); ++ci) {
    const auto& c = part.clusters[ci];
    if (!connected_in(c, g, part, static_cast<std::int32_t>(ci))) {
      fail(rep.clusters_valid, "cluster " + std::to_string(c.id) + " is not connected in M");
    }
    std::vector<Edge> medges;
    for (auto v : c.members) {
      if (v >= n) continue;
      rep.min_m_degree = std::min(rep.min_m_degree, mdeg[v]);
      if (static_cast<double>(mdeg[v]) < rep.min_degree_required) {
        fail(rep.min_degree_ok, "node " + std::to_string(v) + " has M-degree " + std::to_string(mdeg[v]));
      }
      for (auto i : g.incident(v)) {
        if (part.labels[i] == EdgeLabel::M && g.edge(i).u == v) medges.push_back(g.edge(i));
      }
    }
    const double phi = certified_conductance(LocalGraph::induced(c.members, medges), cfg.exact_conductance_max_nodes);
    rep.min_conductance = std::min(rep.min_conductance, phi);
    if (phi < rep.phi_min) {
      fail(rep.conductance_ok, "cluster " + std::to_string(c.id) + " conductance " + std::to_string(phi));
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    if ((owner[v] == -1) != (part.node_cluster[v] == -1) || (owner[v] != -1 && owner[v] != part.node_cluster[v])) {
      fail(rep.clusters_valid, "node " + std::to_string(v) + " has inconsistent cluster membership");
      break;
    }
  }

  if (rep.s_bound_ok) {
    auto sdeg = part.s_out_degrees(n);
    rep.max_s_out = sdeg.empty() ? 0 : *std::max_element(sdeg.begin(), sdeg.end());
    if (rep.max_s_out > rep.s_cap) {
      fail(rep.s_bound_ok, "S out-degree " + std::to_string(rep.max_s_out) + " exceeds " + std::to_string(rep.s_cap));
    }
  }
  if (6 * rep.r_count > m) {
    fail(rep.r_bound_ok, "|R| = " + std::to_string(rep.r_count) + " exceeds |E|/6 with |E| = " + std::to_string(m));
  }
  return rep;
}

nlohmann::json DecompositionReport::to_json() const {
  return {{"passed", passed()},
          {"labels_total", labels_total},
          {"clusters_valid", clusters_valid},
          {"min_degree_ok", min_degree_ok},
          {"conductance_ok", conductance_ok},
          {"s_bound_ok", s_bound_ok},
          {"r_bound_ok", r_bound_ok},
          {"min_degree_required", min_degree_required},
          {"min_m_degree", min_m_degree},
          {"phi_min", phi_min},
          {"min_conductance", min_conductance},
          {"s_cap", s_cap},
          {"max_s_out", max_s_out},
          {"r_count", r_count},
          {"edge_count", edge_count},
          {"failures", failures}};
}

nlohmann::json EdgePartition::to_json(const Graph& g) const {
  nlohmann::json j;
  j["schema"] = 1;
  j["delta"] = delta;
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : clusters) {
    cs.push_back({{"id", c.id}, {"members", c.members}, {"conductance_estimate", c.conductance_estimate}});
  }
  j["clusters"] = cs;
  nlohmann::json labs = nlohmann::json::array();
  nlohmann::json orient = nlohmann::json::array();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto& e = g.edge(i);
    labs.push_back({e.u, e.v, cliquelist::to_string(labels[i])});
    if (labels[i] == EdgeLabel::S) orient.push_back({e.u, e.v, s_tail[i]});
  }
  j["labels"] = labs;
  j["s_orientation"] = orient;
  return j;
}

EdgePartition EdgePartition::from_json(const Graph& g, const nlohmann::json& j) {
  EdgePartition p;
  const auto n = g.num_nodes();
  const auto m = g.num_edges();
  p.delta = j.at("delta").get<double>();
  p.labels.assign(m, EdgeLabel::R);
  p.edge_cluster.assign(m, -1);
  p.s_tail.assign(m, 0);
  p.node_cluster.assign(n, -1);
  for (const auto& jc : j.at("clusters")) {
    Cluster c;
    c.id = jc.at("id").get<std::uint32_t>();
    c.members = jc.at("members").get<std::vector<NodeId>>();
    std::sort(c.members.begin(), c.members.end());
    c.delta = p.delta;
    c.conductance_estimate = jc.value("conductance_estimate", 0.0);
    const auto idx = static_cast<std::int32_t>(p.clusters.size());
    for (auto v : c.members) {
      if (v >= n) throw DecompositionError("cluster member out of range");
      p.node_cluster[v] = idx;
    }
    p.clusters.push_back(std::move(c));
  }
  std::vector<bool> seen(m, false);
  for (const auto& jl : j.at("labels")) {
    const auto u = jl.at(0).get<NodeId>();
    const auto v = jl.at(1).get<NodeId>();
    const auto lab = jl.at(2).get<std::string>();
    const auto i = g.find_edge(u, v);
    if (i == kNoEdge) throw DecompositionError("labelled pair is not an edge");
    if (seen[i]) throw DecompositionError("edge labelled twice");
    seen[i] = true;
    if (lab == "M") {
      p.labels[i] = EdgeLabel::M;
      const auto cu = p.node_cluster[u];
      p.edge_cluster[i] = (cu != -1 && cu == p.node_cluster[v]) ? cu : -1;
    } else if (lab == "S") {
      p.labels[i] = EdgeLabel::S;
    } else if (lab == "R") {
      p.labels[i] = EdgeLabel::R;
    } else {
      throw DecompositionError("unknown label '" + lab + "'");
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw DecompositionError("labels do not cover every edge");
  }
  for (const auto& jo : j.at("s_orientation")) {
    const auto i = g.find_edge(jo.at(0).get<NodeId>(), jo.at(1).get<NodeId>());
    if (i == kNoEdge) throw DecompositionError("oriented pair is not an edge");
    p.s_tail[i] = jo.at(2).get<NodeId>();
  }
  return p;
}

}  // namespace cliquelist
