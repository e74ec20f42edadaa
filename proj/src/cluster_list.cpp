#include "cliquelist/cluster_list.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

#include "cliquelist/engine.hpp"
#include "cliquelist/local_list.hpp"
#include "cliquelist/rng.hpp"

namespace cliquelist {

ClusterParams ClusterParams::general(std::size_t n, double d, const Config& cfg) {
  ClusterParams p;
  const double nd = static_cast<double>(std::max<std::size_t>(n, 1));
  p.n = n;
  p.d = d;
  p.out_cap = std::pow(nd, d);
  p.heavy_threshold = cfg.heavy_factor * std::pow(nd, 0.25);
  p.light_threshold = cfg.light_factor * std::sqrt(nd) * log2n(std::max<std::size_t>(n, 2));
  p.learn_cap = cfg.learn_factor * std::pow(nd, d + 0.75) * static_cast<double>(ceil_log2(n));
  return p;
}

ClusterParams ClusterParams::k4(std::size_t n, double d, const Config& cfg) {
  ClusterParams p;
  const double nd = static_cast<double>(std::max<std::size_t>(n, 1));
  p.n = n;
  p.d = d;
  p.out_cap = std::pow(nd, d);
  p.heavy_threshold = cfg.k4_heavy_factor * std::pow(nd, d - 1.0 / 3.0);
  p.heavy_inclusive = true;
  p.light_threshold = std::numeric_limits<double>::infinity();
  p.defer_bad = false;
  p.light_probes = false;
  p.light_local_k4 = true;
  // A member hears from at most n heavy neighbors, n^(1/3) edges each.
  p.learn_cap = cfg.learn_factor * std::pow(nd, 4.0 / 3.0) * static_cast<double>(ceil_log2(n));
  return p;
}

bool ClusterParams::heavy(std::uint64_t g_vc) const {
  const auto g = static_cast<double>(g_vc);
  return heavy_inclusive ? g >= heavy_threshold : g > heavy_threshold;
}

nlohmann::json ClusterParams::to_json() const {
  auto inf_safe = [](double x) -> nlohmann::json {
    if (std::isinf(x)) return "inf";
    return x;
  };
  return {{"n", n},
          {"d", d},
          {"out_cap", out_cap},
          {"heavy_threshold", heavy_threshold},
          {"heavy_inclusive", heavy_inclusive},
          {"light_threshold", inf_safe(light_threshold)},
          {"defer_bad", defer_bad},
          {"light_probes", light_probes},
          {"light_local_k4", light_local_k4},
          {"learn_cap", learn_cap}};
}

bool NeighborClassification::is_heavy(NodeId v) const { return std::binary_search(heavy.begin(), heavy.end(), v); }
bool NeighborClassification::is_light(NodeId v) const { return std::binary_search(light.begin(), light.end(), v); }
bool NeighborClassification::is_bad(NodeId u) const { return std::binary_search(bad.begin(), bad.end(), u); }

bool GoalEdgeSet::is_goal(const Edge& e) const { return std::binary_search(goal.begin(), goal.end(), e); }

std::size_t LearnedEdges::total() const {
  std::size_t t = 0;
  for (const auto& [u, list] : by_member) t += list.size();
  return t;
}

std::size_t LearnedEdges::max_per_member() const {
  std::size_t m = 0;
  for (const auto& [u, list] : by_member) m = std::max(m, list.size());
  return m;
}

std::vector<Edge> LearnedEdges::all_edges() const {
  std::vector<Edge> out;
  for (const auto& [u, list] : by_member) {
    for (const auto& le : list) out.push_back(le.e);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::vector<std::int32_t> membership(std::size_t n, std::span<const ClusterInput> clusters) {
  std::vector<std::int32_t> member_of(n, -1);
  for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
    for (auto u : clusters[ci].cluster.members) {
      if (member_of.at(u) != -1) throw std::invalid_argument("clusters overlap");
      member_of[u] = static_cast<std::int32_t>(ci);
    }
  }
  return member_of;
}

Message make_message(std::uint64_t tag, std::span<const std::uint64_t> fields) {
  Message m;
  m.words[0] = tag;
  for (std::size_t i = 0; i < fields.size(); ++i) m.words[i + 1] = fields[i];
  m.size = static_cast<std::uint8_t>(fields.size() + 1);
  return m;
}

constexpr std::uint64_t kChunk = 1;
constexpr std::uint64_t kProbe = 2;
constexpr std::uint64_t kReply = 3;
constexpr std::uint64_t kK4Probe = 4;
constexpr std::uint64_t kK4Reply = 5;

}  // namespace

std::vector<NeighborClassification> classify_all(const Graph& g, std::span<const ClusterInput> clusters,
                                                 const ClusterParams& params, const Config& cfg,
                                                 std::uint64_t seed, Accounting& acct) {
  const auto member_of = membership(g.num_nodes(), clusters);
  std::vector<NeighborClassification> out(clusters.size());
  for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
    for (auto u : clusters[ci].cluster.members) out[ci].u_light[u] = 0;
  }

  RoundEngine engine(g, cfg, seed);
  engine.run(
      "classify",
      [&](NodeContext& ctx) {
        const NodeId v = ctx.id();
        if (ctx.round() == 1) {
          if (member_of[v] >= 0) {
            for (auto x : ctx.neighbors()) ctx.send(x, Message{static_cast<std::uint64_t>(member_of[v] + 1)});
          }
        } else if (ctx.round() == 2) {
          std::map<std::uint32_t, std::vector<NodeId>> by_cluster;
          for (const auto& env : ctx.inbox()) {
            const auto ci = static_cast<std::int32_t>(env.msg[0] - 1);
            if (ci != member_of[v]) by_cluster[static_cast<std::uint32_t>(ci)].push_back(env.from);
          }
          for (const auto& [ci, members] : by_cluster) {
            const bool heavy = params.heavy(members.size());
            out[ci].g_vc[v] = static_cast<std::uint32_t>(members.size());
            (heavy ? out[ci].heavy : out[ci].light).push_back(v);
            for (auto u : members) ctx.send(u, Message{heavy ? 1U : 0U});
          }
        } else if (member_of[v] >= 0) {
          std::uint32_t light = 0;
          for (const auto& env : ctx.inbox()) light += env.msg[0] == 0 ? 1 : 0;
          out[static_cast<std::size_t>(member_of[v])].u_light[v] = light;
        }
        ctx.halt();
      },
      acct);

  for (auto& cls : out) {
    std::sort(cls.heavy.begin(), cls.heavy.end());
    std::sort(cls.light.begin(), cls.light.end());
    for (const auto& [u, light] : cls.u_light) {
      if (static_cast<double>(light) > params.light_threshold) cls.bad.push_back(u);
    }
  }
  return out;
}

NeighborClassification classify(const Graph& g, const ClusterInput& c, const ClusterParams& params,
                                const Config& cfg, std::uint64_t seed, Accounting& acct) {
  return classify_all(g, std::span<const ClusterInput>(&c, 1), params, cfg, seed, acct).front();
}

GoalEdgeSet mark_bad_edges(const ClusterInput& c, const NeighborClassification& cls, const ClusterParams& params) {
  GoalEdgeSet out;
  for (const auto& e : c.m_edges) {
    if (params.defer_bad && cls.is_bad(e.u) && cls.is_bad(e.v)) {
      out.bad_edges.push_back(e);
    } else {
      out.goal.push_back(e);
    }
  }
  std::sort(out.goal.begin(), out.goal.end());
  std::sort(out.bad_edges.begin(), out.bad_edges.end());
  return out;
}

std::vector<LearnedEdges> import_all(const Graph& g, std::span<const ClusterInput> clusters,
                                     std::span<const NeighborClassification> classes,
                                     const ClusterParams& params, const Config& cfg, std::uint64_t seed,
                                     Accounting& acct) {
  const std::size_t n = g.num_nodes();
  const auto member_of = membership(n, clusters);
  std::vector<LearnedEdges> out(clusters.size());
  std::vector<PacedOutbox> outbox(n);
  std::vector<std::map<NodeId, std::deque<std::vector<NodeId>>>> pending(n);
  const std::size_t batch = std::max<std::size_t>(1, std::min(cfg.message_words - 1, field_bits(n)));

  for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
    const auto& c = clusters[ci].cluster;
    const auto& cls = classes[ci];
    for (auto v : cls.heavy) {
      std::vector<NodeId> inside;
      for (auto x : g.neighbors(v)) {
        if (c.contains(x)) inside.push_back(x);
      }
      std::size_t next = 0;
      for (auto idx : g.out_edges(v)) {
        const NodeId h = g.head(idx);
        if (c.contains(h)) continue;
        outbox[v].push(inside[next++ % inside.size()], Message{kChunk, h});
      }
    }
    if (!params.light_probes) continue;
    for (auto u : c.members) {
      // Bad members still relay and receive chunks, but send no probes.
      if (cls.is_bad(u)) continue;
      std::vector<NodeId> light;
      for (auto x : g.neighbors(u)) {
        if (cls.is_light(x)) light.push_back(x);
      }
      if (light.empty()) continue;
      for (auto x : g.neighbors(u)) {
        if (c.contains(x)) continue;
        std::vector<NodeId> list;
        for (auto w : light) {
          if (w != x) list.push_back(w);
        }
        for (std::size_t i = 0; i < list.size(); i += batch) {
          std::vector<NodeId> chunk(list.begin() + static_cast<std::ptrdiff_t>(i),
                                    list.begin() + static_cast<std::ptrdiff_t>(std::min(list.size(), i + batch)));
          std::vector<std::uint64_t> fields(chunk.begin(), chunk.end());
          outbox[u].push(x, make_message(kProbe, fields));
          pending[u][x].push_back(std::move(chunk));
        }
      }
    }
  }

  RoundEngine engine(g, cfg, seed);
  engine.run(
      "import",
      [&](NodeContext& ctx) {
        const NodeId self = ctx.id();
        for (const auto& env : ctx.inbox()) {
          const auto& m = env.msg;
          if (m[0] == kChunk) {
            auto& learned = out[static_cast<std::size_t>(member_of[self])].by_member[self];
            learned.push_back({Edge(env.from, static_cast<NodeId>(m[1])), LearnTag::HeavyImport});
          } else if (m[0] == kProbe) {
            std::uint64_t mask = 0;
            for (std::size_t i = 1; i < m.size; ++i) {
              if (g.adjacent(self, static_cast<NodeId>(m[i]))) mask |= std::uint64_t{1} << (i - 1);
            }
            outbox[self].push(env.from, Message{kReply, mask});
          } else if (m[0] == kReply) {
            auto& queue = pending[self][env.from];
            const auto asked = std::move(queue.front());
            queue.pop_front();
            auto& learned = out[static_cast<std::size_t>(member_of[self])].by_member[self];
            for (std::size_t i = 0; i < asked.size(); ++i) {
              if ((m[1] >> i) & 1U) learned.push_back({Edge(env.from, asked[i]), LearnTag::LightProbe});
            }
          }
        }
        outbox[self].flush(ctx);
        if (outbox[self].empty()) ctx.halt();
      },
      acct);

  for (const auto& learned : out) {
    for (const auto& [u, list] : learned.by_member) {
      if (static_cast<double>(list.size()) > params.learn_cap) {
        throw BudgetViolation({u, "import: learned edges", params.learn_cap, static_cast<double>(list.size())});
      }
    }
  }
  return out;
}

LearnedEdges import_outside_edges(const Graph& g, const ClusterInput& c, const NeighborClassification& cls,
                                  const ClusterParams& params, const Config& cfg, std::uint64_t seed,
                                  Accounting& acct) {
  return import_all(g, std::span<const ClusterInput>(&c, 1), std::span<const NeighborClassification>(&cls, 1),
                    params, cfg, seed, acct)
      .front();
}

std::vector<Edge> missing_outside_edges(const Graph& g, const ClusterInput& c, const GoalEdgeSet& goal,
                                        const LearnedEdges& learned) {
  const auto known = learned.all_edges();
  std::set<Edge> missing;
  for (const auto& e : goal.goal) {
    std::vector<NodeId> common;
    std::set_intersection(g.neighbors(e.u).begin(), g.neighbors(e.u).end(), g.neighbors(e.v).begin(),
                          g.neighbors(e.v).end(), std::back_inserter(common));
    std::erase_if(common, [&](NodeId x) { return c.cluster.contains(x); });
    for (std::size_t i = 0; i < common.size(); ++i) {
      for (std::size_t j = i + 1; j < common.size(); ++j) {
        const Edge f(common[i], common[j]);
        if (g.adjacent(f.u, f.v) && !std::binary_search(known.begin(), known.end(), f)) missing.insert(f);
      }
    }
  }
  return {missing.begin(), missing.end()};
}

Reshuffled reshuffle(const Graph& g, const ClusterInput& c, const GoalEdgeSet& goal, const LearnedEdges& learned,
                     const ClusterParams& params, const Config& cfg, Accounting& acct) {
  const auto& members = c.cluster.members;
  const std::size_t k = members.size();
  Reshuffled out;
  out.map = ResponsibilityMap::make(g.num_nodes(), k);
  out.id_to_node = members;
  out.owned.resize(k);

  // Each known edge is sent by one holder: the tail for edges inside C, the
  // member endpoint for boundary edges, the smallest learner otherwise.
  std::map<Edge, NodeId> holder;
  for (auto u : members) {
    const auto inc = g.incident(u);
    for (auto idx : inc) {
      const auto& e = g.edge(idx);
      const bool inside = c.cluster.contains(e.other(u));
      holder.emplace(e, inside ? g.tail(idx) : u);
    }
  }
  for (const auto& [u, list] : learned.by_member) {
    for (const auto& le : list) holder.emplace(le.e, u);
  }

  std::map<NodeId, std::uint64_t> send_load;
  std::map<NodeId, std::uint64_t> recv_load;
  for (const auto& [e, src] : holder) {
    const auto idx = g.find_edge(e.u, e.v);
    const auto owner = out.map.owner(g.tail(idx));
    out.owned[owner - 1].push_back({e, false, goal.is_goal(e)});
    const NodeId dst = out.id_to_node[owner - 1];
    if (dst != src) {
      ++send_load[src];
      ++recv_load[dst];
    }
  }
  out.known_edges = holder.size();
  for (const auto& list : out.owned) out.max_owned = std::max<std::uint64_t>(out.max_owned, list.size());
  out.owner_cap = params.out_cap * static_cast<double>(out.map.range);
  if (static_cast<double>(out.max_owned) > out.owner_cap) {
    acct.record({members.front(), "reshuffle: owned edges", out.owner_cap, static_cast<double>(out.max_owned)});
  }

  const auto channel = ClusterChannel::for_cluster(c.cluster, g.num_nodes(), cfg);
  out.route = channel.settle(std::move(send_load), std::move(recv_load));
  PhaseCharge charge;
  charge.phase = "reshuffle";
  charge.rounds = out.route.charged_rounds;
  for (const auto& [v, load] : out.route.send_load) charge.messages += load;
  charge.max_load = out.route.max_load;
  charge.budget = channel.load_cap();
  acct.charge(charge);
  return out;
}

ClusterListing cluster_list_kp(const Graph& g, const ClusterInput& c, const Reshuffled& shuffled, std::size_t p,
                               std::uint64_t seed, const Config& cfg, Accounting& acct) {
  const std::size_t k = c.cluster.members.size();
  ClusterListing out;
  out.num_parts = parts_for(k, p);
  const auto partition =
      random_partition(g.num_nodes(), out.num_parts, mix_seed(seed ^ (0x51ed2701ULL * (c.cluster.id + 1))));
  const auto channel = ClusterChannel::for_cluster(c.cluster, g.num_nodes(), cfg);

  // Owners announce the parts of the nodes they are responsible for.
  {
    std::map<NodeId, std::uint64_t> send_load;
    std::map<NodeId, std::uint64_t> recv_load;
    std::uint64_t total = 0;
    std::vector<std::uint64_t> own(k);
    for (std::uint32_t i = 1; i <= k; ++i) {
      const auto [lo, hi] = shuffled.map.range_of(i);
      own[i - 1] = hi - lo;
      total += own[i - 1];
    }
    std::uint64_t messages = 0;
    for (std::uint32_t i = 1; i <= k; ++i) {
      const NodeId v = shuffled.id_to_node[i - 1];
      if (own[i - 1] * (k - 1) > 0) send_load[v] = own[i - 1] * (k - 1);
      if (total - own[i - 1] > 0) recv_load[v] = total - own[i - 1];
      messages += own[i - 1] * (k - 1);
    }
    const auto route = channel.settle(std::move(send_load), std::move(recv_load));
    PhaseCharge charge;
    charge.phase = "cluster_partition";
    charge.rounds = route.charged_rounds;
    charge.messages = messages;
    charge.max_load = route.max_load;
    charge.budget = channel.load_cap();
    acct.charge(charge);
  }

  ListingSetup setup;
  setup.p = p;
  setup.k = k;
  setup.id_to_node = shuffled.id_to_node;
  setup.partition = &partition;
  setup.require_goal = true;
  auto outcome = sparse_listing_core(setup, shuffled.owned, channel);
  PhaseCharge charge;
  charge.phase = "cluster_listing";
  charge.rounds = outcome.route.charged_rounds;
  charge.messages = outcome.messages;
  charge.max_load = outcome.route.max_load;
  charge.budget = channel.load_cap();
  acct.charge(charge);

  out.cliques = std::move(outcome.cliques);
  out.raw_outputs = outcome.raw_outputs;
  out.max_received = outcome.max_received;
  return out;
}

CliqueSet k4_light_listing(const Graph& g, std::span<const ClusterInput> clusters,
                           std::span<const NeighborClassification> classes, std::span<const GoalEdgeSet> goals,
                           const Config& cfg, std::uint64_t seed, Accounting& acct) {
  const std::size_t n = g.num_nodes();
  struct Step {
    std::uint32_t ci;
    NodeId u;
  };
  std::vector<std::vector<Step>> plan(n);
  for (std::uint32_t ci = 0; ci < clusters.size(); ++ci) {
    for (auto v : classes[ci].light) {
      for (auto u : g.neighbors(v)) {
        if (clusters[ci].cluster.contains(u)) plan[v].push_back({ci, u});
      }
    }
  }
  std::vector<std::size_t> next(n, 0);
  std::vector<PacedOutbox> outbox(n);
  // Replies received by v: edges {u, x} with u a probed cluster neighbor.
  std::vector<std::vector<Edge>> heard(n);

  RoundEngine engine(g, cfg, seed);
  engine.run(
      "k4_light",
      [&](NodeContext& ctx) {
        const NodeId self = ctx.id();
        for (const auto& env : ctx.inbox()) {
          const auto& m = env.msg;
          if (m[0] == kK4Probe) {
            const auto u = static_cast<NodeId>(m[1]);
            outbox[self].push(env.from, Message{kK4Reply, u, g.adjacent(self, u) ? 1U : 0U});
          } else if (m[0] == kK4Reply && m[2] == 1) {
            heard[self].emplace_back(static_cast<NodeId>(m[1]), env.from);
          }
        }
        if (next[self] < plan[self].size()) {
          const NodeId u = plan[self][next[self]++].u;
          for (auto x : ctx.neighbors()) {
            if (x != u) outbox[self].push(x, Message{kK4Probe, u});
          }
        }
        outbox[self].flush(ctx);
        if (next[self] == plan[self].size() && outbox[self].empty()) ctx.halt();
      },
      acct);

  CliqueSet out;
  for (NodeId v = 0; v < n; ++v) {
    if (plan[v].empty()) continue;
    std::vector<Edge> known = heard[v];
    for (auto x : g.neighbors(v)) known.emplace_back(v, x);
    const KnownEdges view(known);
    for (const auto& c : view.cliques_containing(4, v)) {
      for (std::uint32_t ci = 0; ci < clusters.size(); ++ci) {
        if (!classes[ci].is_light(v)) continue;
        bool goal = false;
        for (std::size_t i = 0; i < 4 && !goal; ++i) {
          for (std::size_t j = i + 1; j < 4 && !goal; ++j) goal = goals[ci].is_goal(Edge(c.nodes[i], c.nodes[j]));
        }
        if (goal) {
          out.push_back(c);
          break;
        }
      }
    }
  }
  normalize(out);
  return out;
}

nlohmann::json ClusterRun::to_json() const {
  std::map<std::size_t, std::size_t> learned_hist;
  for (auto u : input.cluster.members) {
    auto it = learned.by_member.find(u);
    ++learned_hist[it == learned.by_member.end() ? 0 : it->second.size()];
  }
  nlohmann::json hist = nlohmann::json::array();
  for (const auto& [count, members] : learned_hist) hist.push_back({count, members});
  return {{"cluster_id", input.cluster.id},
          {"k", input.cluster.members.size()},
          {"heavy", cls.heavy.size()},
          {"light", cls.light.size()},
          {"bad_nodes", cls.bad.size()},
          {"m_edges", input.m_edges.size()},
          {"goal_edges", goal.goal.size()},
          {"bad_edges", goal.bad_edges.size()},
          {"learned_total", learned.total()},
          {"learned_histogram", hist},
          {"known_edges", known_edges},
          {"max_owned", max_owned},
          {"num_parts", listing.num_parts},
          {"max_received", listing.max_received},
          {"cliques", listing.cliques.size()},
          {"rounds_by_phase", acct.rounds_by_phase()}};
}

void charge_parallel(Accounting& into, std::span<const Accounting> parts) {
  std::vector<std::string> order;
  std::map<std::string, PhaseCharge> merged;
  for (const auto& a : parts) {
    for (const auto& c : a.charges()) {
      auto [it, fresh] = merged.try_emplace(c.phase);
      auto& m = it->second;
      if (fresh) {
        order.push_back(c.phase);
        m.phase = c.phase;
      }
      m.rounds = std::max(m.rounds, c.rounds);
      m.messages += c.messages;
      // Keep the load of the part closest to its budget.
      const double old_ratio = m.budget > 0 ? static_cast<double>(m.max_load) / m.budget : 0.0;
      const double new_ratio = c.budget > 0 ? static_cast<double>(c.max_load) / c.budget : 0.0;
      if (fresh || new_ratio > old_ratio) {
        m.max_load = c.max_load;
        m.budget = c.budget;
      }
    }
    for (const auto& v : a.violations()) into.record(v);
    for (std::size_t i = 0; i < a.sent().size() && i < into.sent().size(); ++i) {
      into.count_sent(static_cast<NodeId>(i), a.sent()[i]);
      into.count_received(static_cast<NodeId>(i), a.received()[i]);
    }
  }
  for (const auto& phase : order) into.charge(merged[phase]);
}

ClustersResult run_clusters(const Graph& g, std::vector<ClusterInput> clusters, const ClusterParams& params,
                            std::size_t p, std::uint64_t seed, const Config& cfg, Accounting& acct) {
  ClustersResult res;
  if (clusters.empty()) return res;
  const std::size_t n = g.num_nodes();

  std::vector<Cluster> plain;
  for (const auto& c : clusters) plain.push_back(c.cluster);
  assign_cluster_ids(plain, n, cfg, acct);

  const auto classes = classify_all(g, clusters, params, cfg, mix_seed(seed + 1), acct);
  std::vector<GoalEdgeSet> goals;
  for (std::size_t ci = 0; ci < clusters.size(); ++ci) goals.push_back(mark_bad_edges(clusters[ci], classes[ci], params));
  auto learned = import_all(g, clusters, classes, params, cfg, mix_seed(seed + 2), acct);

  std::vector<Accounting> per;
  per.reserve(clusters.size());
  for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
    per.emplace_back(n);
    ClusterRun run;
    const auto shuffled = reshuffle(g, clusters[ci], goals[ci], learned[ci], params, cfg, per.back());
    run.listing = cluster_list_kp(g, clusters[ci], shuffled, p, mix_seed(seed + 3), cfg, per.back());
    run.known_edges = shuffled.known_edges;
    run.max_owned = shuffled.max_owned;
    run.cls = classes[ci];
    run.goal = goals[ci];
    run.learned = std::move(learned[ci]);
    run.acct = per.back();
    res.m_edges += clusters[ci].m_edges.size();
    res.cliques.insert(res.cliques.end(), run.listing.cliques.begin(), run.listing.cliques.end());
    res.bad_edges.insert(res.bad_edges.end(), run.goal.bad_edges.begin(), run.goal.bad_edges.end());
    run.input = std::move(clusters[ci]);
    res.runs.push_back(std::move(run));
  }
  charge_parallel(acct, per);

  if (params.light_local_k4 && p == 4) {
    std::vector<ClusterInput> inputs;
    for (const auto& r : res.runs) inputs.push_back(r.input);
    const auto extra = k4_light_listing(g, inputs, classes, goals, cfg, mix_seed(seed + 4), acct);
    res.cliques.insert(res.cliques.end(), extra.begin(), extra.end());
  }
  normalize(res.cliques);
  std::sort(res.bad_edges.begin(), res.bad_edges.end());
  return res;
}

}  // namespace cliquelist
