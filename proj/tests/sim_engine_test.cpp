#include <algorithm>
#include <map>

#include <gtest/gtest.h>

#include "cliquelist/cluster_channel.hpp"
#include "cliquelist/engine.hpp"
#include "cliquelist/generators.hpp"
#include "cliquelist/pipeline.hpp"

using namespace cliquelist;

namespace {

StepFn send_id_once() {
  return [](NodeContext& ctx) {
    if (ctx.round() == 1)
      for (NodeId w : ctx.neighbors()) ctx.send(w, {ctx.id()});
    ctx.halt();
  };
}

// Each node floods its outgoing edges to every neighbor, one edge per link per round.
RunResult flood_out_edges(const Graph& g, const Config& cfg, Accounting& acct, std::map<NodeId, std::size_t>& got) {
  RoundEngine eng(g, cfg, 3);
  std::vector<PacedOutbox> box(g.num_nodes());
  return eng.run(
      "flood",
      [&](NodeContext& ctx) {
        if (ctx.round() == 1) {
          for (EdgeIndex i : g.out_edges(ctx.id()))
            for (NodeId w : ctx.neighbors()) box[ctx.id()].push(w, {g.head(i)});
        }
        got[ctx.id()] += ctx.inbox().size();
        box[ctx.id()].flush(ctx);
        if (box[ctx.id()].empty()) ctx.halt();
      },
      acct);
}

}  // namespace

TEST(Engine, K4IdBroadcast) {
  Config cfg;
  Graph g = complete_graph(4);
  RoundEngine eng(g, cfg, 1);
  eng.record_transcript(true);
  Accounting acct(4);
  auto r = eng.run("ids", send_id_once(), acct);
  EXPECT_EQ(r.rounds, 1u);
  EXPECT_EQ(r.messages, 12u);
  for (NodeId v = 0; v < 4; ++v) EXPECT_EQ(acct.received()[v], 3u);
  EXPECT_EQ(eng.transcript().size(), 12u);
  EXPECT_EQ(acct.total_rounds(), 1u);
}

TEST(Engine, EmptyGraphDeliversNothing) {
  Config cfg;
  Graph g = empty_graph(10);
  RoundEngine eng(g, cfg, 1);
  Accounting acct(10);
  auto r = eng.run("ids", send_id_once(), acct);
  EXPECT_EQ(r.messages, 0u);
  EXPECT_EQ(r.rounds, 0u);
}

TEST(Engine, OutEdgeFloodTakesMaxOutDegreeRounds) {
  Config cfg;
  Graph g = gnp(16, 0.5, 3);
  std::size_t max_out = 0;
  for (NodeId v = 0; v < 16; ++v) {
    std::size_t c = 0;
    for (NodeId w : g.neighbors(v)) c += (w > v);  // default orientation: smaller endpoint is the tail
    max_out = std::max(max_out, c);
  }
  Accounting acct(16);
  std::map<NodeId, std::size_t> got;
  auto r = flood_out_edges(g, cfg, acct, got);
  EXPECT_EQ(r.rounds, max_out);

  Accounting acct2(16);
  auto cliques = broadcast_list(g, 4, 1e9, "broadcast", 3, cfg, acct2);
  EXPECT_EQ(acct2.total_rounds(), max_out);
  EXPECT_TRUE(acct2.violations().empty());
}

TEST(Engine, PerEdgeCapEnforced) {
  Config cfg;
  Graph g = complete_graph(3);
  RoundEngine eng(g, cfg, 1);
  Accounting acct(3);
  auto twice = [](NodeContext& ctx) {
    if (ctx.round() == 1 && ctx.id() == 0) {
      ctx.send(1, {7});
      ctx.send(1, {8});
    }
    ctx.halt();
  };
  EXPECT_THROW(eng.run("burst", twice, acct), BudgetViolation);
}

TEST(Engine, RejectsNonNeighborAndOversized) {
  Config cfg;
  Graph path(3, std::vector<Edge>{{0, 1}, {1, 2}});
  Accounting acct(3);
  RoundEngine e1(path, cfg, 1);
  EXPECT_THROW(e1.run("x", [](NodeContext& ctx) { if (ctx.id() == 0) ctx.send(2, {1}); ctx.halt(); }, acct),
               BudgetViolation);
  RoundEngine e2(path, cfg, 1);
  EXPECT_THROW(e2.run("x", [](NodeContext& ctx) { if (ctx.id() == 0) ctx.send(1, {1, 2, 3, 4}); ctx.halt(); },
                      acct),
               BudgetViolation);
  RoundEngine e3(path, cfg, 1);
  EXPECT_THROW(
      e3.run("x", [](NodeContext& ctx) { if (ctx.id() == 0) ctx.send(1, {std::uint64_t{1} << 40}); ctx.halt(); },
             acct),
      BudgetViolation);
}

TEST(Engine, CliqueLinksEveryPair) {
  Config cfg;
  auto eng = RoundEngine::clique(6, cfg, 2);
  Accounting acct(6);
  auto r = eng.run(
      "all",
      [](NodeContext& ctx) {
        if (ctx.round() == 1)
          for (NodeId w = 0; w < ctx.num_nodes(); ++w)
            if (w != ctx.id()) ctx.send(w, {ctx.id()});
        ctx.halt();
      },
      acct);
  EXPECT_EQ(r.messages, 30u);
  EXPECT_EQ(r.rounds, 1u);
}

TEST(Engine, DeterministicTranscript) {
  Config cfg;
  Graph g = gnp(30, 0.3, 4);
  auto once = [&](std::uint64_t seed) {
    RoundEngine eng(g, cfg, seed);
    Accounting acct(30);
    return eng.run(
        "gossip",
        [](NodeContext& ctx) {
          if (ctx.round() <= 3) {
            auto nb = ctx.neighbors();
            if (!nb.empty()) ctx.send(nb[uniform_below(ctx.rng(), nb.size())], {ctx.round()});
          } else {
            ctx.halt();
          }
        },
        acct);
  };
  auto a = once(11), b = once(11), c = once(12);
  EXPECT_EQ(a.transcript_hash, b.transcript_hash);
  EXPECT_EQ(a.messages, b.messages);
  EXPECT_NE(a.transcript_hash, c.transcript_hash);
}

TEST(ClusterRoute, ZeroMessages) {
  ClusterChannel ch({0, 1, 2, 3}, 4.0, 3.0, 100.0);
  auto r = ch.route({});
  EXPECT_EQ(r.charged_rounds, 0u);
  EXPECT_EQ(r.max_load, 0u);
}

TEST(ClusterRoute, Ring) {
  const double factor = 5.0;
  for (double nd : {0.5, 1.0, 4.0}) {
    std::vector<NodeId> members{0, 1, 2, 3, 4, 5, 6, 7};
    ClusterChannel ch(members, nd, factor, 100.0);
    std::vector<RoutedMessage> msgs;
    for (NodeId i = 0; i < 8; ++i) msgs.push_back({i, static_cast<NodeId>((i + 1) % 8), Message{i}});
    auto r = ch.route(msgs);
    EXPECT_EQ(r.max_load, 1u);
    EXPECT_EQ(r.charged_rounds, static_cast<std::uint64_t>(std::ceil(factor * std::ceil(1.0 / nd))));
    for (NodeId i = 0; i < 8; ++i) {
      ASSERT_EQ(r.delivered[(i + 1) % 8].size(), 1u);
      EXPECT_EQ(r.delivered[(i + 1) % 8][0].src, i);
    }
  }
}

TEST(ClusterRoute, RandomAllToAllTally) {
  std::vector<NodeId> members;
  for (NodeId i = 0; i < 16; ++i) members.push_back(3 * i + 1);
  const double factor = 2.0;
  ClusterChannel ch(members, 4.0, factor, 1e6);
  Rng rng = make_stream(99, 0);
  std::vector<RoutedMessage> msgs;
  for (int i = 0; i < 16 * 4; ++i) {
    NodeId s = members[uniform_below(rng, 16)], d = members[uniform_below(rng, 16)];
    msgs.push_back({s, d, Message{1}});
  }
  std::map<NodeId, std::uint64_t> out, in;
  for (const auto& m : msgs) {
    ++out[m.src];
    ++in[m.dst];
  }
  std::uint64_t L = 0;
  for (auto& [k, v] : out) L = std::max(L, v);
  for (auto& [k, v] : in) L = std::max(L, v);
  auto r = ch.route(msgs);
  EXPECT_EQ(r.max_load, L);
  EXPECT_EQ(r.charged_rounds, static_cast<std::uint64_t>(factor * ((L + 3) / 4)));
}

TEST(ClusterRoute, Violations) {
  ClusterChannel ch({0, 1, 2}, 1.0, 1.0, 2.0);
  std::vector<RoutedMessage> outside{{0, 5, Message{1}}};
  EXPECT_THROW(ch.route(outside), BudgetViolation);
  std::vector<RoutedMessage> heavy(3, RoutedMessage{0, 1, Message{1}});
  EXPECT_THROW(ch.route(heavy), BudgetViolation);
}

TEST(ClusterRoute, CostMonotone) {
  std::uint64_t prev = 0;
  ClusterChannel small({0}, 3.0, 2.0, 1e9), big({0}, 6.0, 2.0, 1e9);
  for (std::uint64_t L = 0; L < 50; ++L) {
    EXPECT_GE(small.cost_for_load(L), prev);
    EXPECT_LE(big.cost_for_load(L), small.cost_for_load(L));
    prev = small.cost_for_load(L);
  }
}

TEST(AssignIds, Examples) {
  Cluster single{0, {7}};
  EXPECT_EQ(assign_cluster_ids(single).at(7), 1u);
  Cluster c{0, {2, 5, 9}};
  auto ids = assign_cluster_ids(c);
  EXPECT_EQ(ids.at(2), 1u);
  EXPECT_EQ(ids.at(5), 2u);
  EXPECT_EQ(ids.at(9), 3u);
}

TEST(AssignIds, ParallelChargedOnce) {
  Config cfg;
  std::vector<Cluster> cs{{0, {0, 3, 4}}, {1, {1, 2, 6, 8}}};
  Accounting acct(10);
  auto ids = assign_cluster_ids(cs, 10, cfg, acct);
  ASSERT_EQ(ids.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    std::vector<std::uint32_t> vals;
    for (auto& [v, id] : ids[i]) vals.push_back(id);
    std::sort(vals.begin(), vals.end());
    for (std::size_t j = 0; j < vals.size(); ++j) EXPECT_EQ(vals[j], j + 1);
  }
  EXPECT_EQ(acct.charges().size(), 1u);
  EXPECT_EQ(acct.total_rounds(), ceil_log2(10));
}
