#include <algorithm>
#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "cliquelist/generators.hpp"
#include "cliquelist/oracle.hpp"
#include "cliquelist/sparse_list.hpp"

using namespace cliquelist;

TEST(RandomPartition, Trivial) {
  auto one = random_partition(50, 1, 3);
  for (auto a : one.assignment) EXPECT_EQ(a, 0u);
  EXPECT_TRUE(random_partition(0, 4, 3).assignment.empty());
}

TEST(RandomPartition, PartSizesConcentrate) {
  const std::size_t n = 10000, parts = 10;
  auto p = random_partition(n, parts, 5);
  std::vector<std::size_t> tally(parts, 0);
  for (auto a : p.assignment) ++tally.at(a);
  const double mean = double(n) / parts, slack = 10 * std::sqrt(double(n) / parts);
  for (auto t : tally) EXPECT_LE(std::abs(double(t) - mean), slack);
}

TEST(Balance, SinglePartAndEmpty) {
  Graph g = gnp(60, 0.2, 1);
  auto rep = check_partition_balance(g, random_partition(60, 1, 1));
  ASSERT_FALSE(rep.entries.empty());
  for (const auto& e : rep.entries) {
    EXPECT_EQ(e.edges, g.num_edges());
    EXPECT_TRUE(e.ok);
  }
  auto empty = check_partition_balance(empty_graph(30), random_partition(30, 3, 2));
  for (const auto& e : empty.entries) EXPECT_EQ(e.edges, 0u);
  EXPECT_EQ(empty.violations(), 0u);
}

TEST(Balance, CountsMatchTally) {
  Graph g = gnp(80, 0.2, 4);
  auto part = random_partition(80, 4, 8);
  auto rep = check_partition_balance(g, part);
  for (const auto& e : rep.entries) {
    std::uint64_t c = 0;
    for (const auto& ed : g.edges()) {
      auto in = [&](NodeId v) { return part.part(v) == e.a || part.part(v) == e.b; };
      c += in(ed.u) && in(ed.v);
    }
    EXPECT_EQ(e.edges, c);
  }
  EXPECT_EQ(rep.entries.size(), 4u + 6u);
}

TEST(TupleAssign, Examples) {
  EXPECT_EQ(tuple_assign(1, 7, 4), (std::vector<std::uint32_t>{0, 0, 0, 0}));
  EXPECT_EQ(tuple_assign(6, 2, 3), (std::vector<std::uint32_t>{1, 0, 1}));
  std::set<std::vector<std::uint32_t>> seen;
  for (std::uint64_t id = 1; id <= 81; ++id) seen.insert(tuple_assign(id, 3, 4));
  EXPECT_EQ(seen.size(), 81u);
  for (const auto& t : seen)
    for (auto d : t) EXPECT_LT(d, 3u);
}

TEST(TupleAssign, PartsFor) {
  EXPECT_EQ(parts_for(1, 3), 1u);
  EXPECT_EQ(parts_for(8, 3), 2u);
  EXPECT_EQ(parts_for(9, 3), 3u);
  EXPECT_EQ(parts_for(81, 4), 3u);
  EXPECT_EQ(parts_for(82, 4), 4u);
  EXPECT_THROW(tuple_count(1u << 14, 2), std::length_error);
}

TEST(Fanout, SinglePartReachesEveryone) {
  auto f = delivery_fanout(0, 0, 1, 4, 9);
  EXPECT_EQ(f.size(), 9u);
  FanoutTable table(9, 1, 4);
  EXPECT_EQ(table.recipients(0, 0).size(), 9u);
  EXPECT_EQ(table.canonical(1).size(), 1u);
  for (std::uint32_t id = 2; id <= 9; ++id) EXPECT_TRUE(table.canonical(id).empty());
  EXPECT_EQ(covered_tuples(7, 9, 1, 4), (std::vector<std::uint64_t>{0}));
}

TEST(Fanout, SamePartTwoDigits) {
  for (std::uint32_t a : {0u, 1u}) {
    auto f = delivery_fanout(a, a, 2, 2, 4);
    ASSERT_EQ(f.size(), 1u);
    EXPECT_EQ(tuple_assign(f[0], 2, 2), (std::vector<std::uint32_t>{a, a}));
  }
}

TEST(Fanout, MatchesTupleScan) {
  Rng rng = make_stream(17, 1);
  FanoutTable table(81, 3, 4);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = static_cast<std::uint32_t>(uniform_below(rng, 3)), b = static_cast<std::uint32_t>(uniform_below(rng, 3));
    std::vector<std::uint32_t> expect;
    for (std::uint64_t t = 0; t < 81; ++t) {
      std::uint64_t x = t;
      int ca = 0, cb = 0;
      for (int i = 0; i < 4; ++i, x /= 3) {
        ca += (x % 3 == a);
        cb += (x % 3 == b);
      }
      if (a == b ? ca >= 2 : (ca >= 1 && cb >= 1)) expect.push_back(static_cast<std::uint32_t>(t + 1));
    }
    EXPECT_EQ(delivery_fanout(a, b, 3, 4, 81), expect);
    EXPECT_EQ(table.recipients(a, b), expect);
  }
}

TEST(Fanout, WrapsWhenFewerIdsThanTuples) {
  // k = 5 ids share 2^3 = 8 tuples: id i holds tuples i-1 and i-1+5.
  auto held = covered_tuples(2, 5, 2, 3);
  EXPECT_EQ(held, (std::vector<std::uint64_t>{1, 6}));
  FanoutTable table(5, 2, 3);
  std::size_t total = 0;
  for (std::uint32_t id = 1; id <= 5; ++id) total += table.canonical(id).size();
  EXPECT_EQ(total, 4u);  // multisets of size 3 over 2 parts
}

TEST(CcList, CompleteTriangles) {
  Config cfg;
  auto r = cc_list_kp(complete_graph(8), 3, 1, cfg);
  EXPECT_EQ(r.cliques.size(), 56u);
  EXPECT_EQ(r.raw_outputs, 56u);
}

TEST(CcList, EmptyGraphOnlyPadding) {
  Config cfg;
  auto r = cc_list_kp(empty_graph(32), 4, 1, cfg);
  EXPECT_TRUE(r.cliques.empty());
  EXPECT_EQ(r.m_real, 0u);
  EXPECT_EQ(r.fake_edges, r.m_padded);
  EXPECT_EQ(r.m_padded, padded_edge_target(32, 4, cfg));
  EXPECT_GT(r.accounting.total_rounds(), 0u);
}

TEST(CcList, PlantedEqualsOracle) {
  Config cfg;
  auto pg = planted(48, 5, 2, 0.1, 11);
  auto r = cc_list_kp(pg.graph, 5, 11, cfg);
  EXPECT_EQ(r.cliques, brute_force_list_kp(pg.graph, 5));
  for (const auto& c : pg.planted) EXPECT_TRUE(std::binary_search(r.cliques.begin(), r.cliques.end(), c));
}

TEST(CcList, ExactlyOnceAndWithinBudget) {
  Config cfg;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    Graph g = gnp(40, 0.4, seed);
    for (std::size_t p = 3; p <= 5; ++p) {
      auto r = cc_list_kp(g, p, seed, cfg);
      auto want = brute_force_list_kp(g, p);
      EXPECT_EQ(r.cliques, want);
      EXPECT_EQ(r.raw_outputs, want.size());
      EXPECT_LE(static_cast<double>(r.max_received), r.receive_budget);
      EXPECT_LE(r.load_const, cfg.load_const_ceiling);
      for (const auto& c : r.accounting.charges()) {
        if (c.budget > 0) {
          EXPECT_LE(static_cast<double>(c.max_load), c.budget);
        }
      }
    }
  }
}

TEST(CcList, FakeEdgesNeverListed) {
  // Sparse input on few nodes: almost everything is padding, which would form
  // many cliques if it were used.
  Config cfg;
  Graph g(24, std::vector<Edge>{{0, 1}, {1, 2}});
  auto r = cc_list_kp(g, 3, 5, cfg);
  EXPECT_GT(r.fake_edges, 100u);
  EXPECT_TRUE(r.cliques.empty());
}

TEST(CcList, TightBudgetAborts) {
  Config cfg;
  cfg.set("load_const_ceiling", 1e-3);
  EXPECT_THROW(cc_list_kp(gnp(30, 0.5, 1), 3, 1, cfg), BudgetViolation);
}

TEST(Responsibility, RangeArithmetic) {
  auto m = ResponsibilityMap::make(10, 3);  // ranges of 4
  EXPECT_EQ(m.range, 4u);
  EXPECT_EQ(m.owner(0), 1u);
  EXPECT_EQ(m.owner(3), 1u);
  EXPECT_EQ(m.owner(4), 2u);
  EXPECT_EQ(m.owner(9), 3u);
  EXPECT_EQ(m.range_of(3), (std::pair<NodeId, NodeId>{8, 10}));
  auto same = ResponsibilityMap::make(12, 12);
  for (NodeId x = 0; x < 12; ++x) EXPECT_EQ(same.owner(x), x + 1);
}

TEST(CcList, RoundsNondecreasingInEdges) {
  Config cfg;
  for (std::size_t n : {64u, 128u}) {
    std::uint64_t prev = 0;
    for (double q : {0.05, 0.1, 0.2, 0.4, 0.6, 0.8}) {
      std::vector<std::uint64_t> rounds;
      for (std::uint64_t seed = 1; seed <= 3; ++seed)
        rounds.push_back(cc_list_kp(gnp(n, q, seed), 3, seed, cfg).accounting.total_rounds());
      std::sort(rounds.begin(), rounds.end());
      EXPECT_GE(rounds[1], prev) << "n=" << n << " q=" << q;
      prev = rounds[1];
    }
  }
}
