#include "cliquelist/sparse_list.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "cliquelist/engine.hpp"
#include "cliquelist/local_list.hpp"
#include "cliquelist/rng.hpp"

namespace cliquelist {

NodePartition random_partition(std::size_t n, std::size_t num_parts, std::uint64_t seed) {
  if (num_parts < 1) throw std::invalid_argument("random_partition: num_parts must be >= 1");
  NodePartition out;
  out.num_parts = num_parts;
  out.seed = seed;
  out.assignment.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto rng = make_stream(seed, v);
    out.assignment[v] = static_cast<std::uint32_t>(uniform_below(rng, num_parts));
  }
  return out;
}

std::size_t BalanceReport::violations() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.ok; }));
}

BalanceReport check_partition_balance(const Graph& g, const NodePartition& part) {
  const std::size_t r = part.num_parts;
  if (part.assignment.size() != g.num_nodes()) throw std::invalid_argument("partition does not cover the graph");
  BalanceReport rep;
  rep.m = g.num_edges();
  rep.num_parts = r;
  for (NodeId v = 0; v < g.num_nodes(); ++v) rep.max_degree = std::max(rep.max_degree, g.degree(v));

  const double q = 1.0 / static_cast<double>(r);
  const double m = static_cast<double>(rep.m);
  const double l = log2n(std::max<std::size_t>(g.num_nodes(), 2));
  rep.degree_precondition = static_cast<double>(rep.max_degree) <= m * q / (20.0 * l);
  rep.density_precondition = q * q * m >= 400.0 * l * l;

  // inside[a][b]: edges with parts {a, b}.
  std::vector<std::uint64_t> inside(r * r, 0);
  for (const auto& e : g.edges()) {
    auto a = part.part(e.u);
    auto b = part.part(e.v);
    if (a > b) std::swap(a, b);
    ++inside[a * r + b];
  }
  for (std::uint32_t a = 0; a < r; ++a) {
    BalanceEntry single{a, a, inside[a * r + a], 6.0 * q * q * m, true};
    single.ok = static_cast<double>(single.edges) <= single.bound;
    rep.entries.push_back(single);
  }
  const double q2 = std::min(1.0, 2.0 * q);
  for (std::uint32_t a = 0; a < r; ++a) {
    for (std::uint32_t b = a + 1; b < r; ++b) {
      BalanceEntry pair{a, b, inside[a * r + a] + inside[b * r + b] + inside[a * r + b], 6.0 * q2 * q2 * m, true};
      pair.ok = static_cast<double>(pair.edges) <= pair.bound;
      rep.entries.push_back(pair);
    }
  }
  return rep;
}

ResponsibilityMap ResponsibilityMap::make(std::size_t n, std::size_t k) {
  if (k < 1) throw std::invalid_argument("responsibility map needs k >= 1");
  ResponsibilityMap r;
  r.n = n;
  r.k = k;
  r.range = std::max<std::size_t>(1, (n + k - 1) / k);
  return r;
}

std::pair<NodeId, NodeId> ResponsibilityMap::range_of(std::uint32_t new_id) const {
  const std::size_t lo = std::min(n, (new_id - 1) * range);
  const std::size_t hi = std::min(n, new_id * range);
  return {static_cast<NodeId>(lo), static_cast<NodeId>(hi)};
}

namespace {

std::uint64_t ipow_capped(std::size_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t x = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    x *= base;
    if (x > cap) return cap + 1;
  }
  return x;
}

constexpr std::uint64_t kMaxTuples = std::uint64_t{1} << 26;

}  // namespace

std::size_t parts_for(std::size_t k, std::size_t p) {
  if (p < 1) throw std::invalid_argument("parts_for: p must be >= 1");
  std::size_t r = 1;
  while (ipow_capped(r, p, k) < k) ++r;
  return r;
}

std::uint64_t tuple_count(std::size_t num_parts, std::size_t p) {
  const auto t = ipow_capped(num_parts, p, kMaxTuples);
  if (t > kMaxTuples) throw std::length_error("tuple space too large");
  return t;
}

std::vector<std::uint32_t> tuple_assign(std::uint64_t new_id, std::size_t num_parts, std::size_t p) {
  if (new_id < 1) throw std::invalid_argument("tuple_assign: new_id starts at 1");
  if (num_parts < 1) throw std::invalid_argument("tuple_assign: num_parts must be >= 1");
  std::vector<std::uint32_t> digits(p, 0);
  std::uint64_t x = new_id - 1;
  for (std::size_t i = 0; i < p; ++i) {
    digits[i] = static_cast<std::uint32_t>(x % num_parts);
    x /= num_parts;
  }
  return digits;
}

std::vector<std::uint64_t> covered_tuples(std::uint32_t new_id, std::size_t k, std::size_t num_parts, std::size_t p) {
  const auto total = tuple_count(num_parts, p);
  std::vector<std::uint64_t> out;
  if (new_id > total) {
    out.push_back((new_id - 1) % total);
    return out;
  }
  for (std::uint64_t t = new_id - 1; t < total; t += k) out.push_back(t);
  return out;
}

namespace {

// New IDs holding tuple t: t % k + 1 when tuples outnumber IDs, otherwise
// t + 1 and its replicas t + 1 + total, t + 1 + 2 total, ...
template <typename F>
void for_each_holder(std::uint64_t t, std::uint64_t total, std::size_t k, F&& f) {
  if (total >= k) {
    f(static_cast<std::uint32_t>(t % k + 1));
    return;
  }
  for (std::uint64_t id = t + 1; id <= k; id += total) f(static_cast<std::uint32_t>(id));
}

bool contains_pair(std::span<const std::uint32_t> digits, std::uint32_t a, std::uint32_t b) {
  const auto ca = std::count(digits.begin(), digits.end(), a);
  if (a == b) return ca >= 2;
  return ca >= 1 && std::count(digits.begin(), digits.end(), b) >= 1;
}

}  // namespace

std::vector<std::uint32_t> delivery_fanout(std::uint32_t a, std::uint32_t b, std::size_t num_parts, std::size_t p,
                                           std::size_t k) {
  const auto total = tuple_count(num_parts, p);
  std::vector<std::uint32_t> out;
  for (std::uint64_t t = 0; t < total; ++t) {
    if (contains_pair(tuple_assign(t + 1, num_parts, p), a, b)) {
      for_each_holder(t, total, k, [&](std::uint32_t id) { out.push_back(id); });
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::uint32_t> delivery_fanout(const Edge& e, const NodePartition& part, std::size_t p, std::size_t k) {
  return delivery_fanout(part.part(e.u), part.part(e.v), part.num_parts, p, k);
}

FanoutTable::FanoutTable(std::size_t k, std::size_t num_parts, std::size_t p)
    : k_(k), parts_(num_parts), p_(p), pair_(num_parts * num_parts), canonical_(k) {
  if (k < 1) throw std::invalid_argument("FanoutTable: k must be >= 1");
  const auto total = tuple_count(num_parts, p);
  std::vector<std::vector<char>> seen(num_parts * num_parts, std::vector<char>(k, 0));
  std::vector<std::uint32_t> count(num_parts);
  for (std::uint64_t t = 0; t < total; ++t) {
    const auto digits = tuple_assign(t + 1, num_parts, p);
    std::fill(count.begin(), count.end(), 0);
    for (auto d : digits) ++count[d];
    for_each_holder(t, total, k, [&](std::uint32_t id) {
      const auto owner = id - 1;
      for (std::uint32_t a = 0; a < num_parts; ++a) {
        if (count[a] == 0) continue;
        if (count[a] >= 2) seen[a * num_parts + a][owner] = 1;
        for (std::uint32_t b = a + 1; b < num_parts; ++b) {
          if (count[b] > 0) seen[a * num_parts + b][owner] = 1;
        }
      }
    });
    // Replicas receive the same edges but only the first holder lists.
    if (std::is_sorted(digits.begin(), digits.end())) canonical_[t % k].push_back(digits);
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    for (std::uint32_t o = 0; o < k; ++o) {
      if (seen[i][o]) pair_[i].push_back(o + 1);
    }
  }
}

const std::vector<std::uint32_t>& FanoutTable::recipients(std::uint32_t a, std::uint32_t b) const {
  if (a > b) std::swap(a, b);
  return pair_.at(a * parts_ + b);
}

const std::vector<std::vector<std::uint32_t>>& FanoutTable::canonical(std::uint32_t new_id) const {
  return canonical_.at(new_id - 1);
}

ListingOutcome sparse_listing_core(const ListingSetup& setup, std::span<const std::vector<ListingEdge>> owned,
                                   const ClusterChannel& channel) {
  if (setup.partition == nullptr) throw std::invalid_argument("listing core needs a partition");
  if (owned.size() != setup.k || setup.id_to_node.size() != setup.k) {
    throw std::invalid_argument("listing core: owner tables must have k entries");
  }
  const auto& part = *setup.partition;
  const FanoutTable table(setup.k, part.num_parts, setup.p);

  ListingOutcome out;
  out.received.assign(setup.k, 0);
  std::vector<std::vector<Edge>> inbox(setup.k);
  std::vector<std::vector<Edge>> goal_inbox(setup.k);
  std::map<NodeId, std::uint64_t> send_load;
  std::map<NodeId, std::uint64_t> recv_load;

  for (std::uint32_t owner = 1; owner <= setup.k; ++owner) {
    // An edge known twice at its owner is sent once, goal if any copy is.
    auto edges = owned[owner - 1];
    std::sort(edges.begin(), edges.end(), [](const ListingEdge& x, const ListingEdge& y) {
      return std::tie(x.e, x.fake, x.goal) > std::tie(y.e, y.fake, y.goal);
    });
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const ListingEdge& x, const ListingEdge& y) { return x.e == y.e; }),
                edges.end());
    const NodeId src = setup.id_to_node[owner - 1];
    for (const auto& le : edges) {
      for (auto r : table.recipients(part.part(le.e.u), part.part(le.e.v))) {
        const NodeId dst = setup.id_to_node[r - 1];
        ++out.received[r - 1];
        ++out.messages;
        if (dst != src) {
          ++send_load[src];
          ++recv_load[dst];
        }
        if (le.fake) continue;
        inbox[r - 1].push_back(le.e);
        if (le.goal) goal_inbox[r - 1].push_back(le.e);
      }
    }
  }
  out.route = channel.settle(std::move(send_load), std::move(recv_load));
  for (auto x : out.received) out.max_received = std::max(out.max_received, x);

  std::vector<std::uint32_t> parts_scratch;
  for (std::uint32_t r = 1; r <= setup.k; ++r) {
    const auto& canon = table.canonical(r);
    if (canon.empty() || inbox[r - 1].empty()) continue;
    std::vector<char> allowed_part(part.num_parts, 0);
    for (const auto& m : canon) {
      for (auto d : m) allowed_part[d] = 1;
    }
    auto& goals = goal_inbox[r - 1];
    std::sort(goals.begin(), goals.end());
    const KnownEdges known(inbox[r - 1]);
    known.for_each_clique(
        setup.p, {}, [&](NodeId v) { return allowed_part[part.part(v)] != 0; },
        [&](std::span<const NodeId> c) {
          parts_scratch.clear();
          for (auto v : c) parts_scratch.push_back(part.part(v));
          std::sort(parts_scratch.begin(), parts_scratch.end());
          if (std::find(canon.begin(), canon.end(), parts_scratch) == canon.end()) return;
          if (setup.require_goal) {
            bool any = false;
            for (std::size_t i = 0; i < c.size() && !any; ++i) {
              for (std::size_t j = i + 1; j < c.size() && !any; ++j) {
                any = std::binary_search(goals.begin(), goals.end(), Edge(c[i], c[j]));
              }
            }
            if (!any) return;
          }
          ++out.raw_outputs;
          out.cliques.emplace_back(std::vector<NodeId>(c.begin(), c.end()));
        });
  }
  normalize(out.cliques);
  return out;
}

std::uint64_t padded_edge_target(std::size_t n, std::size_t p, const Config& cfg) {
  if (n < 2) return 0;
  const double nd = static_cast<double>(n);
  const double want = cfg.fake_edge_factor * nd * log2n(n) * std::pow(nd, 1.0 / static_cast<double>(p));
  const std::uint64_t all = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  return std::min<std::uint64_t>(all, static_cast<std::uint64_t>(std::ceil(want - 1e-9)));
}

CcListResult cc_list_kp(const Graph& g, std::size_t p, std::uint64_t seed, const Config& cfg) {
  if (p < 3) throw std::invalid_argument("cc_list_kp: p must be >= 3");
  const std::size_t n = g.num_nodes();
  CcListResult res;
  res.p = p;
  res.accounting = Accounting(n);
  res.m_real = g.num_edges();
  if (n == 0) return res;

  // Owner of an edge is its tail; node v has new ID v + 1.
  std::vector<std::vector<ListingEdge>> owned(n);
  for (EdgeIndex i = 0; i < g.num_edges(); ++i) owned[g.tail(i)].push_back({g.edge(i), false, false});

  const auto target = padded_edge_target(n, p, cfg);
  if (res.m_real < target) {
    auto rng = make_stream(seed, 0xfa4eULL);
    std::vector<Edge> absent;
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) {
        if (!g.adjacent(u, v)) absent.emplace_back(u, v);
      }
    }
    const auto need = std::min<std::uint64_t>(target - res.m_real, absent.size());
    for (std::uint64_t i = 0; i < need; ++i) {
      const auto j = i + uniform_below(rng, absent.size() - i);
      std::swap(absent[i], absent[j]);
      const auto& e = absent[i];
      const NodeId tail = uniform_below(rng, 2) == 0 ? e.u : e.v;
      owned[tail].push_back({e, true, false});
    }
    res.fake_edges = need;
  }
  res.m_padded = res.m_real + res.fake_edges;

  res.num_parts = parts_for(n, p);
  const auto partition = random_partition(n, res.num_parts, seed);

  // Every node tells every other node its part: one clique round.
  auto engine = RoundEngine::clique(n, cfg, seed);
  engine.run(
      "cc_partition",
      [&](NodeContext& ctx) {
        if (ctx.round() == 1) {
          for (NodeId v = 0; v < n; ++v) {
            if (v != ctx.id()) ctx.send(v, Message{partition.part(ctx.id())});
          }
        }
        ctx.halt();
      },
      res.accounting);

  const double parts2 = static_cast<double>(res.num_parts * res.num_parts);
  const double scale = static_cast<double>(p * p) * static_cast<double>(res.m_padded) / parts2;
  res.receive_budget = cfg.load_const_ceiling * scale;

  ListingSetup setup;
  setup.p = p;
  setup.k = n;
  setup.id_to_node.resize(n);
  for (NodeId v = 0; v < n; ++v) setup.id_to_node[v] = v;
  setup.partition = &partition;

  const auto channel = ClusterChannel::for_clique(n, cfg, std::max(1.0, res.receive_budget));
  auto outcome = sparse_listing_core(setup, owned, channel);
  std::uint64_t max_recv = 0;
  for (const auto& [v, load] : outcome.route.recv_load) max_recv = std::max(max_recv, load);
  PhaseCharge delivery;
  delivery.phase = "cc_delivery";
  delivery.rounds = outcome.route.charged_rounds;
  delivery.messages = outcome.messages;
  delivery.max_load = max_recv;
  delivery.budget = channel.load_cap();
  res.accounting.charge(delivery);
  for (const auto& [v, load] : outcome.route.send_load) res.accounting.count_sent(v, load);
  for (const auto& [v, load] : outcome.route.recv_load) res.accounting.count_received(v, load);

  res.cliques = std::move(outcome.cliques);
  res.raw_outputs = outcome.raw_outputs;
  res.received = std::move(outcome.received);
  res.max_received = outcome.max_received;
  res.load_const = scale > 0 ? static_cast<double>(res.max_received) / scale : 0.0;
  return res;
}

}  // namespace cliquelist
