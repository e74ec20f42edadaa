#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cliquelist/accounting.hpp"
#include "cliquelist/cluster_channel.hpp"
#include "cliquelist/config.hpp"
#include "cliquelist/graph.hpp"

namespace cliquelist {

struct NodePartition {
  std::size_t num_parts = 1;
  std::vector<std::uint32_t> assignment;  // node -> part in [0, num_parts)
  std::uint64_t seed = 0;

  std::uint32_t part(NodeId v) const { return assignment.at(v); }
};

/// Each node draws its part from its own stream of `seed`.
NodePartition random_partition(std::size_t n, std::size_t num_parts, std::uint64_t seed);

struct BalanceEntry {
  std::uint32_t a = 0;  // a == b: a single part
  std::uint32_t b = 0;
  std::uint64_t edges = 0;
  double bound = 0.0;
  bool ok = true;
};

struct BalanceReport {
  std::uint64_t m = 0;
  std::size_t num_parts = 1;
  std::size_t max_degree = 0;
  bool degree_precondition = false;
  bool density_precondition = false;
  std::vector<BalanceEntry> entries;

  bool applicable() const { return degree_precondition && density_precondition; }
  std::size_t violations() const;
};

/// Edge counts inside every part and every union of two parts against
/// 6 q^2 m, with q = 1/num_parts for a part and 2/num_parts for a union.
BalanceReport check_partition_balance(const Graph& g, const NodePartition& part);

/// Contiguous ranges of size ceil(n/k): new ID i owns [(i-1)s, is).
struct ResponsibilityMap {
  std::size_t n = 0;
  std::size_t k = 1;
  std::size_t range = 1;

  static ResponsibilityMap make(std::size_t n, std::size_t k);
  std::uint32_t owner(NodeId x) const { return static_cast<std::uint32_t>(x / range + 1); }
  /// Half-open original-ID range, clamped to n.
  std::pair<NodeId, NodeId> range_of(std::uint32_t new_id) const;
};

/// Smallest r >= 1 with r^p >= k.
std::size_t parts_for(std::size_t k, std::size_t p);
/// num_parts^p; throws std::length_error above 2^26.
std::uint64_t tuple_count(std::size_t num_parts, std::size_t p);
/// Little-endian base-num_parts digits of new_id - 1, padded to p.
std::vector<std::uint32_t> tuple_assign(std::uint64_t new_id, std::size_t num_parts, std::size_t p);
/// Tuple indices held by new_id when k nodes share the tuple space:
/// new_id - 1, new_id - 1 + k, ... When there are more IDs than tuples,
/// new_id holds tuple (new_id - 1) mod num_parts^p.
std::vector<std::uint64_t> covered_tuples(std::uint32_t new_id, std::size_t k, std::size_t num_parts, std::size_t p);

/// New IDs in [1..k] holding a tuple that contains parts a and b (twice if
/// a == b).
std::vector<std::uint32_t> delivery_fanout(std::uint32_t a, std::uint32_t b, std::size_t num_parts, std::size_t p,
                                           std::size_t k);
std::vector<std::uint32_t> delivery_fanout(const Edge& e, const NodePartition& part, std::size_t p, std::size_t k);

/// Precomputed fanout for every part pair plus the sorted part multisets each
/// new ID is the canonical lister for.
class FanoutTable {
 public:
  FanoutTable(std::size_t k, std::size_t num_parts, std::size_t p);

  const std::vector<std::uint32_t>& recipients(std::uint32_t a, std::uint32_t b) const;
  /// Nondecreasing tuples held by new_id; a clique whose sorted parts equal
  /// one of these is listed by new_id and by nobody else.
  const std::vector<std::vector<std::uint32_t>>& canonical(std::uint32_t new_id) const;
  std::size_t num_parts() const { return parts_; }

 private:
  std::size_t k_;
  std::size_t parts_;
  std::size_t p_;
  std::vector<std::vector<std::uint32_t>> pair_;
  std::vector<std::vector<std::vector<std::uint32_t>>> canonical_;
};

struct ListingEdge {
  Edge e;
  bool fake = false;
  bool goal = false;
};

struct ListingSetup {
  std::size_t p = 3;
  std::size_t k = 1;
  std::vector<NodeId> id_to_node;  // new ID i -> graph node at index i - 1
  const NodePartition* partition = nullptr;
  bool require_goal = false;
};

struct ListingOutcome {
  CliqueSet cliques;  // normalized
  std::uint64_t raw_outputs = 0;
  std::vector<std::uint64_t> received;  // per new ID
  std::uint64_t max_received = 0;
  std::uint64_t messages = 0;
  RouteResult route;
};

/// Delivery plus local listing: owner i sends each edge in owned[i-1] to every
/// new ID in its fanout, and each recipient lists the cliques of its canonical
/// part multisets among the non-fake edges it received.
ListingOutcome sparse_listing_core(const ListingSetup& setup, std::span<const std::vector<ListingEdge>> owned,
                                   const ClusterChannel& channel);

struct CcListResult {
  CliqueSet cliques;
  std::uint64_t raw_outputs = 0;
  std::size_t p = 3;
  std::size_t num_parts = 1;
  std::uint64_t m_real = 0;
  std::uint64_t m_padded = 0;
  std::uint64_t fake_edges = 0;
  std::uint64_t max_received = 0;
  double receive_budget = 0.0;  // load_const_ceiling * p^2 * m_padded / num_parts^2
  double load_const = 0.0;      // max_received / (p^2 * m_padded / num_parts^2)
  std::vector<std::uint64_t> received;
  Accounting accounting;
};

/// Number of edges the clique-mode input is padded to.
std::uint64_t padded_edge_target(std::size_t n, std::size_t p, const Config& cfg);

/// Sparsity-aware listing in the congested clique.
CcListResult cc_list_kp(const Graph& g, std::size_t p, std::uint64_t seed, const Config& cfg);

}  // namespace cliquelist
