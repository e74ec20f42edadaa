#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "cliquelist/accounting.hpp"
#include "cliquelist/config.hpp"
#include "cliquelist/engine.hpp"
#include "cliquelist/graph.hpp"

namespace cliquelist {

/// A node set connected in the M-edges of a decomposition.
struct Cluster {
  std::uint32_t id = 0;
  std::vector<NodeId> members;  // sorted
  double delta = 0.0;
  double conductance_estimate = 0.0;

  std::size_t size() const { return members.size(); }
  bool contains(NodeId v) const;
};

struct RoutedMessage {
  NodeId src = 0;
  NodeId dst = 0;
  Message payload;
};

struct RouteResult {
  /// Delivered messages per destination, in submission order.
  std::map<NodeId, std::vector<RoutedMessage>> delivered;
  std::uint64_t charged_rounds = 0;
  std::uint64_t max_load = 0;
  double load_cap = 0.0;
  std::map<NodeId, std::uint64_t> send_load;
  std::map<NodeId, std::uint64_t> recv_load;
};

/// Cost-accounted delivery inside a node set.
///
/// Messages are handed over directly; the channel charges
/// factor * ceil(L / capacity) rounds, where L is the largest per-node send or
/// receive count and capacity is the per-node volume one routing invocation
/// moves (n^delta inside an n^delta-cluster, n - 1 in the congested clique).
class ClusterChannel {
 public:
  ClusterChannel(std::vector<NodeId> members, double capacity, double factor, double load_cap);
  /// Separate send and receive caps.
  ClusterChannel(std::vector<NodeId> members, double capacity, double factor, double send_cap, double recv_cap);

  /// Inside a cluster: capacity n^delta, factor routing_factor(n),
  /// load_cap = load_cap_factor * n^delta * ceil(log2 n)^2.
  static ClusterChannel for_cluster(const Cluster& c, std::size_t n, const Config& cfg);
  /// All n nodes of a congested clique; the caller declares the receive
  /// budget, sends are uncapped.
  static ClusterChannel for_clique(std::size_t n, const Config& cfg, double recv_cap);

  /// Throws BudgetViolation if a member's load exceeds load_cap or an endpoint
  /// is not a member.
  RouteResult route(std::span<const RoutedMessage> messages) const;

  /// Checks per-node loads and computes the charge without materializing
  /// messages; `delivered` stays empty.
  RouteResult settle(std::map<NodeId, std::uint64_t> send_load, std::map<NodeId, std::uint64_t> recv_load) const;

  std::uint64_t cost_for_load(std::uint64_t max_load) const;

  const std::vector<NodeId>& members() const { return members_; }
  double capacity() const { return capacity_; }
  double load_cap() const { return recv_cap_; }
  double send_cap() const { return send_cap_; }

 private:
  std::vector<NodeId> members_;
  double capacity_;
  double factor_;
  double send_cap_;
  double recv_cap_;
};

/// Rank-by-original-ID assignment of new IDs 1..|C|.
std::map<NodeId, std::uint32_t> assign_cluster_ids(const Cluster& c);

/// All clusters at once; charges id_assign_factor * ceil(log2 n) rounds a
/// single time since the clusters run in parallel.
std::vector<std::map<NodeId, std::uint32_t>> assign_cluster_ids(std::span<const Cluster> clusters,
                                                                 std::size_t n, const Config& cfg,
                                                                 Accounting& acct);

}  // namespace cliquelist
