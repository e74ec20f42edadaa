#include "cliquelist/cluster_channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cliquelist {

bool Cluster::contains(NodeId v) const { return std::binary_search(members.begin(), members.end(), v); }

ClusterChannel::ClusterChannel(std::vector<NodeId> members, double capacity, double factor, double load_cap)
    : ClusterChannel(std::move(members), capacity, factor, load_cap, load_cap) {}

ClusterChannel::ClusterChannel(std::vector<NodeId> members, double capacity, double factor, double send_cap,
                               double recv_cap)
    : members_(std::move(members)), capacity_(capacity), factor_(factor), send_cap_(send_cap), recv_cap_(recv_cap) {
  std::sort(members_.begin(), members_.end());
  if (!(capacity_ > 0)) throw std::invalid_argument("channel capacity must be positive");
}

ClusterChannel ClusterChannel::for_cluster(const Cluster& c, std::size_t n, const Config& cfg) {
  const double nd = std::pow(static_cast<double>(n), c.delta);
  const double l = static_cast<double>(ceil_log2(n));
  return ClusterChannel(c.members, nd, cfg.routing_factor(n), cfg.load_cap_factor * nd * l * l);
}

ClusterChannel ClusterChannel::for_clique(std::size_t n, const Config& cfg, double recv_cap) {
  std::vector<NodeId> all(n);
  for (NodeId v = 0; v < n; ++v) all[v] = v;
  return ClusterChannel(std::move(all), std::max<double>(1.0, static_cast<double>(n) - 1.0),
                        cfg.clique_routing_factor, std::numeric_limits<double>::infinity(), recv_cap);
}

std::uint64_t ClusterChannel::cost_for_load(std::uint64_t max_load) const {
  if (max_load == 0) return 0;
  const double batches = std::ceil(static_cast<double>(max_load) / capacity_ - 1e-9);
  return static_cast<std::uint64_t>(std::ceil(factor_ * batches - 1e-9));
}

RouteResult ClusterChannel::settle(std::map<NodeId, std::uint64_t> send_load,
                                   std::map<NodeId, std::uint64_t> recv_load) const {
  RouteResult out;
  out.load_cap = recv_cap_;
  out.send_load = std::move(send_load);
  out.recv_load = std::move(recv_load);
  for (const auto* loads : {&out.send_load, &out.recv_load}) {
    const double cap = loads == &out.send_load ? send_cap_ : recv_cap_;
    for (const auto& [node, load] : *loads) {
      if (load == 0) continue;
      if (!std::binary_search(members_.begin(), members_.end(), node)) {
        throw BudgetViolation({node, "cluster_route: endpoint outside channel", 0, 1});
      }
      out.max_load = std::max(out.max_load, load);
      if (static_cast<double>(load) > cap) {
        throw BudgetViolation({node, "cluster_route: per-node load", cap, static_cast<double>(load)});
      }
    }
  }
  out.charged_rounds = cost_for_load(out.max_load);
  return out;
}

RouteResult ClusterChannel::route(std::span<const RoutedMessage> messages) const {
  std::map<NodeId, std::uint64_t> send_load;
  std::map<NodeId, std::uint64_t> recv_load;
  for (const auto& m : messages) {
    ++send_load[m.src];
    ++recv_load[m.dst];
  }
  auto out = settle(std::move(send_load), std::move(recv_load));
  for (const auto& m : messages) out.delivered[m.dst].push_back(m);
  return out;
}

std::map<NodeId, std::uint32_t> assign_cluster_ids(const Cluster& c) {
  std::vector<NodeId> sorted = c.members;
  std::sort(sorted.begin(), sorted.end());
  std::map<NodeId, std::uint32_t> ids;
  for (std::size_t i = 0; i < sorted.size(); ++i) ids[sorted[i]] = static_cast<std::uint32_t>(i + 1);
  return ids;
}

std::vector<std::map<NodeId, std::uint32_t>> assign_cluster_ids(std::span<const Cluster> clusters,
                                                                 std::size_t n, const Config& cfg,
                                                                 Accounting& acct) {
  std::vector<std::map<NodeId, std::uint32_t>> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) out.push_back(assign_cluster_ids(c));
  if (!clusters.empty()) {
    acct.charge("id_assign",
                static_cast<std::uint64_t>(std::ceil(cfg.id_assign_factor * static_cast<double>(ceil_log2(n)))));
  }
  return out;
}

}  // namespace cliquelist
