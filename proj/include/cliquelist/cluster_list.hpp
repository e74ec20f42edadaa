#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <json.hpp>

#include "cliquelist/accounting.hpp"
#include "cliquelist/cluster_channel.hpp"
#include "cliquelist/config.hpp"
#include "cliquelist/graph.hpp"
#include "cliquelist/sparse_list.hpp"

namespace cliquelist {

/// Thresholds and switches of one cluster-pipeline invocation.
struct ClusterParams {
  std::size_t n = 0;
  double d = 1.0;         // the orientation of the working graph has out-degree <= out_cap
  double out_cap = 0.0;   // n^d
  double heavy_threshold = 0.0;
  bool heavy_inclusive = false;  // heavy iff g >= threshold rather than g > threshold
  double light_threshold = 0.0;
  bool defer_bad = true;
  bool light_probes = true;
  bool light_local_k4 = false;
  double learn_cap = 0.0;

  /// heavy_factor * n^(1/4), light_factor * n^(1/2) * log2 n,
  /// learn_cap = learn_factor * n^(d + 3/4) * ceil(log2 n).
  static ClusterParams general(std::size_t n, double d, const Config& cfg);
  /// Heavy iff g >= k4_heavy_factor * n^(d - 1/3); no bad edges, no probes;
  /// light nodes list locally.
  static ClusterParams k4(std::size_t n, double d, const Config& cfg);

  bool heavy(std::uint64_t g_vc) const;
  nlohmann::json to_json() const;
};

struct ClusterInput {
  Cluster cluster;
  std::vector<Edge> m_edges;  // sorted
};

struct NeighborClassification {
  std::map<NodeId, std::uint32_t> g_vc;      // outside neighbor -> neighbors in C
  std::vector<NodeId> heavy;                 // sorted
  std::vector<NodeId> light;                 // sorted
  std::map<NodeId, std::uint32_t> u_light;   // member -> light neighbors
  std::vector<NodeId> bad;                   // sorted members

  bool is_heavy(NodeId v) const;
  bool is_light(NodeId v) const;
  bool is_bad(NodeId u) const;
};

/// Engine protocol for all clusters at once: members announce their cluster,
/// outside nodes count and answer heavy/light, members count light neighbors.
std::vector<NeighborClassification> classify_all(const Graph& g, std::span<const ClusterInput> clusters,
                                                 const ClusterParams& params, const Config& cfg,
                                                 std::uint64_t seed, Accounting& acct);
NeighborClassification classify(const Graph& g, const ClusterInput& c, const ClusterParams& params,
                                const Config& cfg, std::uint64_t seed, Accounting& acct);

struct GoalEdgeSet {
  std::vector<Edge> goal;       // sorted
  std::vector<Edge> bad_edges;  // sorted

  bool is_goal(const Edge& e) const;
};

/// M-edges between two bad members are bad; the rest are goal edges.
GoalEdgeSet mark_bad_edges(const ClusterInput& c, const NeighborClassification& cls, const ClusterParams& params);

enum class LearnTag : std::uint8_t { HeavyImport, LightProbe };

struct LearnedEdge {
  Edge e;
  LearnTag tag = LearnTag::HeavyImport;
};

/// Outside edges (no endpoint in C) learned by each member.
struct LearnedEdges {
  std::map<NodeId, std::vector<LearnedEdge>> by_member;

  std::size_t total() const;
  std::size_t max_per_member() const;
  /// Sorted, deduplicated union.
  std::vector<Edge> all_edges() const;
};

/// Engine protocol for all clusters at once. Heavy nodes split their outgoing
/// edges round-robin over their cluster neighbors; good members send their
/// light-neighbor list to each outside neighbor, which answers with bitmaps.
/// Throws BudgetViolation if a member learns more than learn_cap edges.
std::vector<LearnedEdges> import_all(const Graph& g, std::span<const ClusterInput> clusters,
                                     std::span<const NeighborClassification> classes,
                                     const ClusterParams& params, const Config& cfg, std::uint64_t seed,
                                     Accounting& acct);
LearnedEdges import_outside_edges(const Graph& g, const ClusterInput& c, const NeighborClassification& cls,
                                  const ClusterParams& params, const Config& cfg, std::uint64_t seed,
                                  Accounting& acct);

/// Edges {v, v'} outside C that lie in a K_4 with a goal edge but that no
/// member learned. Empty means the import is complete.
std::vector<Edge> missing_outside_edges(const Graph& g, const ClusterInput& c, const GoalEdgeSet& goal,
                                        const LearnedEdges& learned);

struct Reshuffled {
  ResponsibilityMap map;
  std::vector<NodeId> id_to_node;              // new ID i -> member at index i - 1
  std::vector<std::vector<ListingEdge>> owned;  // per new ID
  std::uint64_t known_edges = 0;
  std::uint64_t max_owned = 0;
  double owner_cap = 0.0;  // n^d * ceil(n/k)
  RouteResult route;
};

/// Routes every edge known inside C (incident to a member, or learned) to the
/// member responsible for its tail.
Reshuffled reshuffle(const Graph& g, const ClusterInput& c, const GoalEdgeSet& goal, const LearnedEdges& learned,
                     const ClusterParams& params, const Config& cfg, Accounting& acct);

struct ClusterListing {
  CliqueSet cliques;
  std::uint64_t raw_outputs = 0;
  std::size_t num_parts = 1;
  std::uint64_t max_received = 0;
};

/// Partition, delivery and local listing inside C; lists every K_p of g with
/// a goal edge whose edges are all known inside C.
ClusterListing cluster_list_kp(const Graph& g, const ClusterInput& c, const Reshuffled& shuffled, std::size_t p,
                               std::uint64_t seed, const Config& cfg, Accounting& acct);

/// K_4 variant: every C-light node probes each of its cluster neighbors in
/// turn, cluster by cluster, and lists the K_4s through itself that contain a
/// goal edge of C.
CliqueSet k4_light_listing(const Graph& g, std::span<const ClusterInput> clusters,
                           std::span<const NeighborClassification> classes, std::span<const GoalEdgeSet> goals,
                           const Config& cfg, std::uint64_t seed, Accounting& acct);

struct ClusterRun {
  ClusterInput input;
  NeighborClassification cls;
  GoalEdgeSet goal;
  LearnedEdges learned;
  std::uint64_t known_edges = 0;
  std::uint64_t max_owned = 0;
  ClusterListing listing;
  Accounting acct;

  nlohmann::json to_json() const;
};

struct ClustersResult {
  std::vector<ClusterRun> runs;
  CliqueSet cliques;
  std::vector<Edge> bad_edges;  // sorted
  std::uint64_t m_edges = 0;
};

/// The whole per-cluster pipeline for all clusters of one decomposition.
ClustersResult run_clusters(const Graph& g, std::vector<ClusterInput> clusters, const ClusterParams& params,
                            std::size_t p, std::uint64_t seed, const Config& cfg, Accounting& acct);

/// Adds per-phase charges of concurrently running parts: rounds are the
/// maximum over parts, messages the sum.
void charge_parallel(Accounting& into, std::span<const Accounting> parts);

}  // namespace cliquelist
