#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cliquelist/accounting.hpp"
#include "cliquelist/cluster_channel.hpp"
#include "cliquelist/config.hpp"
#include "cliquelist/graph.hpp"

namespace cliquelist {

enum class EdgeLabel : std::uint8_t { M, S, R };

const char* to_string(EdgeLabel l);

/// E = E_m + E_s + E_r over the edges of one graph, indexed like Graph::edges().
struct EdgePartition {
  double delta = 0.0;
  std::vector<EdgeLabel> labels;
  std::vector<std::int32_t> edge_cluster;  // cluster index for M-edges, -1 otherwise
  std::vector<NodeId> s_tail;              // orientation of S-edges; unused for M/R
  std::vector<Cluster> clusters;
  std::vector<std::int32_t> node_cluster;  // cluster index per node, -1 outside every cluster

  std::size_t count(EdgeLabel l) const;
  std::vector<std::size_t> s_out_degrees(std::size_t n) const;

  nlohmann::json to_json(const Graph& g) const;
  /// Reads the format written by to_json; edges are matched against g.
  static EdgePartition from_json(const Graph& g, const nlohmann::json& j);
};

class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-check outcome of verify_decomposition.
struct DecompositionReport {
  bool labels_total = true;       // every edge has exactly one label
  bool clusters_valid = true;     // disjoint, connected in M, M-edges inside their cluster
  bool min_degree_ok = true;      // M-degree >= min_degree_factor * n^delta
  bool conductance_ok = true;     // certified conductance >= phi_min
  bool s_bound_ok = true;         // S out-degree <= n^delta
  bool r_bound_ok = true;         // 6 |R| <= |E|

  double min_degree_required = 0.0;
  std::size_t min_m_degree = 0;
  double phi_min = 0.0;
  double min_conductance = 1.0;
  std::size_t s_cap = 0;
  std::size_t max_s_out = 0;
  std::size_t r_count = 0;
  std::size_t edge_count = 0;
  std::vector<std::string> failures;

  bool passed() const {
    return labels_total && clusters_valid && min_degree_ok && conductance_ok && s_bound_ok && r_bound_ok;
  }
  nlohmann::json to_json() const;
};

/// n^delta rounded down; the integral S out-degree allowance.
std::size_t s_out_cap(std::size_t n, double delta);

/// Centralized reference construction. Repeatedly peels nodes whose remaining
/// degree is below min_degree_factor * n^delta into S (oriented away from the
/// peeled node), accepts connected components whose certified conductance is
/// at least phi_min as clusters, and splits the others along a spectral sweep
/// cut whose edges go to R. Finally R-edges are relabeled S wherever an
/// endpoint still has S out-degree room. `n` is g.num_nodes().
///
/// Charges decomposition_factor * n^(1-delta) * ceil(log2 n) rounds. Throws
/// DecompositionError if the result cannot meet 6|R| <= |E|.
EdgePartition expander_decompose(const Graph& g, double delta, const Config& cfg, Accounting& acct);

DecompositionReport verify_decomposition(const Graph& g, const EdgePartition& part, const Config& cfg);

}  // namespace cliquelist
