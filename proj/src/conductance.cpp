#include "cliquelist/conductance.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

namespace cliquelist {

namespace {

std::vector<bool> first_component(const LocalGraph& g, bool& connected) {
  const auto k = g.size();
  std::vector<bool> seen(k, false);
  if (k == 0) {
    connected = true;
    return seen;
  }
  std::vector<std::uint32_t> stack = {0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto w : g.adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        stack.push_back(w);
      }
    }
  }
  connected = count == k;
  return seen;
}

}  // namespace

LocalGraph LocalGraph::induced(std::span<const NodeId> members, std::span<const Edge> edges) {
  LocalGraph g;
  g.nodes.assign(members.begin(), members.end());
  std::sort(g.nodes.begin(), g.nodes.end());
  g.adj.resize(g.nodes.size());
  auto local = [&g](NodeId v) -> std::int64_t {
    auto it = std::lower_bound(g.nodes.begin(), g.nodes.end(), v);
    if (it == g.nodes.end() || *it != v) return -1;
    return it - g.nodes.begin();
  };
  for (const auto& e : edges) {
    auto a = local(e.u);
    auto b = local(e.v);
    if (a < 0 || b < 0) continue;
    g.adj[static_cast<std::size_t>(a)].push_back(static_cast<std::uint32_t>(b));
    g.adj[static_cast<std::size_t>(b)].push_back(static_cast<std::uint32_t>(a));
    ++g.num_edges;
  }
  for (auto& a : g.adj) std::sort(a.begin(), a.end());
  return g;
}

double cut_conductance(const LocalGraph& g, const std::vector<bool>& side) {
  std::size_t vol_in = 0;
  std::size_t cut = 0;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (!side[v]) continue;
    vol_in += g.adj[v].size();
    for (auto w : g.adj[v]) {
      if (!side[w]) ++cut;
    }
  }
  const std::size_t vol_out = g.volume() - vol_in;
  const std::size_t denom = std::min(vol_in, vol_out);
  if (denom == 0) return cut == 0 ? 0.0 : 1.0;
  return static_cast<double>(cut) / static_cast<double>(denom);
}

double exact_conductance(const LocalGraph& g) {
  const auto k = g.size();
  if (k < 2) return 1.0;
  if (k > 24) throw std::invalid_argument("exact conductance limited to 24 nodes");
  bool connected = false;
  first_component(g, connected);
  if (!connected) return 0.0;

  // Gray-code walk over subsets that exclude node k-1 (complements are symmetric).
  const std::size_t vol = g.volume();
  std::vector<bool> in(k, false);
  std::size_t vol_in = 0;
  long long cut = 0;
  double best = std::numeric_limits<double>::infinity();
  const std::uint64_t total = std::uint64_t{1} << (k - 1);
  for (std::uint64_t i = 1; i < total; ++i) {
    const auto bit = static_cast<std::size_t>(std::countr_zero(i));
    long long inside = 0;
    for (auto w : g.adj[bit]) inside += in[w] ? 1 : 0;
    const auto deg = static_cast<long long>(g.adj[bit].size());
    if (!in[bit]) {
      in[bit] = true;
      vol_in += static_cast<std::size_t>(deg);
      cut += deg - 2 * inside;
    } else {
      in[bit] = false;
      vol_in -= static_cast<std::size_t>(deg);
      cut -= deg - 2 * inside;
    }
    const std::size_t denom = std::min(vol_in, vol - vol_in);
    if (denom == 0) continue;
    best = std::min(best, static_cast<double>(cut) / static_cast<double>(denom));
  }
  return std::isfinite(best) ? best : 1.0;
}

SpectralCut spectral_cut(const LocalGraph& g) {
  SpectralCut out;
  const auto k = g.size();
  out.side.assign(k, false);
  if (k < 2) {
    out.lambda2 = 2.0;
    return out;
  }
  bool connected = false;
  auto comp = first_component(g, connected);
  if (!connected) {
    out.lambda2 = 0.0;
    out.side = comp;
    out.side_conductance = 0.0;
    return out;
  }

  Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  std::vector<double> inv_sqrt_deg(k);
  for (std::size_t v = 0; v < k; ++v) inv_sqrt_deg[v] = 1.0 / std::sqrt(static_cast<double>(g.adj[v].size()));
  for (std::size_t v = 0; v < k; ++v) {
    for (auto w : g.adj[v]) {
      lap(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(w)) -= inv_sqrt_deg[v] * inv_sqrt_deg[w];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  out.lambda2 = std::max(0.0, solver.eigenvalues()(1));
  const Eigen::VectorXd fiedler = solver.eigenvectors().col(1);

  std::vector<std::uint32_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> embed(k);
  for (std::size_t v = 0; v < k; ++v) embed[v] = fiedler(static_cast<Eigen::Index>(v)) * inv_sqrt_deg[v];
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return embed[a] < embed[b]; });

  std::vector<bool> in(k, false);
  std::size_t vol_in = 0;
  long long cut = 0;
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_prefix = 1;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const auto v = order[i];
    long long inside = 0;
    for (auto w : g.adj[v]) inside += in[w] ? 1 : 0;
    in[v] = true;
    vol_in += g.adj[v].size();
    cut += static_cast<long long>(g.adj[v].size()) - 2 * inside;
    const std::size_t denom = std::min(vol_in, g.volume() - vol_in);
    if (denom == 0) continue;
    const double phi = static_cast<double>(cut) / static_cast<double>(denom);
    if (phi < best) {
      best = phi;
      best_prefix = i + 1;
    }
  }
  for (std::size_t i = 0; i < best_prefix; ++i) out.side[order[i]] = true;
  out.side_conductance = std::isfinite(best) ? best : 1.0;
  return out;
}

double certified_conductance(const LocalGraph& g, std::size_t exact_max_nodes) {
  if (g.size() <= exact_max_nodes) return exact_conductance(g);
  return spectral_cut(g).lambda2 / 2.0;
}

}  // namespace cliquelist
