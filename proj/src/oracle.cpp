#include "cliquelist/oracle.hpp"

#include <algorithm>
#include <iterator>

namespace cliquelist {

namespace {

template <typename Emit>
void extend(const Graph& g, std::size_t p, std::vector<NodeId>& partial, const std::vector<NodeId>& candidates,
            Emit& emit) {
  if (partial.size() == p) {
    emit(partial);
    return;
  }
  if (partial.size() + candidates.size() < p) return;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const NodeId v = candidates[i];
    auto nbrs = g.neighbors(v);
    std::vector<NodeId> next;
    // Candidates stay above v, so each clique is built in increasing order once.
    std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(i) + 1, candidates.end(),
                          std::upper_bound(nbrs.begin(), nbrs.end(), v), nbrs.end(), std::back_inserter(next));
    partial.push_back(v);
    extend(g, p, partial, next, emit);
    partial.pop_back();
  }
}

template <typename Emit>
void enumerate(const Graph& g, std::size_t p, Emit emit) {
  if (p < 3) throw GraphError("clique size must be at least 3");
  std::vector<NodeId> all(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) all[v] = v;
  std::vector<NodeId> partial;
  partial.reserve(p);
  extend(g, p, partial, all, emit);
}

}  // namespace

CliqueSet brute_force_list_kp(const Graph& g, std::size_t p) {
  CliqueSet out;
  enumerate(g, p, [&out](const std::vector<NodeId>& c) { out.push_back(Clique(c)); });
  normalize(out);
  return out;
}

std::size_t brute_force_count_kp(const Graph& g, std::size_t p) {
  std::size_t count = 0;
  enumerate(g, p, [&count](const std::vector<NodeId>&) { ++count; });
  return count;
}

}  // namespace cliquelist
