#include "cliquelist/local_list.hpp"

#include <algorithm>
#include <bit>

namespace cliquelist {

KnownEdges::KnownEdges(std::span<const Edge> edges) {
  nodes_.reserve(edges.size() * 2);
  for (const auto& e : edges) {
    nodes_.push_back(e.u);
    nodes_.push_back(e.v);
  }
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  words_ = (nodes_.size() + 63) / 64;
  adj_.assign(nodes_.size(), Bits(words_, 0));
  for (const auto& e : edges) {
    if (e.u == e.v) continue;
    auto a = static_cast<std::size_t>(local(e.u));
    auto b = static_cast<std::size_t>(local(e.v));
    if ((adj_[a][b / 64] >> (b % 64)) & 1U) continue;
    adj_[a][b / 64] |= std::uint64_t{1} << (b % 64);
    adj_[b][a / 64] |= std::uint64_t{1} << (a % 64);
    ++num_edges_;
  }
}

std::int64_t KnownEdges::local(NodeId v) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), v);
  if (it == nodes_.end() || *it != v) return -1;
  return it - nodes_.begin();
}

bool KnownEdges::knows(NodeId a, NodeId b) const {
  auto la = local(a);
  auto lb = local(b);
  if (la < 0 || lb < 0) return false;
  auto b2 = static_cast<std::size_t>(lb);
  return (adj_[static_cast<std::size_t>(la)][b2 / 64] >> (b2 % 64)) & 1U;
}

void KnownEdges::for_each_clique(std::size_t p, std::span<const NodeId> required,
                                 const std::function<bool(NodeId)>& allowed, const Emit& emit) const {
  if (p < required.size() || nodes_.empty()) return;
  Bits candidates(words_, 0);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!allowed || allowed(nodes_[i])) candidates[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  std::vector<std::uint32_t> partial;
  for (auto r : required) {
    auto lr = local(r);
    if (lr < 0) return;
    const auto l = static_cast<std::uint32_t>(lr);
    for (auto q : partial) {
      if (!((adj_[q][l / 64] >> (l % 64)) & 1U)) return;
    }
    partial.push_back(l);
    for (std::size_t w = 0; w < words_; ++w) candidates[w] &= adj_[l][w];
  }
  std::vector<NodeId> scratch;
  extend(p, partial, candidates, emit, scratch);
}

void KnownEdges::extend(std::size_t p, std::vector<std::uint32_t>& partial, const Bits& candidates,
                        const Emit& emit, std::vector<NodeId>& scratch) const {
  if (partial.size() == p) {
    scratch.clear();
    for (auto l : partial) scratch.push_back(nodes_[l]);
    std::sort(scratch.begin(), scratch.end());
    emit(scratch);
    return;
  }
  std::size_t available = 0;
  for (auto w : candidates) available += static_cast<std::size_t>(std::popcount(w));
  if (partial.size() + available < p) return;

  Bits rest = candidates;
  for (std::size_t w = 0; w < words_; ++w) {
    while (rest[w] != 0) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(rest[w]));
      const auto v = static_cast<std::uint32_t>(w * 64 + bit);
      rest[w] &= rest[w] - 1;
      // Later picks come only from `rest`, so each clique is produced once.
      Bits next(words_);
      for (std::size_t x = 0; x < words_; ++x) next[x] = rest[x] & adj_[v][x];
      partial.push_back(v);
      extend(p, partial, next, emit, scratch);
      partial.pop_back();
    }
  }
}

CliqueSet KnownEdges::cliques(std::size_t p) const {
  CliqueSet out;
  for_each_clique(p, {}, nullptr, [&out](std::span<const NodeId> c) { out.emplace_back(std::vector<NodeId>(c.begin(), c.end())); });
  normalize(out);
  return out;
}

CliqueSet KnownEdges::cliques_containing(std::size_t p, NodeId v) const {
  CliqueSet out;
  const NodeId req[] = {v};
  for_each_clique(p, req, nullptr,
                  [&out](std::span<const NodeId> c) { out.emplace_back(std::vector<NodeId>(c.begin(), c.end())); });
  normalize(out);
  return out;
}

}  // namespace cliquelist
