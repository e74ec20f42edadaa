#include "cliquelist/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace cliquelist {

Message::Message(std::initializer_list<std::uint64_t> ws) {
  if (ws.size() > kMaxMessageWords) throw std::invalid_argument("message has too many fields");
  std::copy(ws.begin(), ws.end(), words.begin());
  size = static_cast<std::uint8_t>(ws.size());
}

std::size_t field_bits(std::size_t n) { return std::max<std::size_t>(ceil_log2(n + 1), 4); }

std::size_t NodeContext::num_nodes() const { return engine_.n_; }

std::span<const NodeId> NodeContext::neighbors() const {
  if (engine_.topology_ == nullptr) return engine_.all_nodes_;
  return engine_.topology_->neighbors(id_);
}

void NodeContext::send(NodeId to, const Message& m) { engine_.submit(id_, to, m, round_); }

std::size_t NodeContext::remaining_capacity(NodeId to) const {
  return engine_.cap_ - std::min<std::size_t>(engine_.cap_, engine_.sent_this_round_[to]);
}

Rng& NodeContext::rng() {
  if (!engine_.rng_ready_[id_]) {
    engine_.rngs_[id_] = make_stream(engine_.seed_, id_);
    engine_.rng_ready_[id_] = true;
  }
  return engine_.rngs_[id_];
}

RoundEngine::RoundEngine(std::size_t n, const Graph* topology, const Config& cfg, std::uint64_t seed)
    : n_(n),
      topology_(topology),
      cap_(cfg.messages_per_edge_round()),
      max_words_(cfg.message_words),
      word_limit_(std::uint64_t{1} << field_bits(n)),
      max_rounds_(cfg.max_engine_rounds),
      seed_(seed),
      rngs_(n),
      rng_ready_(n, false),
      sent_this_round_(n, 0),
      next_inbox_(n) {
  if (topology_ == nullptr) {
    all_nodes_.resize(n);
    for (NodeId v = 0; v < n; ++v) all_nodes_[v] = v;
  }
}

RoundEngine::RoundEngine(const Graph& topology, const Config& cfg, std::uint64_t seed)
    : RoundEngine(topology.num_nodes(), &topology, cfg, seed) {}

RoundEngine RoundEngine::clique(std::size_t n, const Config& cfg, std::uint64_t seed) {
  return RoundEngine(n, nullptr, cfg, seed);
}

bool RoundEngine::linked(NodeId a, NodeId b) const {
  if (a == b || a >= n_ || b >= n_) return false;
  if (topology_ == nullptr) return true;
  auto nb = topology_->neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

void RoundEngine::submit(NodeId from, NodeId to, const Message& m, std::uint64_t round) {
  if (!linked(from, to)) {
    throw BudgetViolation({from, phase_ + ": send to non-neighbor " + std::to_string(to), 0, 1});
  }
  if (m.size == 0 || m.size > max_words_) {
    throw BudgetViolation({from, phase_ + ": message field count", static_cast<double>(max_words_),
                           static_cast<double>(m.size)});
  }
  for (std::size_t i = 0; i < m.size; ++i) {
    if (m.words[i] >= word_limit_) {
      throw BudgetViolation({from, phase_ + ": message field width", static_cast<double>(word_limit_ - 1),
                             static_cast<double>(m.words[i])});
    }
  }
  auto& count = sent_this_round_[to];
  if (count >= cap_) {
    throw BudgetViolation({from, phase_ + ": per-edge bandwidth", static_cast<double>(cap_),
                           static_cast<double>(count + 1)});
  }
  if (count == 0) touched_.push_back(to);
  ++count;
  next_inbox_[to].push_back({from, m});
  if (record_) transcript_.push_back({round, from, to, m});
}

RunResult RoundEngine::run(const std::string& phase, const StepFn& step, Accounting& acct) {
  phase_ = phase;
  std::vector<std::vector<Envelope>> inbox(n_);
  std::vector<bool> active(n_, true);
  RunResult result;
  std::uint64_t hash = 1469598103934665603ULL;
  auto mix = [&hash](std::uint64_t x) {
    hash ^= x;
    hash *= 1099511628211ULL;
  };

  for (std::uint64_t round = 1;; ++round) {
    bool any = false;
    for (NodeId v = 0; v < n_ && !any; ++v) any = active[v] || !inbox[v].empty();
    if (!any) break;
    if (round > max_rounds_) throw std::runtime_error("phase '" + phase + "' exceeded max_engine_rounds");

    std::uint64_t sent = 0;
    for (NodeId v = 0; v < n_; ++v) {
      if (!active[v] && inbox[v].empty()) continue;
      NodeContext ctx(*this, v, round, inbox[v]);
      step(ctx);
      active[v] = !ctx.halted_;
      for (auto to : touched_) {
        const auto k = sent_this_round_[to];
        acct.count_sent(v, k);
        acct.count_received(to, k);
        sent += k;
        mix(round);
        mix(v);
        mix(to);
        mix(k);
        sent_this_round_[to] = 0;
      }
      touched_.clear();
    }
    for (NodeId v = 0; v < n_; ++v) {
      inbox[v].swap(next_inbox_[v]);
      next_inbox_[v].clear();
      for (const auto& env : inbox[v]) {
        for (std::size_t i = 0; i < env.msg.size; ++i) mix(env.msg.words[i]);
      }
    }
    if (sent > 0) {
      result.rounds = round;
      result.messages += sent;
    }
  }
  result.transcript_hash = hash;
  acct.charge(phase, result.rounds, result.messages);
  return result;
}

void PacedOutbox::flush(NodeContext& ctx) {
  for (auto it = queues_.begin(); it != queues_.end();) {
    auto& q = it->second;
    std::size_t room = ctx.remaining_capacity(it->first);
    while (room > 0 && !q.empty()) {
      ctx.send(it->first, q.front());
      q.pop_front();
      --room;
    }
    it = q.empty() ? queues_.erase(it) : std::next(it);
  }
}

}  // namespace cliquelist
