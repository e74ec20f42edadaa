#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cliquelist/accounting.hpp"
#include "cliquelist/config.hpp"
#include "cliquelist/graph.hpp"
#include "cliquelist/rng.hpp"

namespace cliquelist {

inline constexpr std::size_t kMaxMessageWords = 8;

/// Structured O(log n)-bit record: up to message_words fields.
struct Message {
  std::array<std::uint64_t, kMaxMessageWords> words{};
  std::uint8_t size = 0;

  Message() = default;
  Message(std::initializer_list<std::uint64_t> ws);

  std::uint64_t operator[](std::size_t i) const { return words[i]; }
  friend bool operator==(const Message& a, const Message& b) {
    if (a.size != b.size) return false;
    for (std::size_t i = 0; i < a.size; ++i) {
      if (a.words[i] != b.words[i]) return false;
    }
    return true;
  }
};

struct Envelope {
  NodeId from = 0;
  Message msg;
};

/// Bits available per message field: enough for any ID in [0, n] and small tags.
std::size_t field_bits(std::size_t n);

class RoundEngine;

/// What a node sees while executing one round.
class NodeContext {
 public:
  NodeId id() const { return id_; }
  /// Rounds are numbered from 1.
  std::uint64_t round() const { return round_; }
  std::size_t num_nodes() const;
  std::span<const Envelope> inbox() const { return inbox_; }
  std::span<const NodeId> neighbors() const;

  /// Queues m for delivery next round. Throws BudgetViolation if the per-edge
  /// cap for this round is exhausted, `to` is not a neighbor, or m is oversized.
  void send(NodeId to, const Message& m);
  /// Messages still allowed to `to` this round.
  std::size_t remaining_capacity(NodeId to) const;

  Rng& rng();
  /// Stop being scheduled until a message arrives.
  void halt() { halted_ = true; }

 private:
  friend class RoundEngine;
  NodeContext(RoundEngine& engine, NodeId id, std::uint64_t round, std::span<const Envelope> inbox)
      : engine_(engine), id_(id), round_(round), inbox_(inbox) {}

  RoundEngine& engine_;
  NodeId id_;
  std::uint64_t round_;
  std::span<const Envelope> inbox_;
  bool halted_ = false;
};

using StepFn = std::function<void(NodeContext&)>;

struct RunResult {
  std::uint64_t rounds = 0;  // last round in which any message was sent
  std::uint64_t messages = 0;
  std::uint64_t transcript_hash = 0;
};

/// Synchronous CONGEST executor over a fixed topology.
///
/// Nodes run in ID order inside a round and their sends become visible at the
/// next round, so the result equals any concurrent execution with a barrier.
/// A node keeps being stepped until it calls halt(); an incoming message wakes
/// it again.
class RoundEngine {
 public:
  /// Keeps a pointer to `topology`, which must outlive the engine.
  RoundEngine(const Graph& topology, const Config& cfg, std::uint64_t seed);
  /// CONGESTED CLIQUE: every pair of the n nodes is a link.
  static RoundEngine clique(std::size_t n, const Config& cfg, std::uint64_t seed);

  RunResult run(const std::string& phase, const StepFn& step, Accounting& acct);

  std::size_t num_nodes() const { return n_; }
  std::size_t per_edge_cap() const { return cap_; }
  bool is_clique() const { return topology_ == nullptr; }
  bool linked(NodeId a, NodeId b) const;

  /// When enabled, every delivered message is appended to transcript().
  void record_transcript(bool on) { record_ = on; }
  struct Delivery {
    std::uint64_t round;
    NodeId from;
    NodeId to;
    Message msg;
  };
  const std::vector<Delivery>& transcript() const { return transcript_; }

 private:
  friend class NodeContext;
  RoundEngine(std::size_t n, const Graph* topology, const Config& cfg, std::uint64_t seed);

  void submit(NodeId from, NodeId to, const Message& m, std::uint64_t round);

  std::size_t n_;
  const Graph* topology_;
  std::vector<NodeId> all_nodes_;
  std::size_t cap_;
  std::size_t max_words_;
  std::uint64_t word_limit_;
  std::size_t max_rounds_;
  std::uint64_t seed_;
  std::string phase_;
  std::vector<Rng> rngs_;
  std::vector<bool> rng_ready_;

  // Per-step scratch: messages sent by the running node to each destination.
  std::vector<std::uint32_t> sent_this_round_;
  std::vector<NodeId> touched_;
  std::vector<std::vector<Envelope>> next_inbox_;

  bool record_ = false;
  std::vector<Delivery> transcript_;
};

/// Per-destination FIFO queues drained at the per-edge cap each round.
class PacedOutbox {
 public:
  void push(NodeId to, const Message& m) { queues_[to].push_back(m); }
  /// Sends as much as the current round allows.
  void flush(NodeContext& ctx);
  bool empty() const { return queues_.empty(); }

 private:
  std::map<NodeId, std::deque<Message>> queues_;
};

}  // namespace cliquelist
