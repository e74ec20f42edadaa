#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cliquelist/graph.hpp"

namespace cliquelist {

/// One charge of simulated rounds against a protocol phase.
struct PhaseCharge {
  std::string phase;
  int outer = -1;  // schedule position; -1 outside the nested schedule
  int inner = -1;
  std::uint64_t rounds = 0;
  std::uint64_t messages = 0;
  std::uint64_t max_load = 0;  // largest per-node load seen by a routed phase
  double budget = 0.0;         // declared per-node budget for that load, 0 if none
};

struct Violation {
  NodeId node = 0;
  std::string phase;
  double budget = 0.0;
  double actual = 0.0;
};

/// Raised when a protocol exceeds a per-edge or per-node budget.
class BudgetViolation : public std::runtime_error {
 public:
  explicit BudgetViolation(Violation v);
  const Violation& violation() const { return violation_; }

 private:
  Violation violation_;
};

class Accounting {
 public:
  explicit Accounting(std::size_t n = 0) : sent_(n, 0), received_(n, 0) {}

  /// Schedule position attached to subsequent charges.
  void set_step(int outer, int inner) {
    outer_ = outer;
    inner_ = inner;
  }

  void charge(PhaseCharge c);
  void charge(const std::string& phase, std::uint64_t rounds, std::uint64_t messages = 0);

  void count_sent(NodeId v, std::uint64_t k = 1) { sent_.at(v) += k; }
  void count_received(NodeId v, std::uint64_t k = 1) { received_.at(v) += k; }

  /// Soft violations (reported, not fatal).
  void record(Violation v) { violations_.push_back(std::move(v)); }

  std::uint64_t total_rounds() const;
  std::uint64_t total_messages() const;
  std::map<std::string, std::uint64_t> rounds_by_phase() const;

  const std::vector<PhaseCharge>& charges() const { return charges_; }
  const std::vector<std::uint64_t>& sent() const { return sent_; }
  const std::vector<std::uint64_t>& received() const { return received_; }
  const std::vector<Violation>& violations() const { return violations_; }

  nlohmann::json to_json() const;

 private:
  int outer_ = -1;
  int inner_ = -1;
  std::vector<PhaseCharge> charges_;
  std::vector<std::uint64_t> sent_;
  std::vector<std::uint64_t> received_;
  std::vector<Violation> violations_;
};

}  // namespace cliquelist
