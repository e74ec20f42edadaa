#include "cliquelist/accounting.hpp"

#include <sstream>

namespace cliquelist {

namespace {

std::string describe(const Violation& v) {
  std::ostringstream os;
  os << "budget violation in phase '" << v.phase << "' at node " << v.node << ": " << v.actual << " > "
     << v.budget;
  return os.str();
}

// Histogram of per-node counts: value -> number of nodes.
nlohmann::json histogram(const std::vector<std::uint64_t>& counts) {
  std::map<std::uint64_t, std::uint64_t> h;
  for (auto c : counts) ++h[c];
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [value, nodes] : h) out.push_back({value, nodes});
  return out;
}

}  // namespace

BudgetViolation::BudgetViolation(Violation v) : std::runtime_error(describe(v)), violation_(std::move(v)) {}

void Accounting::charge(PhaseCharge c) {
  if (c.outer == -1 && c.inner == -1) {
    c.outer = outer_;
    c.inner = inner_;
  }
  charges_.push_back(std::move(c));
}

void Accounting::charge(const std::string& phase, std::uint64_t rounds, std::uint64_t messages) {
  PhaseCharge c;
  c.phase = phase;
  c.rounds = rounds;
  c.messages = messages;
  charge(std::move(c));
}

std::uint64_t Accounting::total_rounds() const {
  std::uint64_t total = 0;
  for (const auto& c : charges_) total += c.rounds;
  return total;
}

std::uint64_t Accounting::total_messages() const {
  std::uint64_t total = 0;
  for (const auto& c : charges_) total += c.messages;
  return total;
}

std::map<std::string, std::uint64_t> Accounting::rounds_by_phase() const {
  std::map<std::string, std::uint64_t> out;
  for (const auto& c : charges_) out[c.phase] += c.rounds;
  return out;
}

nlohmann::json Accounting::to_json() const {
  nlohmann::json j;
  j["total_rounds"] = total_rounds();
  j["total_messages"] = total_messages();
  j["rounds_by_phase"] = rounds_by_phase();
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& c : charges_) {
    steps.push_back({{"phase", c.phase},
                     {"outer", c.outer},
                     {"inner", c.inner},
                     {"rounds", c.rounds},
                     {"messages", c.messages},
                     {"max_load", c.max_load},
                     {"budget", c.budget}});
  }
  j["charges"] = steps;
  j["sent_histogram"] = histogram(sent_);
  j["received_histogram"] = histogram(received_);
  nlohmann::json vs = nlohmann::json::array();
  for (const auto& v : violations_) {
    vs.push_back({{"node", v.node}, {"phase", v.phase}, {"budget", v.budget}, {"actual", v.actual}});
  }
  j["violations"] = vs;
  return j;
}

}  // namespace cliquelist
