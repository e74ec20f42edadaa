#include <sstream>

#include "cliquelist/pipeline.hpp"
#include "cliquelist/report.hpp"

namespace cliquelist {

nlohmann::json cliques_to_json(const CliqueSet& cliques) {
  auto arr = nlohmann::json::array();
  for (const auto& c : cliques) arr.push_back(c.nodes);
  return arr;
}

CliqueSet cliques_from_json(const nlohmann::json& j) {
  CliqueSet out;
  for (const auto& c : j) out.emplace_back(c.get<std::vector<NodeId>>());
  normalize(out);
  return out;
}

std::string charges_csv(const Accounting& acct) {
  std::ostringstream os;
  os << "phase,outer,inner,rounds,messages,max_load,budget\n";
  for (const auto& c : acct.charges()) {
    os << c.phase << ',' << c.outer << ',' << c.inner << ',' << c.rounds << ',' << c.messages << ',' << c.max_load
       << ',' << c.budget << '\n';
  }
  return os.str();
}

nlohmann::json cc_report(const CcListResult& r, std::size_t n, std::uint64_t seed, const Config& cfg,
                         bool include_cliques) {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["mode"] = "cc";
  j["n"] = n;
  j["m"] = r.m_real;
  j["p"] = r.p;
  j["seed"] = seed;
  j["clique_count"] = r.cliques.size();
  if (include_cliques) j["cliques"] = cliques_to_json(r.cliques);
  j["raw_outputs"] = r.raw_outputs;
  j["num_parts"] = r.num_parts;
  j["m_padded"] = r.m_padded;
  j["fake_edges"] = r.fake_edges;
  j["max_received"] = r.max_received;
  j["receive_budget"] = r.receive_budget;
  j["load_const"] = r.load_const;
  j["rounds_total"] = r.accounting.total_rounds();
  j["rounds_by_phase"] = r.accounting.rounds_by_phase();
  j["accounting"] = r.accounting.to_json();
  j["config"] = cfg.to_json();
  return j;
}

nlohmann::json StepRecord::to_json() const {
  return {{"outer", outer},       {"inner", inner},         {"delta", delta},
          {"d", d},               {"r_before", r_before},   {"r_after", r_after},
          {"m_edges", m_edges},   {"s_edges", s_edges},     {"bad_edges", bad_edges},
          {"clusters", clusters}, {"cliques", cliques},     {"s_out_degree", s_out_degree}};
}

nlohmann::json RunReport::to_json(const Config& cfg, bool include_cliques) const {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["mode"] = mode;
  j["n"] = n;
  j["m"] = m;
  j["p"] = p;
  j["seed"] = seed;
  j["forced_depth"] = forced_depth;
  j["fallback"] = fallback;
  j["outer_steps"] = outer_steps;
  j["stop_threshold"] = stop_threshold;
  j["residual_edges"] = residual_edges;
  j["residual_out_degree"] = residual_out_degree;
  j["clique_count"] = cliques.size();
  if (include_cliques) j["cliques"] = cliques_to_json(cliques);
  j["rounds_total"] = accounting.total_rounds();
  j["rounds_by_phase"] = accounting.rounds_by_phase();
  j["accounting"] = accounting.to_json();
  auto steps_json = nlohmann::json::array();
  for (const auto& s : steps) steps_json.push_back(s.to_json());
  j["steps"] = std::move(steps_json);
  if (!cluster_dumps.empty()) j["clusters"] = cluster_dumps;
  if (!extra.empty()) j["extra"] = extra;
  j["config"] = cfg.to_json();
  return j;
}

std::string RunReport::to_csv() const { return charges_csv(accounting); }

}  // namespace cliquelist
