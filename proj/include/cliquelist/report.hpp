#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "cliquelist/accounting.hpp"
#include "cliquelist/config.hpp"
#include "cliquelist/graph.hpp"
#include "cliquelist/sparse_list.hpp"

namespace cliquelist {

inline constexpr int kReportSchema = 1;

nlohmann::json cliques_to_json(const CliqueSet& cliques);
/// Accepts an array of node arrays; the result is normalized.
CliqueSet cliques_from_json(const nlohmann::json& j);

/// phase,outer,inner,rounds,messages,max_load,budget
std::string charges_csv(const Accounting& acct);

nlohmann::json cc_report(const CcListResult& r, std::size_t n, std::uint64_t seed, const Config& cfg,
                         bool include_cliques = true);

}  // namespace cliquelist
