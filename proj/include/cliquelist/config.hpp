#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace cliquelist {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Every tunable constant of the simulator and the listing algorithms.
///
/// Thresholds of the form factor * n^exponent take their factor from here.
/// Entries documented as "0 = auto" are derived from n when left at zero.
struct Config {
  // Engine.
  double bandwidth_factor = 1.0;
  std::size_t message_words = 3;
  std::size_t max_engine_rounds = 1u << 22;

  // Charged primitives.
  double routing_polylog_factor = 0.0;  // 0 = auto: ceil(log2 n)^2
  double load_cap_factor = 64.0;
  double id_assign_factor = 1.0;
  double decomposition_factor = 1.0;
  double clique_routing_factor = 2.0;

  // Decomposition.
  double min_degree_factor = 0.5;
  double phi_min = 0.0;  // 0 = auto: 1 / (4 log2 n)
  std::size_t exact_conductance_max_nodes = 16;

  // Cluster pipeline. Desk defaults; the published constants are 1 and 100.
  double heavy_factor = 1.0;
  double light_factor = 0.25;
  double learn_factor = 1.0;
  double k4_heavy_factor = 1.0;
  double bad_fraction_limit = 1.0 / 25.0;

  // Sparse listing.
  double fake_edge_factor = 20.0;
  double load_const_ceiling = 8.0;

  // Schedule.
  double broadcast_cap = 4.0;

  /// Sets a field by its key; throws ConfigError on unknown keys or values <= 0
  /// for factors that must be positive.
  void set(const std::string& key, double value);
  double get(const std::string& key) const;

  /// Applies CLIQUELIST_<KEY> environment overrides (upper-case key).
  void apply_env();
  void apply_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  void validate() const;

  // Derived quantities.
  double routing_factor(std::size_t n) const;
  double phi_min_for(std::size_t n) const;
  std::size_t messages_per_edge_round() const;

  static const std::map<std::string, double Config::*>& double_fields();
  static const std::map<std::string, std::size_t Config::*>& size_fields();
};

/// log2 n rounded up, at least 1.
std::size_t ceil_log2(std::size_t n);
/// Natural-valued log2 n as a real, at least 1.
double log2n(std::size_t n);

}  // namespace cliquelist
