#include "cliquelist/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

namespace cliquelist {

std::size_t ceil_log2(std::size_t n) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  return std::max<std::size_t>(bits, 1);
}

double log2n(std::size_t n) { return std::max(1.0, std::log2(static_cast<double>(std::max<std::size_t>(n, 2)))); }

const std::map<std::string, double Config::*>& Config::double_fields() {
  static const std::map<std::string, double Config::*> fields = {
      {"bandwidth_factor", &Config::bandwidth_factor},
      {"routing_polylog_factor", &Config::routing_polylog_factor},
      {"load_cap_factor", &Config::load_cap_factor},
      {"id_assign_factor", &Config::id_assign_factor},
      {"decomposition_factor", &Config::decomposition_factor},
      {"clique_routing_factor", &Config::clique_routing_factor},
      {"min_degree_factor", &Config::min_degree_factor},
      {"phi_min", &Config::phi_min},
      {"heavy_factor", &Config::heavy_factor},
      {"light_factor", &Config::light_factor},
      {"learn_factor", &Config::learn_factor},
      {"k4_heavy_factor", &Config::k4_heavy_factor},
      {"bad_fraction_limit", &Config::bad_fraction_limit},
      {"fake_edge_factor", &Config::fake_edge_factor},
      {"load_const_ceiling", &Config::load_const_ceiling},
      {"broadcast_cap", &Config::broadcast_cap},
  };
  return fields;
}

const std::map<std::string, std::size_t Config::*>& Config::size_fields() {
  static const std::map<std::string, std::size_t Config::*> fields = {
      {"message_words", &Config::message_words},
      {"max_engine_rounds", &Config::max_engine_rounds},
      {"exact_conductance_max_nodes", &Config::exact_conductance_max_nodes},
  };
  return fields;
}

void Config::set(const std::string& key, double value) {
  if (!std::isfinite(value)) throw ConfigError("config '" + key + "' must be finite");
  if (auto it = double_fields().find(key); it != double_fields().end()) {
    this->*(it->second) = value;
  } else if (auto st = size_fields().find(key); st != size_fields().end()) {
    if (value < 0 || value != std::floor(value)) throw ConfigError("config '" + key + "' must be a whole number");
    this->*(st->second) = static_cast<std::size_t>(value);
  } else {
    throw ConfigError("unknown config key '" + key + "'");
  }
  validate();
}

double Config::get(const std::string& key) const {
  if (auto it = double_fields().find(key); it != double_fields().end()) return this->*(it->second);
  if (auto st = size_fields().find(key); st != size_fields().end()) return static_cast<double>(this->*(st->second));
  throw ConfigError("unknown config key '" + key + "'");
}

void Config::apply_env() {
  auto try_key = [this](const std::string& key) {
    std::string var = "CLIQUELIST_" + key;
    std::transform(var.begin(), var.end(), var.begin(), [](unsigned char c) { return std::toupper(c); });
    if (const char* raw = std::getenv(var.c_str())) {
      char* end = nullptr;
      double v = std::strtod(raw, &end);
      if (end == raw || *end != '\0') throw ConfigError("environment " + var + " is not a number");
      set(key, v);
    }
  };
  for (const auto& [key, _] : double_fields()) try_key(key);
  for (const auto& [key, _] : size_fields()) try_key(key);
}

void Config::apply_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number()) throw ConfigError("config '" + key + "' must be a number");
    set(key, value.get<double>());
  }
}

nlohmann::json Config::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, field] : double_fields()) j[key] = this->*field;
  for (const auto& [key, field] : size_fields()) j[key] = this->*field;
  return j;
}

void Config::validate() const {
  for (const auto& [key, field] : double_fields()) {
    const double v = this->*field;
    const bool may_be_zero = key == "routing_polylog_factor" || key == "phi_min";
    if (v < 0 || (!may_be_zero && v == 0)) throw ConfigError("config '" + key + "' must be > 0");
  }
  if (message_words < 2) throw ConfigError("message_words must be at least 2 (an edge)");
  if (message_words > 8) throw ConfigError("message_words must be at most 8");
  if (max_engine_rounds == 0) throw ConfigError("max_engine_rounds must be > 0");
  if (exact_conductance_max_nodes > 24) throw ConfigError("exact_conductance_max_nodes must be <= 24");
}

double Config::routing_factor(std::size_t n) const {
  if (routing_polylog_factor > 0) return routing_polylog_factor;
  const double l = static_cast<double>(ceil_log2(n));
  return l * l;
}

double Config::phi_min_for(std::size_t n) const {
  if (phi_min > 0) return phi_min;
  return 1.0 / (4.0 * log2n(n));
}

std::size_t Config::messages_per_edge_round() const {
  // B = bandwidth_factor * ceil(log2 n) bits over messages of message_words * ceil(log2 n) bits.
  const double ratio = bandwidth_factor / static_cast<double>(message_words);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(ratio - 1e-12)));
}

}  // namespace cliquelist
