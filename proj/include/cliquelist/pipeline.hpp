#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cliquelist/accounting.hpp"
#include "cliquelist/config.hpp"
#include "cliquelist/graph.hpp"

namespace cliquelist {

/// Exact rational, always normalized with a positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// An exponent of n written as a + b / log2 n + c * log2 log2 n / log2 n.
struct Exponent {
  Rational a;
  Rational b;
  Rational c;

  double value(std::size_t n) const;
  friend Exponent operator+(const Exponent& x, const Exponent& y);
  friend Exponent operator-(const Exponent& x, const Exponent& y);
  friend bool operator==(const Exponent&, const Exponent&) = default;
  std::string to_string() const;
};

struct ScheduleStep {
  int k = 0;
  Exponent epsilon;
  Exponent delta;  // 1 - epsilon
  Exponent d;      // delta + epsilon0
};

/// epsilon_k = (k + 1) epsilon0 - k loglog n / log n with
/// epsilon0 = (1 + loglog n) / log n, so n^d = 2 n^delta log n at every step.
class IterationSchedule {
 public:
  /// `k4` selects the stop rule delta <= 2/3; otherwise the run stops once
  /// delta <= p/(p+2) or delta <= 3/4.
  IterationSchedule(std::size_t n, std::size_t p, bool k4);

  Exponent epsilon0() const;
  ScheduleStep step(int k) const;
  double stop_threshold() const { return stop_; }
  bool stop(int k) const;
  /// At most log2 n outer steps.
  int max_outer() const;
  std::size_t n() const { return n_; }

 private:
  std::size_t n_;
  double stop_;
};

class PipelineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StepRecord {
  int outer = 0;
  int inner = -1;
  double delta = 0.0;
  double d = 0.0;
  std::uint64_t r_before = 0;
  std::uint64_t r_after = 0;
  std::uint64_t m_edges = 0;
  std::uint64_t s_edges = 0;
  std::uint64_t bad_edges = 0;
  std::uint64_t clusters = 0;
  std::uint64_t cliques = 0;
  std::uint64_t s_out_degree = 0;

  nlohmann::json to_json() const;
};

struct PipelineOptions {
  /// 0 runs the schedule's own stop rule; otherwise exactly this many outer
  /// steps (fewer if n^delta drops below 1), with preconditions waived.
  int forced_depth = 0;
  bool keep_cluster_dumps = false;
  /// Called after every arb_list with the cliques listed so far and the
  /// surviving edge set.
  std::function<void(const CliqueSet& listed, const Graph& surviving)> after_arb_list;
};

struct ArbListResult {
  std::vector<Edge> hat_em;  // sorted
  Graph hat_es;              // oriented by the S certificates
  Graph hat_er;              // oriented like the input
  CliqueSet cliques;
  StepRecord record;
  std::vector<nlohmann::json> cluster_dumps;
};

/// One inner step. `g` is the LIST input with its out-degree <= n^d
/// orientation; e_s and e_r partition the surviving edges. Decomposes e_r,
/// runs the cluster pipeline on every cluster and lists every K_p of
/// e_s + e_r that contains an edge of hat_em.
ArbListResult arb_list(const Graph& g, const Graph& e_s, const Graph& e_r, std::size_t p, double delta, double d,
                       int c, bool k4, std::uint64_t seed, const Config& cfg, Accounting& acct,
                       const PipelineOptions& opts = {});

struct ListRoundResult {
  std::vector<Edge> tilde_em;  // sorted
  Graph tilde_es;
  CliqueSet cliques;
  std::vector<StepRecord> steps;
  std::vector<nlohmann::json> cluster_dumps;
};

/// Inner loop: arb_list with c = 0, 1, ... until E_r is empty. `listed` holds
/// the cliques found before this call and is only used for the hook.
ListRoundResult list_round(const Graph& g, const ScheduleStep& step, std::size_t p, bool k4, std::uint64_t seed,
                           const Config& cfg, Accounting& acct, const PipelineOptions& opts,
                           const CliqueSet& listed = {});

/// Every node sends its outgoing edges to all neighbors and lists the K_p in
/// which it is the smallest node. Records a violation if the rounds exceed
/// `round_cap`.
CliqueSet broadcast_list(const Graph& g, std::size_t p, double round_cap, const std::string& phase,
                         std::uint64_t seed, const Config& cfg, Accounting& acct);

struct RunReport {
  std::string mode;
  std::size_t n = 0;
  std::uint64_t m = 0;
  std::size_t p = 0;
  std::uint64_t seed = 0;
  int forced_depth = 0;
  bool fallback = false;
  int outer_steps = 0;
  double stop_threshold = 0.0;
  std::uint64_t residual_edges = 0;
  std::uint64_t residual_out_degree = 0;
  CliqueSet cliques;
  Accounting accounting;
  std::vector<StepRecord> steps;
  std::vector<nlohmann::json> cluster_dumps;
  nlohmann::json extra = nlohmann::json::object();

  /// Versioned report; the config is echoed for reproducibility.
  nlohmann::json to_json(const Config& cfg, bool include_cliques = true) const;
  /// phase,outer,inner,rounds,messages,max_load,budget
  std::string to_csv() const;
};

/// General K_p driver (p >= 3). Falls back to one broadcast when
/// p > ceil(log2 n).
RunReport congest_list_kp(const Graph& g, std::size_t p, std::uint64_t seed, const Config& cfg,
                          const PipelineOptions& opts = {});

/// K_4 driver.
RunReport congest_list_k4(const Graph& g, std::uint64_t seed, const Config& cfg, const PipelineOptions& opts = {});

}  // namespace cliquelist
