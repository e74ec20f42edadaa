// Batch front-end: generate or load a graph, run one mode, optionally check
// the result against the brute-force oracle, and write reports.
//
// Exit codes: 0 ok, 1 oracle mismatch, 2 configuration error,
// 3 budget violation, 4 any other run failure.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cliquelist/accounting.hpp"
#include "cliquelist/config.hpp"
#include "cliquelist/decomposition.hpp"
#include "cliquelist/generators.hpp"
#include "cliquelist/graph_io.hpp"
#include "cliquelist/oracle.hpp"
#include "cliquelist/pipeline.hpp"
#include "cliquelist/report.hpp"
#include "cliquelist/sparse_list.hpp"

namespace cl = cliquelist;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kConfigError = 2;
constexpr int kBudget = 3;
constexpr int kFailure = 4;

struct ConfigFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string mode = "cc";
  std::size_t p = 4;
  std::string gen;
  std::string graph;
  std::uint64_t seed = 1;
  std::string config_file;
  bool verify = false;
  std::string emit;
  std::string emit_csv;
  int forced_depth = 0;
  std::vector<std::string> factors;
  double delta = 0.5;
  std::string results;
  bool dump_clusters = false;
};

cl::Config build_config(const std::string& file, const std::vector<std::string>& factors) {
  cl::Config cfg;
  try {
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw ConfigFailure("cannot open config file " + file);
      cfg.apply_json(nlohmann::json::parse(in));
    }
    cfg.apply_env();
    for (const auto& kv : factors) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigFailure("--factor expects KEY=VAL, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), std::stod(kv.substr(eq + 1)));
    }
    cfg.validate();
  } catch (const ConfigFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigFailure(e.what());
  }
  return cfg;
}

cl::Graph load_graph(const Options& o) {
  if (o.gen.empty() == o.graph.empty()) throw ConfigFailure("exactly one of --gen and --graph is required");
  try {
    if (!o.gen.empty()) return cl::generate(cl::parse_generator(o.gen));
    return cl::read_edge_list_file(o.graph);
  } catch (const std::exception& e) {
    throw ConfigFailure(e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConfigFailure("cannot write " + path);
  out << text;
}

void emit_json(const Options& o, const nlohmann::json& j) {
  if (o.emit.empty()) return;
  write_text(o.emit, j.dump(2) + "\n");
}

// Compares against the oracle and records the outcome in `j`.
bool check(const cl::Graph& g, std::size_t p, const cl::CliqueSet& got, nlohmann::json& j) {
  const auto want = cl::brute_force_list_kp(g, p);
  const bool ok = got == want;
  j["verify"] = {{"oracle_count", want.size()}, {"match", ok}};
  return ok;
}

int run(const Options& o) {
  const auto cfg = build_config(o.config_file, o.factors);
  auto g = load_graph(o);
  // Generated graphs get the degeneracy orientation; files keep their tails.
  if (!o.gen.empty() && (o.mode == "congest" || o.mode == "congest-k4")) g = cl::degeneracy_orient(g).graph;
  if (o.mode != "decompose" && o.p < 3) throw ConfigFailure("--p must be >= 3");

  nlohmann::json j;
  cl::CliqueSet cliques;
  std::string csv;
  bool ok = true;

  if (o.mode == "cc") {
    const auto r = cl::cc_list_kp(g, o.p, o.seed, cfg);
    j = cl::cc_report(r, g.num_nodes(), o.seed, cfg);
    cliques = r.cliques;
    csv = cl::charges_csv(r.accounting);
  } else if (o.mode == "congest" || o.mode == "congest-k4") {
    cl::PipelineOptions opts;
    opts.forced_depth = o.forced_depth;
    opts.keep_cluster_dumps = o.dump_clusters;
    if (o.mode == "congest-k4" && o.p != 4) throw ConfigFailure("congest-k4 lists K_4 only; use --p 4");
    const auto r = o.mode == "congest" ? cl::congest_list_kp(g, o.p, o.seed, cfg, opts)
                                       : cl::congest_list_k4(g, o.seed, cfg, opts);
    j = r.to_json(cfg);
    cliques = r.cliques;
    csv = r.to_csv();
  } else if (o.mode == "decompose") {
    if (!(o.delta > 0.0 && o.delta < 1.0)) throw ConfigFailure("--delta must lie in (0, 1)");
    cl::Accounting acct(g.num_nodes());
    const auto part = cl::expander_decompose(g, o.delta, cfg, acct);
    const auto rep = cl::verify_decomposition(g, part, cfg);
    j["schema"] = cl::kReportSchema;
    j["mode"] = "decompose";
    j["n"] = g.num_nodes();
    j["m"] = g.num_edges();
    j["seed"] = o.seed;
    j["partition"] = part.to_json(g);
    j["check"] = rep.to_json();
    j["rounds_total"] = acct.total_rounds();
    j["accounting"] = acct.to_json();
    j["config"] = cfg.to_json();
    csv = cl::charges_csv(acct);
    if (o.verify) ok = rep.passed();
    std::cout << "decompose: M=" << part.count(cl::EdgeLabel::M) << " S=" << part.count(cl::EdgeLabel::S)
              << " R=" << part.count(cl::EdgeLabel::R) << " clusters=" << part.clusters.size()
              << " check=" << (rep.passed() ? "pass" : "fail") << "\n";
  } else if (o.mode == "verify") {
    const auto want = cl::brute_force_list_kp(g, o.p);
    j["schema"] = cl::kReportSchema;
    j["mode"] = "verify";
    j["n"] = g.num_nodes();
    j["m"] = g.num_edges();
    j["p"] = o.p;
    j["clique_count"] = want.size();
    j["cliques"] = cl::cliques_to_json(want);
    cliques = want;
    if (!o.results.empty()) {
      std::ifstream in(o.results);
      if (!in) throw ConfigFailure("cannot open results file " + o.results);
      const auto other = nlohmann::json::parse(in);
      const auto got = cl::cliques_from_json(other.at("cliques"));
      ok = got == want;
      j["verify"] = {{"results", o.results}, {"results_count", got.size()}, {"match", ok}};
    }
  } else {
    throw ConfigFailure("unknown mode '" + o.mode + "'");
  }

  if (o.verify && o.mode != "decompose" && o.mode != "verify") ok = check(g, o.p, cliques, j);
  emit_json(o, j);
  if (!o.emit_csv.empty()) write_text(o.emit_csv, csv);

  if (o.mode != "decompose") {
    std::cout << o.mode << ": n=" << g.num_nodes() << " m=" << g.num_edges() << " p=" << o.p
              << " count=" << cliques.size();
    if (j.contains("rounds_total")) std::cout << " rounds=" << j["rounds_total"].get<std::uint64_t>();
    std::cout << "\n";
  }
  if (j.contains("verify")) std::cout << "verify: " << (ok ? "match" : "MISMATCH") << "\n";
  if (o.mode == "decompose" && o.verify) std::cout << "verify: " << (ok ? "pass" : "FAIL") << "\n";
  return ok ? kOk : kMismatch;
}

struct BenchOptions {
  std::string mode = "cc";
  std::size_t p = 3;
  std::vector<std::size_t> ns;
  std::vector<double> densities = {0.3};
  int reps = 1;
  std::uint64_t seed = 1;
  int forced_depth = 0;
  std::string config_file;
  std::vector<std::string> factors;
  std::string out;
};

template <typename T>
T median(std::vector<T> xs) {
  std::sort(xs.begin(), xs.end());
  return xs[(xs.size() - 1) / 2];
}

int bench(const BenchOptions& b) {
  const auto cfg = build_config(b.config_file, b.factors);
  if (b.reps < 1) throw ConfigFailure("--reps must be >= 1");
  std::ostringstream os;
  os << "n,m,mode,phase,rounds,max_load\n";
  for (auto n : b.ns) {
    for (auto q : b.densities) {
      std::vector<std::uint64_t> ms;
      std::map<std::string, std::vector<std::uint64_t>> rounds;
      std::map<std::string, std::vector<std::uint64_t>> loads;
      std::vector<std::string> order;
      for (int r = 0; r < b.reps; ++r) {
        const auto g = cl::gnp(n, q, b.seed + static_cast<std::uint64_t>(r));
        ms.push_back(g.num_edges());
        cl::Accounting acct;
        if (b.mode == "cc") {
          acct = cl::cc_list_kp(g, b.p, b.seed + static_cast<std::uint64_t>(r), cfg).accounting;
        } else if (b.mode == "congest" || b.mode == "congest-k4") {
          cl::PipelineOptions opts;
          opts.forced_depth = b.forced_depth;
          const auto og = cl::degeneracy_orient(g).graph;
          acct = (b.mode == "congest" ? cl::congest_list_kp(og, b.p, b.seed, cfg, opts)
                                      : cl::congest_list_k4(og, b.seed, cfg, opts))
                     .accounting;
        } else {
          throw ConfigFailure("bench supports cc, congest and congest-k4");
        }
        std::map<std::string, std::uint64_t> per_rounds;
        std::map<std::string, std::uint64_t> per_loads;
        for (const auto& c : acct.charges()) {
          if (!per_rounds.count(c.phase) && std::find(order.begin(), order.end(), c.phase) == order.end()) {
            order.push_back(c.phase);
          }
          per_rounds[c.phase] += c.rounds;
          per_loads[c.phase] = std::max(per_loads[c.phase], c.max_load);
        }
        for (const auto& phase : order) {
          rounds[phase].push_back(per_rounds[phase]);
          loads[phase].push_back(per_loads[phase]);
        }
      }
      for (const auto& phase : order) {
        os << n << ',' << median(ms) << ',' << b.mode << ',' << phase << ',' << median(rounds[phase]) << ','
           << median(loads[phase]) << '\n';
      }
    }
  }
  if (b.out.empty()) {
    std::cout << os.str();
  } else {
    write_text(b.out, os.str());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K_p listing simulator for the CONGEST and CONGESTED CLIQUE models"};
  app.set_version_flag("--version", "cliquelist 1.0");
  Options o;
  app.add_option("--mode", o.mode, "cc | congest | congest-k4 | decompose | verify")
      ->check(CLI::IsMember({"cc", "congest", "congest-k4", "decompose", "verify"}));
  app.add_option("--p", o.p, "clique size");
  app.add_option("--gen", o.gen, "generator: gnp:N:Q:SEED, planted:N:P:COUNT:Q:SEED, complete:N, empty:N");
  app.add_option("--graph", o.graph, "edge-list file");
  app.add_option("--seed", o.seed, "run seed");
  app.add_option("--config", o.config_file, "JSON file of config keys");
  app.add_flag("--verify", o.verify, "compare against the brute-force oracle");
  app.add_option("--emit", o.emit, "results JSON path");
  app.add_option("--emit-csv", o.emit_csv, "per-phase CSV path");
  app.add_option("--forced-depth", o.forced_depth, "run exactly this many outer steps");
  app.add_option("--factor", o.factors, "config override KEY=VAL (repeatable)");
  app.add_option("--delta", o.delta, "decompose mode: delta");
  app.add_option("--results", o.results, "verify mode: results JSON to check");
  app.add_flag("--dump-clusters", o.dump_clusters, "include per-cluster diagnostics");

  BenchOptions b;
  auto* sub = app.add_subcommand("bench", "sweep over gnp instances and print per-phase medians as CSV");
  sub->add_option("--mode", b.mode, "cc | congest | congest-k4");
  sub->add_option("--p", b.p, "clique size");
  sub->add_option("--n", b.ns, "node counts")->delimiter(',');
  sub->add_option("--density", b.densities, "edge probabilities")->delimiter(',');
  sub->add_option("--reps", b.reps, "repetitions per instance");
  sub->add_option("--seed", b.seed, "base seed");
  sub->add_option("--forced-depth", b.forced_depth, "outer steps for congest modes");
  sub->add_option("--config", b.config_file, "JSON file of config keys");
  sub->add_option("--factor", b.factors, "config override KEY=VAL (repeatable)");
  sub->add_option("--out", b.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (sub->parsed()) return bench(b);
    return run(o);
  } catch (const ConfigFailure& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const cl::BudgetViolation& e) {
    std::cerr << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return kFailure;
  }
}
