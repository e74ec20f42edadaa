#include "cliquelist/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cliquelist/cluster_list.hpp"
#include "cliquelist/decomposition.hpp"
#include "cliquelist/engine.hpp"
#include "cliquelist/local_list.hpp"
#include "cliquelist/rng.hpp"

namespace cliquelist {

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const auto g = std::gcd(n < 0 ? -n : n, d);
  num = g == 0 ? 0 : n / g;
  den = g == 0 ? 1 : d / g;
}

Rational operator+(const Rational& a, const Rational& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
Rational operator-(const Rational& a, const Rational& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
Rational operator*(const Rational& a, const Rational& b) { return {a.num * b.num, a.den * b.den}; }

double Exponent::value(std::size_t n) const {
  const double l = log2n(n);
  const double ll = std::log2(l);
  return a.value() + b.value() / l + c.value() * ll / l;
}

Exponent operator+(const Exponent& x, const Exponent& y) { return {x.a + y.a, x.b + y.b, x.c + y.c}; }
Exponent operator-(const Exponent& x, const Exponent& y) { return {x.a - y.a, x.b - y.b, x.c - y.c}; }

std::string Exponent::to_string() const {
  auto r = [](const Rational& q) {
    return q.den == 1 ? std::to_string(q.num) : std::to_string(q.num) + "/" + std::to_string(q.den);
  };
  return r(a) + " + (" + r(b) + ")/log n + (" + r(c) + ")*loglog n/log n";
}

IterationSchedule::IterationSchedule(std::size_t n, std::size_t p, bool k4) : n_(n) {
  const double pp = static_cast<double>(p);
  stop_ = k4 ? 2.0 / 3.0 : std::max(pp / (pp + 2.0), 0.75);
}

Exponent IterationSchedule::epsilon0() const { return {Rational(0), Rational(1), Rational(1)}; }

ScheduleStep IterationSchedule::step(int k) const {
  ScheduleStep s;
  s.k = k;
  const Exponent e0 = epsilon0();
  const Exponent shift{Rational(0), Rational(0), Rational(k)};
  Exponent scaled{e0.a * Rational(k + 1), e0.b * Rational(k + 1), e0.c * Rational(k + 1)};
  s.epsilon = scaled - shift;
  s.delta = Exponent{Rational(1), Rational(0), Rational(0)} - s.epsilon;
  s.d = s.delta + e0;
  return s;
}

bool IterationSchedule::stop(int k) const { return step(k).delta.value(n_) <= stop_ + 1e-12; }

int IterationSchedule::max_outer() const { return static_cast<int>(ceil_log2(n_)); }

namespace {

Graph union_graph(const Graph& g, const Graph& a, const Graph& b) {
  std::vector<Edge> alive(a.edges().begin(), a.edges().end());
  alive.insert(alive.end(), b.edges().begin(), b.edges().end());
  std::sort(alive.begin(), alive.end());
  return edge_subgraph(g, [&](const OrientedEdge& oe) { return std::binary_search(alive.begin(), alive.end(), oe.edge()); });
}

std::string where(int outer, int inner) {
  std::ostringstream os;
  os << "outer step " << outer << ", inner step " << inner << ": ";
  return os.str();
}

}  // namespace

ArbListResult arb_list(const Graph& g, const Graph& e_s, const Graph& e_r, std::size_t p, double delta, double d,
                       int c, bool k4, std::uint64_t seed, const Config& cfg, Accounting& acct,
                       const PipelineOptions& opts) {
  const std::size_t n = g.num_nodes();
  ArbListResult res;
  res.record.inner = c;
  res.record.delta = delta;
  res.record.d = d;
  res.record.r_before = e_r.num_edges();

  const auto part = expander_decompose(e_r, delta, cfg, acct);

  std::vector<ClusterInput> inputs(part.clusters.size());
  for (std::size_t i = 0; i < part.clusters.size(); ++i) inputs[i].cluster = part.clusters[i];
  std::vector<Edge> s_edges;
  std::vector<NodeId> s_tails;
  std::vector<Edge> r_edges;
  for (EdgeIndex i = 0; i < e_r.num_edges(); ++i) {
    switch (part.labels[i]) {
      case EdgeLabel::M:
        inputs[static_cast<std::size_t>(part.edge_cluster[i])].m_edges.push_back(e_r.edge(i));
        break;
      case EdgeLabel::S:
        s_edges.push_back(e_r.edge(i));
        s_tails.push_back(part.s_tail[i]);
        break;
      case EdgeLabel::R:
        r_edges.push_back(e_r.edge(i));
        break;
    }
  }
  std::uint64_t m_total = 0;
  for (const auto& in : inputs) m_total += in.m_edges.size();

  const Graph current = union_graph(g, e_s, e_r);
  const auto params = k4 ? ClusterParams::k4(n, d, cfg) : ClusterParams::general(n, d, cfg);
  auto clusters = run_clusters(current, std::move(inputs), params, p, seed, cfg, acct);

  for (const auto& run : clusters.runs) {
    for (const auto& e : run.goal.goal) res.hat_em.push_back(e);
    if (opts.keep_cluster_dumps) res.cluster_dumps.push_back(run.to_json());
  }
  std::sort(res.hat_em.begin(), res.hat_em.end());
  res.cliques = std::move(clusters.cliques);

  for (EdgeIndex i = 0; i < e_s.num_edges(); ++i) {
    s_edges.push_back(e_s.edge(i));
    s_tails.push_back(e_s.tail(i));
  }
  res.hat_es = Graph(n, s_edges, s_tails);

  r_edges.insert(r_edges.end(), clusters.bad_edges.begin(), clusters.bad_edges.end());
  std::vector<NodeId> r_tails;
  for (const auto& e : r_edges) r_tails.push_back(g.tail(g.find_edge(e.u, e.v)));
  res.hat_er = Graph(n, r_edges, r_tails);

  res.record.r_after = res.hat_er.num_edges();
  res.record.m_edges = m_total;
  res.record.s_edges = res.hat_es.num_edges();
  res.record.bad_edges = clusters.bad_edges.size();
  res.record.clusters = clusters.runs.size();
  res.record.cliques = res.cliques.size();
  res.record.s_out_degree = res.hat_es.max_out_degree();

  if (clusters.m_edges > 0 && static_cast<double>(clusters.bad_edges.size()) >
                                  cfg.bad_fraction_limit * static_cast<double>(clusters.m_edges)) {
    acct.record({0, "arb_list: bad-edge fraction", cfg.bad_fraction_limit,
                 static_cast<double>(clusters.bad_edges.size()) / static_cast<double>(clusters.m_edges)});
  }

  const double s_cap = static_cast<double>(c + 1) * static_cast<double>(s_out_cap(n, delta));
  if (static_cast<double>(res.record.s_out_degree) > s_cap) {
    acct.record({0, "arb_list: S out-degree", s_cap, static_cast<double>(res.record.s_out_degree)});
  }
  return res;
}

ListRoundResult list_round(const Graph& g, const ScheduleStep& step, std::size_t p, bool k4, std::uint64_t seed,
                           const Config& cfg, Accounting& acct, const PipelineOptions& opts,
                           const CliqueSet& listed) {
  const std::size_t n = g.num_nodes();
  const double delta = step.delta.value(n);
  const double d = step.d.value(n);
  const double nd = static_cast<double>(n);
  const double a = std::pow(nd, d);
  if (opts.forced_depth == 0) {
    if (static_cast<double>(g.max_out_degree()) > std::ceil(a - 1e-9)) {
      throw PipelineError(where(step.k, -1) + "input out-degree exceeds n^d");
    }
    const double pp = static_cast<double>(p);
    if (std::pow(nd, pp / (pp + 2.0)) >= a / (2.0 * log2n(n))) {
      throw PipelineError(where(step.k, -1) + "n^(p/(p+2)) >= A / (2 log n)");
    }
  }

  ListRoundResult res;
  Graph e_s(n);
  Graph e_r = g;
  CliqueSet so_far = listed;
  const int expected = std::max<int>(1, static_cast<int>(ceil_log2(n)) - 1);
  const int hard_limit = 4 * static_cast<int>(ceil_log2(n)) + 64;
  int c = 0;
  while (e_r.num_edges() > 0) {
    if (c >= hard_limit) throw PipelineError(where(step.k, c) + "inner loop did not terminate");
    acct.set_step(step.k, c);
    ArbListResult ar;
    try {
      ar = arb_list(g, e_s, e_r, p, delta, d, c, k4, mix_seed(seed ^ (0x9e3779b9ULL * static_cast<std::uint64_t>(c + 1))),
                    cfg, acct, opts);
    } catch (const DecompositionError& e) {
      throw PipelineError(where(step.k, c) + e.what());
    }
    if (ar.hat_er.num_edges() >= e_r.num_edges()) throw PipelineError(where(step.k, c) + "E_r did not shrink");
    ar.record.outer = step.k;
    res.tilde_em.insert(res.tilde_em.end(), ar.hat_em.begin(), ar.hat_em.end());
    res.cliques.insert(res.cliques.end(), ar.cliques.begin(), ar.cliques.end());
    res.steps.push_back(ar.record);
    for (auto& dump : ar.cluster_dumps) {
      dump["outer"] = step.k;
      dump["inner"] = c;
      res.cluster_dumps.push_back(std::move(dump));
    }
    e_s = std::move(ar.hat_es);
    e_r = std::move(ar.hat_er);
    if (opts.after_arb_list) {
      so_far = merged(so_far, ar.cliques);
      opts.after_arb_list(so_far, union_graph(g, e_s, e_r));
    }
    ++c;
  }
  if (c > expected) acct.record({0, "list_round: inner steps", static_cast<double>(expected), static_cast<double>(c)});
  acct.set_step(step.k, -1);
  std::sort(res.tilde_em.begin(), res.tilde_em.end());
  normalize(res.cliques);
  res.tilde_es = std::move(e_s);
  return res;
}

CliqueSet broadcast_list(const Graph& g, std::size_t p, double round_cap, const std::string& phase,
                         std::uint64_t seed, const Config& cfg, Accounting& acct) {
  const std::size_t n = g.num_nodes();
  std::vector<PacedOutbox> outbox(n);
  std::vector<std::vector<Edge>> heard(n);
  for (NodeId v = 0; v < n; ++v) {
    for (auto idx : g.out_edges(v)) {
      const NodeId h = g.head(idx);
      for (auto x : g.neighbors(v)) {
        outbox[v].push(x, Message{h});
      }
    }
  }
  RoundEngine engine(g, cfg, seed);
  const auto run = engine.run(
      phase,
      [&](NodeContext& ctx) {
        const NodeId self = ctx.id();
        for (const auto& env : ctx.inbox()) heard[self].emplace_back(env.from, static_cast<NodeId>(env.msg[0]));
        outbox[self].flush(ctx);
        if (outbox[self].empty()) ctx.halt();
      },
      acct);
  if (static_cast<double>(run.rounds) > round_cap) {
    acct.record({0, phase + ": rounds", round_cap, static_cast<double>(run.rounds)});
  }

  CliqueSet out;
  for (NodeId v = 0; v < n; ++v) {
    if (g.degree(v) + 1 < p) continue;
    auto known = std::move(heard[v]);
    for (auto x : g.neighbors(v)) known.emplace_back(v, x);
    const KnownEdges view(known);
    const NodeId req[] = {v};
    view.for_each_clique(
        p, req, [v](NodeId x) { return x > v; },
        [&out](std::span<const NodeId> c) { out.emplace_back(std::vector<NodeId>(c.begin(), c.end())); });
  }
  normalize(out);
  return out;
}

namespace {

RunReport drive(const Graph& g, std::size_t p, std::uint64_t seed, const Config& cfg, const PipelineOptions& opts,
                bool k4) {
  if (p < 3) throw std::invalid_argument("p must be >= 3");
  const std::size_t n = g.num_nodes();
  RunReport rep;
  rep.mode = k4 ? "congest-k4" : "congest";
  rep.n = n;
  rep.m = g.num_edges();
  rep.p = p;
  rep.seed = seed;
  rep.forced_depth = opts.forced_depth;
  rep.accounting = Accounting(n);
  auto& acct = rep.accounting;
  const double nd = static_cast<double>(n);

  if (n < 4 || p > ceil_log2(n)) {
    rep.fallback = true;
    rep.cliques = broadcast_list(g, p, cfg.broadcast_cap * nd, "fallback_broadcast", mix_seed(seed), cfg, acct);
    rep.residual_edges = g.num_edges();
    rep.residual_out_degree = g.max_out_degree();
    return rep;
  }

  const IterationSchedule sched(n, p, k4);
  rep.stop_threshold = sched.stop_threshold();
  Graph current = g;
  int k = 0;
  for (;; ++k) {
    const auto step = sched.step(k);
    const double delta = step.delta.value(n);
    if (opts.forced_depth > 0) {
      if (k >= opts.forced_depth || delta <= 0.0 || std::pow(nd, delta) < 1.0) break;
    } else if (k >= sched.max_outer() || sched.stop(k)) {
      break;
    }
    acct.set_step(k, -1);
    auto lr = list_round(current, step, p, k4, mix_seed(seed + 0x100ULL * static_cast<std::uint64_t>(k + 1)), cfg, acct,
                         opts, rep.cliques);
    rep.cliques = merged(rep.cliques, lr.cliques);
    rep.steps.insert(rep.steps.end(), lr.steps.begin(), lr.steps.end());
    for (auto& dump : lr.cluster_dumps) rep.cluster_dumps.push_back(std::move(dump));
    current = std::move(lr.tilde_es);
  }
  rep.outer_steps = k;

  acct.set_step(-1, -1);
  const double cap = cfg.broadcast_cap * std::pow(nd, sched.step(k).d.value(n));
  rep.residual_edges = current.num_edges();
  rep.residual_out_degree = current.max_out_degree();
  const auto tail = broadcast_list(current, p, cap, "terminal_broadcast", mix_seed(seed + 7), cfg, acct);
  rep.cliques = merged(rep.cliques, tail);
  return rep;
}

}  // namespace

RunReport congest_list_kp(const Graph& g, std::size_t p, std::uint64_t seed, const Config& cfg,
                          const PipelineOptions& opts) {
  return drive(g, p, seed, cfg, opts, false);
}

RunReport congest_list_k4(const Graph& g, std::uint64_t seed, const Config& cfg, const PipelineOptions& opts) {
  return drive(g, 4, seed, cfg, opts, true);
}

}  // namespace cliquelist
