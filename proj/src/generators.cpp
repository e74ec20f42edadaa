#include "cliquelist/generators.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cliquelist/rng.hpp"

namespace cliquelist {

namespace {

std::vector<Edge> gnp_edges(std::size_t n, double q, Rng& rng) {
  std::vector<Edge> edges;
  if (q <= 0.0) return edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (q >= 1.0 || uniform01(rng) < q) edges.emplace_back(u, v);
    }
  }
  return edges;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

std::size_t to_size(const std::string& s) {
  std::size_t pos = 0;
  auto v = std::stoull(s, &pos);
  if (pos != s.size()) throw GraphError("bad integer '" + s + "'");
  return static_cast<std::size_t>(v);
}

double to_double(const std::string& s) {
  std::size_t pos = 0;
  auto v = std::stod(s, &pos);
  if (pos != s.size()) throw GraphError("bad number '" + s + "'");
  return v;
}

}  // namespace

Graph gnp(std::size_t n, double q, std::uint64_t seed) {
  if (q < 0.0 || q > 1.0) throw GraphError("gnp probability must be in [0,1]");
  Rng rng = make_stream(seed, 0);
  return Graph(n, gnp_edges(n, q, rng));
}

Graph complete_graph(std::size_t n) { return gnp(n, 1.0, 0); }

Graph empty_graph(std::size_t n) { return Graph(n); }

PlantedGraph planted(std::size_t n, std::size_t p, std::size_t count, double q_background,
                     std::uint64_t seed) {
  if (count * p > n) throw GraphError("planted cliques need count*p <= n");
  if (q_background < 0.0 || q_background > 1.0) throw GraphError("background probability must be in [0,1]");
  Rng rng = make_stream(seed, 0);
  auto edges = gnp_edges(n, q_background, rng);

  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);

  PlantedGraph out;
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<NodeId> members(perm.begin() + static_cast<std::ptrdiff_t>(c * p),
                                perm.begin() + static_cast<std::ptrdiff_t>((c + 1) * p));
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) edges.emplace_back(members[i], members[j]);
    }
    out.planted.emplace_back(std::move(members));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  out.graph = Graph(n, std::move(edges));
  std::sort(out.planted.begin(), out.planted.end());
  return out;
}

Graph generate(const GeneratorSpec& spec) {
  return std::visit(
      [](const auto& s) -> Graph {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GnpSpec>) {
          return gnp(s.n, s.q, s.seed);
        } else if constexpr (std::is_same_v<T, PlantedSpec>) {
          return planted(s.n, s.p, s.count, s.q_background, s.seed).graph;
        } else if constexpr (std::is_same_v<T, CompleteSpec>) {
          return complete_graph(s.n);
        } else {
          return empty_graph(s.n);
        }
      },
      spec);
}

GeneratorSpec parse_generator(const std::string& text) {
  auto parts = split(text, ':');
  if (parts.empty()) throw GraphError("empty generator spec");
  const auto& kind = parts[0];
  try {
    if (kind == "gnp" && parts.size() == 4) {
      return GnpSpec{to_size(parts[1]), to_double(parts[2]), to_size(parts[3])};
    }
    if (kind == "planted" && parts.size() == 6) {
      return PlantedSpec{to_size(parts[1]), to_size(parts[2]), to_size(parts[3]), to_double(parts[4]),
                         to_size(parts[5])};
    }
    if (kind == "complete" && parts.size() == 2) return CompleteSpec{to_size(parts[1])};
    if (kind == "empty" && parts.size() == 2) return EmptySpec{to_size(parts[1])};
  } catch (const std::logic_error& e) {
    throw GraphError("bad generator spec '" + text + "': " + e.what());
  }
  throw GraphError("bad generator spec '" + text + "'");
}

std::string to_string(const GeneratorSpec& spec) {
  std::ostringstream os;
  std::visit(
      [&os](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GnpSpec>) {
          os << "gnp:" << s.n << ':' << s.q << ':' << s.seed;
        } else if constexpr (std::is_same_v<T, PlantedSpec>) {
          os << "planted:" << s.n << ':' << s.p << ':' << s.count << ':' << s.q_background << ':' << s.seed;
        } else if constexpr (std::is_same_v<T, CompleteSpec>) {
          os << "complete:" << s.n;
        } else {
          os << "empty:" << s.n;
        }
      },
      spec);
  return os.str();
}

}  // namespace cliquelist
