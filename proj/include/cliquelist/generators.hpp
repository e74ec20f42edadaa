#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "cliquelist/graph.hpp"

namespace cliquelist {

struct GnpSpec {
  std::size_t n = 0;
  double q = 0.0;
  std::uint64_t seed = 0;
};

/// `count` vertex-disjoint K_p over a G(n, q_background) background.
struct PlantedSpec {
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t count = 0;
  double q_background = 0.0;
  std::uint64_t seed = 0;
};

struct CompleteSpec {
  std::size_t n = 0;
};

struct EmptySpec {
  std::size_t n = 0;
};

using GeneratorSpec = std::variant<GnpSpec, PlantedSpec, CompleteSpec, EmptySpec>;

Graph generate(const GeneratorSpec& spec);

Graph gnp(std::size_t n, double q, std::uint64_t seed);
Graph complete_graph(std::size_t n);
Graph empty_graph(std::size_t n);

struct PlantedGraph {
  Graph graph;
  std::vector<Clique> planted;
};

/// Throws GraphError when count * p > n.
PlantedGraph planted(std::size_t n, std::size_t p, std::size_t count, double q_background,
                     std::uint64_t seed);

/// Parses "gnp:N:Q:SEED", "planted:N:P:COUNT:Q:SEED", "complete:N", "empty:N".
GeneratorSpec parse_generator(const std::string& text);
std::string to_string(const GeneratorSpec& spec);

}  // namespace cliquelist
