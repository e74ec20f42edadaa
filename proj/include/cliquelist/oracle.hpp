#pragma once

#include <cstddef>

#include "cliquelist/graph.hpp"

namespace cliquelist {

/// Reference K_p enumeration by recursive neighborhood intersection over
/// higher-ID neighbors. Every clique is produced exactly once. Throws
/// GraphError for p < 3.
CliqueSet brute_force_list_kp(const Graph& g, std::size_t p);

/// Counting variant of the same enumeration; avoids materializing cliques.
std::size_t brute_force_count_kp(const Graph& g, std::size_t p);

}  // namespace cliquelist
