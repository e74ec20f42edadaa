#pragma once

#include <iosfwd>
#include <string>

#include "cliquelist/graph.hpp"

namespace cliquelist {

// Edge-list text format:
//   n m
//   u v [tail]
//   ...
// Lines starting with '#' are ignored. When the tail column is missing the
// edge is directed away from its smaller endpoint. A file either gives tails
// for every edge or for none.

Graph read_edge_list(std::istream& in);
Graph read_edge_list_file(const std::string& path);

void write_edge_list(std::ostream& out, const Graph& g, bool with_orientation = true);
void write_edge_list_file(const std::string& path, const Graph& g, bool with_orientation = true);

}  // namespace cliquelist
