#include "cliquelist/graph_io.hpp"

#include <fstream>
#include <sstream>

namespace cliquelist {

namespace {

bool next_data_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw GraphError("edge list line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_data_line(in, line, line_no)) throw GraphError("edge list: missing header");
  long long n = -1;
  long long m = -1;
  {
    std::istringstream hs(line);
    if (!(hs >> n >> m) || n < 0 || m < 0) fail(line_no, "header must be 'n m'");
  }

  std::vector<Edge> edges;
  std::vector<NodeId> tails;
  edges.reserve(static_cast<std::size_t>(m));
  int oriented = -1;
  while (next_data_line(in, line, line_no)) {
    std::istringstream ls(line);
    long long u = -1;
    long long v = -1;
    if (!(ls >> u >> v)) fail(line_no, "expected 'u v [tail]'");
    if (u < 0 || v < 0 || u >= n || v >= n) fail(line_no, "node id out of range");
    long long t = -1;
    const bool has_tail = static_cast<bool>(ls >> t);
    if (oriented == -1) oriented = has_tail ? 1 : 0;
    if (has_tail != (oriented == 1)) fail(line_no, "orientation column present on some lines only");
    if (has_tail && t != u && t != v) fail(line_no, "tail is not an endpoint");
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    tails.push_back(has_tail ? static_cast<NodeId>(t) : edges.back().u);
  }
  if (static_cast<long long>(edges.size()) != m) {
    throw GraphError("edge list: header says " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  }
  return Graph(static_cast<std::size_t>(n), std::move(edges), std::move(tails));
}

Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file '" + path + "'");
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g, bool with_orientation) {
  out << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const auto& e = g.edge(i);
    out << e.u << ' ' << e.v;
    if (with_orientation) out << ' ' << g.tail(i);
    out << '\n';
  }
}

void write_edge_list_file(const std::string& path, const Graph& g, bool with_orientation) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write graph file '" + path + "'");
  write_edge_list(out, g, with_orientation);
}

}  // namespace cliquelist
