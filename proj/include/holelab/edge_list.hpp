#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "holelab/errors.hpp"
#include "holelab/graph.hpp"

namespace holelab {

// Edge-list text format: a header line "n m", then m lines "u v" with u < v.

inline Graph read_edge_list(std::istream& in) {
  long long n = -1, m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) throw InputError("edge list: bad header, expected \"n m\"");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    long long u = -1, v = -1;
    if (!(in >> u >> v)) throw InputError("edge list: expected " + std::to_string(m) + " edges");
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw InputError("edge list: endpoint out of range on edge " + std::to_string(i));
    if (u >= v) throw InputError("edge list: edge " + std::to_string(i) + " is not of the form u < v");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  std::string extra;
  if (in >> extra) throw InputError("edge list: trailing content after " + std::to_string(m) + " edges");
  const auto count = edges.size();
  Graph g = Graph::from_edges(static_cast<std::size_t>(n), std::move(edges));
  if (g.edge_count() != count) throw InputError("edge list: duplicate edges");
  return g;
}

inline Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open graph file " + path);
  return read_edge_list(in);
}

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline std::string format_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

}  // namespace holelab
