#pragma once

#include <string>
#include <vector>

#include "basics.hpp"

namespace clo {

// Edges of the complete graph on [n] are indexed by {i,j} with i < j:
// index = j*(j-1)/2 + i. Index 0 is {0,1}, index 1 is {0,2}, ...
std::size_t edge_slots(std::size_t n);
std::size_t edge_index(std::size_t i, std::size_t j);
std::pair<std::size_t, std::size_t> edge_endpoints(std::size_t index);

class Graph {
public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), edges_(edge_slots(n)) {}

  std::size_t n() const { return n_; }
  bool edge(std::size_t u, std::size_t v) const;
  bool edge_at(std::size_t index) const { return edges_.test(index); }
  void set_edge(std::size_t u, std::size_t v, bool value = true);
  void set_edge_at(std::size_t index, bool value = true) { edges_.set(index, value); }
  std::size_t edge_count() const { return edges_.count(); }
  bool subgraph_of(const Graph& other) const;
  bool operator==(const Graph& other) const = default;

  const DynBitset& edges() const { return edges_; }

  // Lowercase hex of the edge bitset, least significant bit = edge 0,
  // leading zeros trimmed ("0" for the empty graph).
  std::string edges_hex() const;
  static Graph from_edges_hex(std::size_t n, const std::string& hex);

private:
  std::size_t n_ = 0;
  DynBitset edges_;
};

struct CliqueGraph {
  std::vector<std::size_t> vertices;  // sorted ascending
  Graph graph;
  std::string encoding;  // "0,2,5"
};

CliqueGraph clique_graph(std::vector<std::size_t> vertices, std::size_t n);

std::string encode_clique(const std::vector<std::size_t>& vertices);
std::vector<std::size_t> parse_clique(const std::string& text);

struct Coloring {
  std::size_t colors = 0;             // palette size
  std::vector<std::size_t> values;    // one color per vertex
  bool trivial() const;               // every vertex the same color
};

Coloring make_coloring(std::size_t colors, std::vector<std::size_t> values);

// Complete multipartite graph: edge {u,v} present iff colors differ.
Graph graph_of_coloring(const Coloring& c);

struct Partition {
  std::vector<std::vector<std::size_t>> parts;  // each sorted; ordered by min element
  std::vector<std::size_t> part_of;             // vertex -> part index
  std::string encoding;                         // "0,2|1,3"
  Graph graph;                                  // complete multipartite graph

  std::size_t n() const { return part_of.size(); }
  std::size_t zeta() const { return parts.size(); }
};

Partition make_partition(std::size_t n, std::vector<std::vector<std::size_t>> parts);
Partition partition_of_coloring(const Coloring& c);

std::string encode_partition(const std::vector<std::vector<std::size_t>>& parts);
std::vector<std::vector<std::size_t>> parse_partition(const std::string& text);

}  // namespace clo
