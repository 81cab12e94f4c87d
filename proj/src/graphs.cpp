#include "graphs.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace clo {

std::size_t edge_slots(std::size_t n) { return n * (n - 1) / 2; }

std::size_t edge_index(std::size_t i, std::size_t j) {
  if (i == j) fail(ErrorKind::invalid_argument, "edge endpoints must differ");
  if (i > j) std::swap(i, j);
  return j * (j - 1) / 2 + i;
}

std::pair<std::size_t, std::size_t> edge_endpoints(std::size_t index) {
  // Smallest j with j*(j-1)/2 > index.
  std::size_t j = static_cast<std::size_t>((1.0 + std::sqrt(1.0 + 8.0 * double(index))) / 2.0);
  while (j * (j - 1) / 2 > index) --j;
  while ((j + 1) * j / 2 <= index) ++j;
  return {index - j * (j - 1) / 2, j};
}

bool Graph::edge(std::size_t u, std::size_t v) const { return edges_.test(edge_index(u, v)); }

void Graph::set_edge(std::size_t u, std::size_t v, bool value) {
  edges_.set(edge_index(u, v), value);
}

bool Graph::subgraph_of(const Graph& other) const { return edges_.subset_of(other.edges_); }

std::string Graph::edges_hex() const {
  const auto& words = edges_.words();
  std::string out;
  bool started = false;
  for (std::size_t wi = words.size(); wi-- > 0;) {
    for (int shift = 60; shift >= 0; shift -= 4) {
      unsigned nib = (words[wi] >> shift) & 0xf;
      if (!started && nib == 0) continue;
      started = true;
      out += "0123456789abcdef"[nib];
    }
  }
  return started ? out : "0";
}

Graph Graph::from_edges_hex(std::size_t n, const std::string& hex) {
  if (hex.empty()) fail(ErrorKind::schema, "empty graph encoding");
  Graph g(n);
  std::size_t slots = edge_slots(n);
  std::size_t bit = 0;
  for (std::size_t pos = hex.size(); pos-- > 0; bit += 4) {
    char c = hex[pos];
    unsigned nib;
    if (c >= '0' && c <= '9')
      nib = c - '0';
    else if (c >= 'a' && c <= 'f')
      nib = 10 + (c - 'a');
    else
      fail(ErrorKind::schema, std::string("bad hex digit '") + c + "' in graph encoding");
    for (unsigned b = 0; b < 4; ++b) {
      if (!((nib >> b) & 1)) continue;
      std::size_t idx = bit + b;
      if (idx >= slots) fail(ErrorKind::schema, "graph encoding has edges out of range");
      g.set_edge_at(idx);
    }
  }
  return g;
}

CliqueGraph clique_graph(std::vector<std::size_t> vertices, std::size_t n) {
  std::sort(vertices.begin(), vertices.end());
  if (vertices.size() < 2) fail(ErrorKind::invalid_argument, "clique needs at least 2 vertices");
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
    if (vertices[i] == vertices[i + 1])
      fail(ErrorKind::invalid_argument, "clique vertices must be distinct");
  if (vertices.back() >= n) fail(ErrorKind::invalid_argument, "clique vertex out of range");
  CliqueGraph cg;
  cg.graph = Graph(n);
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      cg.graph.set_edge(vertices[a], vertices[b]);
  cg.encoding = encode_clique(vertices);
  cg.vertices = std::move(vertices);
  return cg;
}

std::string encode_clique(const std::vector<std::size_t>& vertices) {
  std::ostringstream os;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i) os << ',';
    os << vertices[i];
  }
  return os.str();
}

static std::vector<std::size_t> parse_number_list(const std::string& text, char sep) {
  std::vector<std::size_t> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      fail(ErrorKind::schema, "bad vertex list: '" + text + "'");
    out.push_back(std::stoull(item));
  }
  if (out.empty()) fail(ErrorKind::schema, "empty vertex list");
  return out;
}

std::vector<std::size_t> parse_clique(const std::string& text) {
  auto verts = parse_number_list(text, ',');
  for (std::size_t i = 0; i + 1 < verts.size(); ++i)
    if (verts[i] >= verts[i + 1]) fail(ErrorKind::schema, "clique encoding not strictly increasing");
  return verts;
}

bool Coloring::trivial() const {
  for (std::size_t v : values)
    if (v != values[0]) return false;
  return true;
}

Coloring make_coloring(std::size_t colors, std::vector<std::size_t> values) {
  if (colors == 0 || values.empty()) fail(ErrorKind::invalid_argument, "empty coloring");
  for (std::size_t v : values)
    if (v >= colors) fail(ErrorKind::invalid_argument, "color out of range");
  return Coloring{colors, std::move(values)};
}

Graph graph_of_coloring(const Coloring& c) {
  Graph g(c.values.size());
  for (std::size_t u = 0; u < c.values.size(); ++u)
    for (std::size_t v = u + 1; v < c.values.size(); ++v)
      if (c.values[u] != c.values[v]) g.set_edge(u, v);
  return g;
}

Partition make_partition(std::size_t n, std::vector<std::vector<std::size_t>> parts) {
  if (parts.empty()) fail(ErrorKind::invalid_argument, "partition needs at least one part");
  for (auto& p : parts) {
    if (p.empty()) fail(ErrorKind::invalid_argument, "partition has an empty part");
    std::sort(p.begin(), p.end());
  }
  std::sort(parts.begin(), parts.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  Partition out;
  out.part_of.assign(n, parts.size());
  for (std::size_t pi = 0; pi < parts.size(); ++pi)
    for (std::size_t v : parts[pi]) {
      if (v >= n) fail(ErrorKind::invalid_argument, "partition vertex out of range");
      if (out.part_of[v] != parts.size())
        fail(ErrorKind::invalid_argument, "partition repeats a vertex");
      out.part_of[v] = pi;
    }
  for (std::size_t v = 0; v < n; ++v)
    if (out.part_of[v] == parts.size())
      fail(ErrorKind::invalid_argument, "partition does not cover every vertex");
  out.graph = Graph(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (out.part_of[u] != out.part_of[v]) out.graph.set_edge(u, v);
  out.encoding = encode_partition(parts);
  out.parts = std::move(parts);
  return out;
}

Partition partition_of_coloring(const Coloring& c) {
  std::vector<std::vector<std::size_t>> parts;
  std::vector<std::size_t> slot(c.colors, c.colors);
  for (std::size_t v = 0; v < c.values.size(); ++v) {
    std::size_t col = c.values[v];
    if (slot[col] == c.colors) {
      slot[col] = parts.size();
      parts.emplace_back();
    }
    parts[slot[col]].push_back(v);
  }
  return make_partition(c.values.size(), std::move(parts));
}

std::string encode_partition(const std::vector<std::vector<std::size_t>>& parts) {
  std::ostringstream os;
  for (std::size_t pi = 0; pi < parts.size(); ++pi) {
    if (pi) os << '|';
    os << encode_clique(parts[pi]);
  }
  return os.str();
}

std::vector<std::vector<std::size_t>> parse_partition(const std::string& text) {
  std::vector<std::vector<std::size_t>> parts;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, '|')) parts.push_back(parse_number_list(item, ','));
  if (parts.empty()) fail(ErrorKind::schema, "empty partition encoding");
  return parts;
}

}  // namespace clo
