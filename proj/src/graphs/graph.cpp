#include <algorithm>
#include <charconv>
#include <sstream>
#include <string>

#include "qma3col/errors.hpp"
#include "qma3col/graphs.hpp"

namespace qma3col {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), adjacency_(n), matrix_(n * n, false) {
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) throw InputError("edge endpoint out of range");
    if (u == v) throw InputError("self-loop on node " + std::to_string(u + 1));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) throw InputError("duplicate edge");
  edges_ = std::move(edges);
  for (const auto& [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
    matrix_[u * n_ + v] = true;
    matrix_[v * n_ + u] = true;
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool Graph::adjacent(std::size_t u, std::size_t v) const {
  return u < n_ && v < n_ && matrix_[u * n_ + v];
}

namespace {

std::size_t parse_count(std::string_view token, std::size_t line_no) {
  std::size_t value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw InputError("line " + std::to_string(line_no) + ": expected a nonnegative integer, got '" +
                     std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

ParseResult parse_graph(std::string_view text) {
  std::optional<std::size_t> n;
  std::size_t declared_edges = 0;
  std::size_t edge_lines = 0;
  std::vector<Graph::Edge> edges;
  std::vector<std::string> warnings;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view line = text.substr(start, stop - start);
    start = stop + 1;
    ++line_no;

    auto tokens = split(line);
    if (tokens.empty() || tokens[0] == "c") continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (tokens[0] == "p") {
      if (n) throw InputError(where + "second problem line");
      if (tokens.size() != 4 || tokens[1] != "edge") throw InputError(where + "expected 'p edge <n> <m>'");
      n = parse_count(tokens[2], line_no);
      declared_edges = parse_count(tokens[3], line_no);
    } else if (tokens[0] == "e") {
      if (tokens.size() != 3) throw InputError(where + "expected 'e <u> <v>'");
      const std::size_t u = parse_count(tokens[1], line_no);
      const std::size_t v = parse_count(tokens[2], line_no);
      if (u == v) throw InputError(where + "self-loop on node " + std::to_string(u));
      if (!n) throw InputError(where + "edge before the problem line");
      if (u < 1 || v < 1 || u > *n || v > *n) {
        throw InputError(where + "node index out of range 1.." + std::to_string(*n));
      }
      ++edge_lines;
      Graph::Edge e{std::min(u, v) - 1, std::max(u, v) - 1};
      if (std::find(edges.begin(), edges.end(), e) != edges.end()) {
        warnings.push_back(where + "duplicate edge " + std::to_string(e.first + 1) + " " +
                           std::to_string(e.second + 1) + " ignored");
        continue;
      }
      edges.push_back(e);
    } else {
      throw InputError(where + "unrecognized line type '" + std::string(tokens[0]) + "'");
    }
  }
  if (!n) throw InputError("missing 'p edge <n> <m>' line");
  if (edge_lines != declared_edges) {
    throw InputError("problem line declares " + std::to_string(declared_edges) + " edges but " +
                     std::to_string(edge_lines) + " edge lines were found");
  }
  return ParseResult{Graph(*n, std::move(edges)), std::move(warnings)};
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << "p edge " << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (const auto& [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

}  // namespace qma3col
