#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qma3col {

// Simple undirected graph on nodes 0..n-1. Edges are stored sorted with
// u < v; no self-loops, no duplicates.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  explicit Graph(std::size_t n = 0, std::vector<Edge> edges = {});

  std::size_t num_nodes() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  bool adjacent(std::size_t u, std::size_t v) const;
  const std::vector<std::size_t>& neighbors(std::size_t u) const { return adjacency_[u]; }

  bool operator==(const Graph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<bool> matrix_;
};

using Coloring = std::vector<std::uint8_t>;

struct ParseResult {
  Graph graph;
  std::vector<std::string> warnings;
};

// DIMACS edge format: "c ..." comments, one "p edge <n> <m>" line, then
// "e <u> <v>" lines with 1-based node indices. Duplicate edges produce a
// warning and are dropped.
ParseResult parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);

bool is_valid_coloring(const Graph& g, const Coloring& c);

inline constexpr std::size_t kColoringSearchCap = 30;

// Lexicographically first proper 3-coloring (node order, colors 0 < 1 < 2)
// found by backtracking, or nullopt. Throws CapError for n > 30.
std::optional<Coloring> find_3coloring(const Graph& g);

namespace generate {
Graph complete(std::size_t k);
Graph cycle(std::size_t k);
// Hub node 0 joined to a rim cycle on nodes 1..rim.
Graph wheel(std::size_t rim);
Graph petersen();
// Erdos-Renyi G(n, p); deterministic per seed.
Graph gnp(std::size_t n, double p, std::uint64_t seed);
}  // namespace generate

struct NamedGraph {
  std::string name;
  Graph graph;
};

// Fixed test corpora. Colorable: K3, C5, Petersen and ten random
// 3-colorable G(n, 1/2) graphs with n <= 10. Uncolorable: K4, W5 and ten
// random graphs with n <= 10 confirmed uncolorable by the exact search.
std::vector<NamedGraph> colorable_corpus();
std::vector<NamedGraph> uncolorable_corpus();

}  // namespace qma3col
