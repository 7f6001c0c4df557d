#include <string>

#include "qma3col/errors.hpp"
#include "qma3col/graphs.hpp"

namespace qma3col {

bool is_valid_coloring(const Graph& g, const Coloring& c) {
  if (c.size() != g.num_nodes()) {
    throw InputError("coloring has " + std::to_string(c.size()) + " entries for " +
                     std::to_string(g.num_nodes()) + " nodes");
  }
  for (std::uint8_t color : c) {
    if (color > 2) return false;
  }
  for (const auto& [u, v] : g.edges()) {
    if (c[u] == c[v]) return false;
  }
  return true;
}

namespace {

bool extend(const Graph& g, Coloring& c, std::size_t node) {
  if (node == g.num_nodes()) return true;
  for (std::uint8_t color = 0; color < 3; ++color) {
    bool clash = false;
    // Only earlier nodes are colored at this depth.
    for (std::size_t w : g.neighbors(node)) {
      if (w < node && c[w] == color) {
        clash = true;
        break;
      }
    }
    if (clash) continue;
    c[node] = color;
    if (extend(g, c, node + 1)) return true;
  }
  return false;
}

}  // namespace

std::optional<Coloring> find_3coloring(const Graph& g) {
  if (g.num_nodes() > kColoringSearchCap) {
    throw CapError("3-coloring search is capped at " + std::to_string(kColoringSearchCap) + " nodes");
  }
  Coloring c(g.num_nodes(), 0);
  if (extend(g, c, 0)) return c;
  return std::nullopt;
}

}  // namespace qma3col
