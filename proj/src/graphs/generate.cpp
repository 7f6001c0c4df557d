#include "qma3col/errors.hpp"
#include "qma3col/graphs.hpp"
#include "qma3col/rng.hpp"

namespace qma3col::generate {

Graph complete(std::size_t k) {
  if (k == 0) throw InputError("complete graph needs at least one node");
  std::vector<Graph::Edge> edges;
  for (std::size_t u = 0; u < k; ++u)
    for (std::size_t v = u + 1; v < k; ++v) edges.emplace_back(u, v);
  return Graph(k, std::move(edges));
}

Graph cycle(std::size_t k) {
  if (k < 3) throw InputError("cycle needs at least three nodes");
  std::vector<Graph::Edge> edges;
  for (std::size_t u = 0; u < k; ++u) edges.emplace_back(u, (u + 1) % k);
  return Graph(k, std::move(edges));
}

Graph wheel(std::size_t rim) {
  if (rim < 3) throw InputError("wheel rim needs at least three nodes");
  std::vector<Graph::Edge> edges;
  for (std::size_t u = 0; u < rim; ++u) {
    edges.emplace_back(0, u + 1);
    edges.emplace_back(u + 1, (u + 1) % rim + 1);
  }
  return Graph(rim + 1, std::move(edges));
}

Graph petersen() {
  // Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
  std::vector<Graph::Edge> edges;
  for (std::size_t i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);
    edges.emplace_back(i, i + 5);
  }
  return Graph(10, std::move(edges));
}

Graph gnp(std::size_t n, double p, std::uint64_t seed) {
  if (n == 0) throw InputError("G(n, p) needs at least one node");
  if (!(p >= 0.0 && p <= 1.0)) throw InputError("edge probability must lie in [0, 1]");
  SeedStream rng(seed, 0x6e70);
  std::vector<Graph::Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.uniform() < p) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

}  // namespace qma3col::generate
