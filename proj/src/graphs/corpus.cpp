#include <string>

#include "qma3col/graphs.hpp"

namespace qma3col {

namespace {

// Scans seeds until `count` graphs with the requested colorability turn up.
// Node counts cycle through [lo, hi] so the corpus covers several sizes.
std::vector<NamedGraph> random_family(bool want_colorable, double p, std::size_t lo, std::size_t hi,
                                      std::size_t count, std::uint64_t base_seed) {
  std::vector<NamedGraph> out;
  std::uint64_t seed = base_seed;
  std::size_t n = lo;
  while (out.size() < count) {
    Graph g = generate::gnp(n, p, seed);
    const bool colorable = find_3coloring(g).has_value();
    if (colorable == want_colorable && g.num_edges() > 0) {
      out.push_back({"gnp_n" + std::to_string(n) + "_s" + std::to_string(seed), std::move(g)});
      n = (n == hi) ? lo : n + 1;
    }
    ++seed;
  }
  return out;
}

}  // namespace

std::vector<NamedGraph> colorable_corpus() {
  std::vector<NamedGraph> out = {
      {"K3", generate::complete(3)},
      {"C5", generate::cycle(5)},
      {"petersen", generate::petersen()},
  };
  for (auto& g : random_family(true, 0.5, 5, 10, 10, 1000)) out.push_back(std::move(g));
  return out;
}

std::vector<NamedGraph> uncolorable_corpus() {
  std::vector<NamedGraph> out = {
      {"K4", generate::complete(4)},
      {"W5", generate::wheel(5)},
  };
  for (auto& g : random_family(false, 0.6, 5, 10, 10, 2000)) out.push_back(std::move(g));
  return out;
}

}  // namespace qma3col
