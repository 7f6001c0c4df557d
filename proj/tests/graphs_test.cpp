#include "qma3col/graphs.hpp"

#include <gtest/gtest.h>

#include "qma3col/errors.hpp"
#include "qma3col/rng.hpp"

using namespace qma3col;

namespace {

// Exhaustive 3^n scan, independent of the backtracking search.
bool brute_force_colorable(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  Coloring c(n);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t x = code;
    for (std::size_t i = n; i-- > 0;) {
      c[i] = static_cast<std::uint8_t>(x % 3);
      x /= 3;
    }
    if (is_valid_coloring(g, c)) return true;
  }
  return false;
}

}  // namespace

TEST(ParseGraph, triangle) {
  ParseResult r = parse_graph("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
  EXPECT_EQ(r.graph, generate::complete(3));
  EXPECT_TRUE(r.warnings.empty());
}

TEST(ParseGraph, isolated_nodes) {
  ParseResult r = parse_graph("c two isolated nodes\np edge 2 0\n");
  EXPECT_EQ(r.graph.num_nodes(), 2u);
  EXPECT_EQ(r.graph.num_edges(), 0u);
}

TEST(ParseGraph, errors) {
  EXPECT_THROW(parse_graph("p edge 2 1\ne 1 1\n"), InputError);
  EXPECT_THROW(parse_graph("e 1 1\n"), InputError);
  EXPECT_THROW(parse_graph("p edge 2 1\ne 1 3\n"), InputError);
  EXPECT_THROW(parse_graph("p edge 2 1\ne 0 1\n"), InputError);
  EXPECT_THROW(parse_graph("p edge 2 1\nx 1 2\n"), InputError);
  EXPECT_THROW(parse_graph("p edge 2 2\ne 1 2\n"), InputError);
  EXPECT_THROW(parse_graph("p edge two 1\ne 1 2\n"), InputError);
  EXPECT_THROW(parse_graph("e 1 2\n"), InputError);
  EXPECT_THROW(parse_graph(""), InputError);
}

TEST(ParseGraph, duplicate_edge_warns) {
  ParseResult r = parse_graph("p edge 3 3\ne 1 2\ne 2 1\ne 2 3\n");
  EXPECT_EQ(r.graph.num_edges(), 2u);
  ASSERT_EQ(r.warnings.size(), 1u);
}

TEST(ParseGraph, serialize_round_trip) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Graph g = generate::gnp(1 + seed % 9, 0.4, seed);
    const std::string text = serialize_graph(g);
    EXPECT_EQ(parse_graph(text).graph, g);
    EXPECT_EQ(serialize_graph(parse_graph(text).graph), text);
  }
  EXPECT_EQ(serialize_graph(generate::complete(3)), "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
}

TEST(IsValidColoring, examples) {
  Graph k3 = generate::complete(3);
  EXPECT_TRUE(is_valid_coloring(k3, {0, 1, 2}));
  EXPECT_FALSE(is_valid_coloring(k3, {0, 0, 1}));
  Graph empty(4);
  EXPECT_TRUE(is_valid_coloring(empty, {2, 2, 2, 2}));
  EXPECT_THROW(is_valid_coloring(k3, {0, 1}), InputError);
}

TEST(Find3Coloring, examples) {
  EXPECT_EQ(find_3coloring(generate::complete(3)), (Coloring{0, 1, 2}));
  EXPECT_FALSE(find_3coloring(generate::complete(4)).has_value());
  auto c5 = find_3coloring(generate::cycle(5));
  ASSERT_TRUE(c5.has_value());
  EXPECT_TRUE(is_valid_coloring(generate::cycle(5), *c5));
  EXPECT_EQ(find_3coloring(Graph(1)), (Coloring{0}));
  EXPECT_EQ(find_3coloring(Graph(2)), (Coloring{0, 0}));
  EXPECT_THROW(find_3coloring(Graph(31)), CapError);
}

TEST(Find3Coloring, lexicographically_first) {
  // C5 by backtracking: 0,1,0,1,2.
  EXPECT_EQ(find_3coloring(generate::cycle(5)), (Coloring{0, 1, 0, 1, 2}));
}

TEST(Find3Coloring, agrees_with_exhaustive_scan) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Graph g = generate::gnp(1 + seed % 8, 0.3 + 0.05 * static_cast<double>(seed % 8), seed);
    auto c = find_3coloring(g);
    EXPECT_EQ(c.has_value(), brute_force_colorable(g)) << seed;
    if (c) EXPECT_TRUE(is_valid_coloring(g, *c));
  }
}

TEST(Generate, shapes) {
  EXPECT_EQ(generate::complete(4).num_edges(), 6u);
  Graph c5 = generate::cycle(5);
  EXPECT_EQ(c5.num_edges(), 5u);
  EXPECT_TRUE(find_3coloring(c5).has_value());
  Graph p = generate::petersen();
  EXPECT_EQ(p.num_nodes(), 10u);
  EXPECT_EQ(p.num_edges(), 15u);
  for (std::size_t v = 0; v < 10; ++v) EXPECT_EQ(p.neighbors(v).size(), 3u);
  EXPECT_TRUE(find_3coloring(p).has_value());
  Graph w5 = generate::wheel(5);
  EXPECT_EQ(w5.num_nodes(), 6u);
  EXPECT_EQ(w5.num_edges(), 10u);
  EXPECT_FALSE(find_3coloring(w5).has_value());
  EXPECT_EQ(generate::gnp(8, 0.5, 42), generate::gnp(8, 0.5, 42));
  EXPECT_THROW(generate::gnp(5, 1.5, 0), InputError);
  EXPECT_THROW(generate::cycle(2), InputError);
}

TEST(Corpus, colorability_confirmed) {
  auto yes = colorable_corpus();
  auto no = uncolorable_corpus();
  EXPECT_EQ(yes.size(), 13u);
  EXPECT_EQ(no.size(), 12u);
  for (const auto& g : yes) {
    EXPECT_LE(g.graph.num_nodes(), 10u);
    EXPECT_TRUE(find_3coloring(g.graph).has_value()) << g.name;
  }
  for (const auto& g : no) {
    EXPECT_LE(g.graph.num_nodes(), 10u);
    EXPECT_FALSE(brute_force_colorable(g.graph)) << g.name;
  }
}
