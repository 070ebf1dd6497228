#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "mfgprep/csr_graph.hpp"
#include "mfgprep/error.hpp"
#include "mfgprep/rng.hpp"
#include "mfgprep/synth.hpp"

namespace mfgprep {
namespace {

std::vector<EdgeSlot> indptr_of(const CsrGraph& g) { return {g.indptr().begin(), g.indptr().end()}; }
std::vector<NodeId> indices_of(const CsrGraph& g) { return {g.indices().begin(), g.indices().end()}; }

TEST(FromEdgeList, UndirectedPath) {
  const std::vector<Edge> edges{{0, 1}, {1, 2}};
  const CsrGraph g = CsrGraph::from_edge_list(edges, 3, true);
  EXPECT_EQ(indptr_of(g), (std::vector<EdgeSlot>{0, 1, 3, 4}));
  EXPECT_EQ(indices_of(g), (std::vector<NodeId>{1, 0, 2, 1}));
}

TEST(FromEdgeList, EmptyGraph) {
  const CsrGraph g = CsrGraph::from_edge_list({}, 2, true);
  EXPECT_EQ(indptr_of(g), (std::vector<EdgeSlot>{0, 0, 0}));
  EXPECT_TRUE(g.indices().empty());
}

TEST(FromEdgeList, DirectedKeepsOneSlotPerEdge) {
  const std::vector<Edge> edges{{0, 1}, {1, 2}};
  const CsrGraph g = CsrGraph::from_edge_list(edges, 3, false);
  EXPECT_EQ(indptr_of(g), (std::vector<EdgeSlot>{0, 1, 2, 2}));
  EXPECT_EQ(indices_of(g), (std::vector<NodeId>{1, 2}));
}

TEST(FromEdgeList, RejectsOutOfRangeEndpointWithIndex) {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {3, 0}};
  try {
    CsrGraph::from_edge_list(edges, 3, true);
    FAIL() << "expected EdgeOutOfRange";
  } catch (const EdgeOutOfRange& e) {
    EXPECT_EQ(e.edge_index(), 2u);
  }
}

TEST(FromEdgeList, KeepsMultiEdgesAndSelfLoops) {
  const std::vector<Edge> edges{{0, 0}, {0, 1}, {1, 0}};
  const CsrGraph g = CsrGraph::from_edge_list(edges, 2, true);
  EXPECT_EQ(g.num_edges(), 6u);
  EXPECT_EQ(g.degree(0), 4u);
  EXPECT_EQ(g.degree(1), 2u);
}

TEST(FromEdgeList, NeighborMultisetsMatchInputAdjacency) {
  CounterRng rng(99);
  const std::size_t n = 300;
  std::vector<Edge> edges(5000);
  for (auto& e : edges) e = {static_cast<NodeId>(rng.uniform(n)), static_cast<NodeId>(rng.uniform(n))};
  for (bool undirected : {false, true}) {
    std::vector<std::multiset<NodeId>> expect(n);
    for (const auto& e : edges) {
      expect[e.src].insert(e.dst);
      if (undirected) expect[e.dst].insert(e.src);
    }
    const CsrGraph g = CsrGraph::from_edge_list(edges, n, undirected);
    for (NodeId v = 0; v < n; ++v) {
      const auto nb = g.neighbors(v);
      EXPECT_EQ(std::multiset<NodeId>(nb.begin(), nb.end()), expect[v]) << "node " << v;
    }
  }
}

TEST(CsrGraph, ConstructorValidatesInvariants) {
  EXPECT_THROW(CsrGraph({1, 1}, {0}), InvalidArgument);
  EXPECT_THROW(CsrGraph({0, 2, 1}, {0, 0}), InvalidArgument);
  EXPECT_THROW(CsrGraph({0, 1}, {0, 0}), InvalidArgument);
  EXPECT_THROW(CsrGraph({0, 1}, {5}), InvalidArgument);
  EXPECT_NO_THROW(CsrGraph({0, 1, 1}, {1}));
}

TEST(DegreeHistogram, Star) {
  std::vector<Edge> edges;
  for (NodeId leaf = 1; leaf <= 5; ++leaf) edges.push_back({0, leaf});
  const DegreeHistogram h = degree_histogram(CsrGraph::from_edge_list(edges, 6, true));
  EXPECT_EQ(h, (DegreeHistogram{{1, 5}, {5, 1}}));
}

TEST(DegreeHistogram, ConservesNodesAndSlots) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const CsrGraph g = synth_graph(2000, 7.5, 2.3, seed);
    std::size_t nodes = 0, slots = 0;
    for (const auto& [d, count] : degree_histogram(g)) {
      nodes += count;
      slots += d * count;
    }
    EXPECT_EQ(nodes, g.num_nodes());
    EXPECT_EQ(slots, g.num_edges());
  }
}

TEST(DegreeHistogram, ProductsShapedMeanDegree) {
  // 2.4M nodes and 62M undirected edges, scaled down 1000x.
  const CsrGraph g = synth_graph(2400, 2.0 * 62000 / 2400, 2.5, 11);
  double weighted = 0;
  for (const auto& [d, count] : degree_histogram(g)) weighted += static_cast<double>(d * count);
  const double mean = weighted / static_cast<double>(g.num_nodes());
  EXPECT_NEAR(mean, 2.0 * 62e6 / 2.4e6, 0.01);
}

TEST(SynthGraph, Deterministic) {
  EXPECT_EQ(synth_graph(1000, 10.0, 2.5, 7), synth_graph(1000, 10.0, 2.5, 7));
  EXPECT_NE(synth_graph(1000, 10.0, 2.5, 7), synth_graph(1000, 10.0, 2.5, 8));
}

TEST(SynthGraph, PairCount) {
  const CsrGraph g = synth_graph(1000, 10.0, 2.5, 7);
  EXPECT_EQ(g.num_edges() / 2, 5000u);
  EXPECT_EQ(g.num_edges() % 2, 0u);
}

TEST(SynthGraph, InfiniteExponentIsNearRegular) {
  const CsrGraph g = synth_graph(1000, 10.0, std::numeric_limits<double>::infinity(), 7);
  EXPECT_LE(static_cast<double>(g.max_degree()), 2.0 * 10.0);
}

TEST(SynthGraph, FiniteExponentIsSkewed) {
  const CsrGraph g = synth_graph(10000, 10.0, 2.1, 7);
  EXPECT_GT(static_cast<double>(g.max_degree()), 10.0 * 10.0);
}

TEST(SynthGraph, RejectsBadParameters) {
  EXPECT_THROW(synth_graph(0, 10.0, 2.5, 1), InvalidArgument);
  EXPECT_THROW(synth_graph(10, -1.0, 2.5, 1), InvalidArgument);
  EXPECT_THROW(synth_graph(10, 1.0, 1.0, 1), InvalidArgument);
  EXPECT_EQ(synth_graph(10, 0.0, 2.5, 1).num_edges(), 0u);
}

TEST(CsrGraph, ChecksumTracksStructure) {
  const CsrGraph a = synth_graph(500, 6.0, 2.5, 1);
  const CsrGraph b = synth_graph(500, 6.0, 2.5, 2);
  EXPECT_EQ(a.checksum(), synth_graph(500, 6.0, 2.5, 1).checksum());
  EXPECT_NE(a.checksum(), b.checksum());
}

}  // namespace
}  // namespace mfgprep
