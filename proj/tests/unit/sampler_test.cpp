#include <gtest/gtest.h>

#include <set>

#include "mfgprep/error.hpp"
#include "mfgprep/sampler.hpp"
#include "mfgprep/synth.hpp"
#include "mfgprep/validation/oracles.hpp"

namespace mfgprep {
namespace {

CsrGraph star_plus_path() {
  // Node 7 has neighbors {2, 9}; node 5 is isolated.
  const std::vector<Edge> edges{{7, 2}, {7, 9}, {2, 3}, {0, 1}};
  return CsrGraph::from_edge_list(edges, 10, false);
}

TEST(FanoutSpec, ParseAndPrint) {
  EXPECT_EQ(FanoutSpec::parse("15,10,5").per_hop, (std::vector<std::uint32_t>{15, 10, 5}));
  EXPECT_EQ(FanoutSpec::parse("15,10,5").to_string(), "15,10,5");
  EXPECT_THROW(FanoutSpec::parse(""), InvalidArgument);
  EXPECT_THROW(FanoutSpec::parse("15,,5"), InvalidArgument);
  EXPECT_THROW(FanoutSpec::parse("15,0"), InvalidArgument);
  EXPECT_THROW(FanoutSpec::parse("a"), InvalidArgument);
}

TEST(SampleNeighbors, TakeAllConsumesNoRandomness) {
  const CsrGraph g = synth_graph(200, 5.0, 2.5, 1);
  NodeId v = 0;
  while (g.degree(v) == 0 || g.degree(v) > 5) ++v;
  CounterRng rng(1);
  const auto slots = sample_neighbors(g, v, 5, rng);
  ASSERT_EQ(slots.size(), g.degree(v));
  for (std::size_t k = 0; k < slots.size(); ++k) EXPECT_EQ(slots[k], g.row_begin(v) + k);
  EXPECT_EQ(rng.draws(), 0u);
}

TEST(SampleNeighbors, ZeroFanoutIsEmpty) {
  const CsrGraph g = synth_graph(200, 5.0, 2.5, 1);
  CounterRng rng(1);
  EXPECT_TRUE(sample_neighbors(g, 0, 0, rng).empty());
}

TEST(SampleNeighbors, RejectionStreamMatchesScalarOracle) {
  // One node with ten slots.
  std::vector<Edge> edges;
  for (NodeId u = 1; u <= 10; ++u) edges.push_back({0, u});
  const CsrGraph g = CsrGraph::from_edge_list(edges, 11, false);
  for (SetImpl set : {SetImpl::hash_set, SetImpl::vector_set, SetImpl::bit_set}) {
    CounterRng a(42), b(42);
    const auto got = sample_neighbors(g, 0, 3, a, set);
    EXPECT_EQ(got, validation::reference_sample(g, 0, 3, b));
    EXPECT_EQ(got.size(), 3u);
    EXPECT_EQ(std::set<EdgeSlot>(got.begin(), got.end()).size(), 3u);
    EXPECT_EQ(a.draws(), b.draws());
  }
}

TEST(SampleNeighbors, RejectsUnknownNode) {
  const CsrGraph g = star_plus_path();
  CounterRng rng(1);
  EXPECT_THROW(sample_neighbors(g, 10, 2, rng), InvalidArgument);
}

TEST(OneHopMfg, TinyTakeAll) {
  const CsrGraph g = star_plus_path();
  IdMap map(MapImpl::flat_probing);
  map.insert(7);
  const MfgLayer layer = one_hop_mfg(g, map, 1, 5, HopKey{0, 0, 0}, kFastVariant);
  EXPECT_EQ(std::vector<NodeId>(map.globals().begin(), map.globals().end()), (std::vector<NodeId>{7, 2, 9}));
  EXPECT_EQ(layer.num_dst, 1u);
  EXPECT_EQ(layer.num_src, 3u);
  EXPECT_EQ(layer.indptr, (std::vector<std::uint64_t>{0, 2}));
  EXPECT_EQ(layer.src_local, (std::vector<LocalId>{1, 2}));
}

TEST(OneHopMfg, IsolatedDestinationHasNoEdges) {
  const CsrGraph g = star_plus_path();
  IdMap map(MapImpl::std_hash);
  map.insert(5);
  map.insert(7);
  const MfgLayer layer = one_hop_mfg(g, map, 2, 5, HopKey{0, 0, 0}, kBaselineVariant);
  EXPECT_EQ(layer.in_degree(0), 0u);
  EXPECT_EQ(layer.in_degree(1), 2u);
  EXPECT_EQ(layer.num_src, 4u);
}

TEST(OneHopMfg, AllVariantsAgree) {
  const CsrGraph g = synth_graph(10000, 12.0, 2.2, 3);
  const auto variants = list_variants();
  std::vector<NodeId> dst;
  for (NodeId v = 0; v < 500; ++v) dst.push_back(v * 19 % 10000);
  MfgLayer ref;
  std::vector<NodeId> ref_globals;
  for (std::size_t i = 0; i < variants.size(); ++i) {
    IdMap map(variants[i].map, variants[i].map == MapImpl::flat_probing_with_size_hint ? 5000 : 0);
    for (NodeId v : dst) map.insert(v);
    const MfgLayer layer = one_hop_mfg(g, map, dst.size(), 10, HopKey{9, 4, 1}, variants[i]);
    const std::vector<NodeId> globals(map.globals().begin(), map.globals().end());
    if (i == 0) {
      ref = layer;
      ref_globals = globals;
    } else {
      EXPECT_EQ(layer, ref) << variants[i].descriptor();
      EXPECT_EQ(globals, ref_globals) << variants[i].descriptor();
    }
  }
}

TEST(OneHopMfg, RequiresDestinationsInMap) {
  const CsrGraph g = star_plus_path();
  IdMap map;
  EXPECT_THROW(one_hop_mfg(g, map, 1, 5, HopKey{}, kFastVariant), InvalidArgument);
}

TEST(MultihopMfg, DefaultFanoutsProduceValidThreeLayerMfg) {
  const CsrGraph g = synth_graph(20000, 15.0, 2.3, 5);
  SeedBatch seeds{3, {}};
  for (NodeId v = 0; v < 1024; ++v) seeds.dst_ids.push_back(v * 7);
  const FanoutSpec fanouts{{15, 10, 5}};
  const Mfg mfg = multihop_mfg(g, seeds, fanouts, 1, kFastVariant);
  ASSERT_EQ(mfg.layers.size(), 3u);
  EXPECT_EQ(mfg.layers.back().num_dst, 1024u);
  EXPECT_EQ(mfg.layers.front().num_src, mfg.num_nodes());
  EXPECT_TRUE(validation::mfg_violations(g, mfg, fanouts).empty());
  for (std::size_t i = 0; i + 1 < mfg.layers.size(); ++i) {
    EXPECT_GE(mfg.layers[i].num_src, mfg.layers[i].num_dst);
    EXPECT_EQ(mfg.layers[i].num_dst, mfg.layers[i + 1].num_src);
  }
}

TEST(MultihopMfg, SingleHopEqualsOneHop) {
  const CsrGraph g = synth_graph(3000, 8.0, 2.5, 2);
  const SeedBatch seeds{6, {4, 8, 15, 16, 23, 42}};
  const Mfg mfg = multihop_mfg(g, seeds, FanoutSpec{{4}}, 77, kFastVariant);
  IdMap map;
  for (NodeId v : seeds.dst_ids) map.insert(v);
  const MfgLayer layer = one_hop_mfg(g, map, seeds.dst_ids.size(), 4, HopKey{77, 6, 0}, kFastVariant);
  ASSERT_EQ(mfg.layers.size(), 1u);
  EXPECT_EQ(mfg.layers[0], layer);
  EXPECT_EQ(mfg.id_map, map);
}

TEST(MultihopMfg, UnboundedFanoutMatchesBfs) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const CsrGraph g = synth_graph(2000, 4.0, 2.5, seed);
    const SeedBatch seeds{0, {1, 10, 100, 1000}};
    const auto d = static_cast<std::uint32_t>(g.max_degree());
    const Mfg mfg = multihop_mfg(g, seeds, FanoutSpec{{d, d, d}}, seed, kBaselineVariant);
    EXPECT_EQ(validation::mfg_source_sets(mfg), validation::bfs_hops(g, seeds.dst_ids, 3));
  }
}

TEST(MultihopMfg, DeterministicAndSeedSensitive) {
  const CsrGraph g = synth_graph(5000, 20.0, 2.2, 1);
  const SeedBatch seeds{0, {1, 2, 3, 4, 5, 6, 7, 8}};
  const FanoutSpec f{{15, 10, 5}};
  EXPECT_EQ(multihop_mfg(g, seeds, f, 1, kFastVariant), multihop_mfg(g, seeds, f, 1, kFastVariant));
  EXPECT_NE(digest(multihop_mfg(g, seeds, f, 1, kFastVariant)),
            digest(multihop_mfg(g, seeds, f, 2, kFastVariant)));
}

TEST(MultihopMfg, RejectsBadSeeds) {
  const CsrGraph g = synth_graph(100, 4.0, 2.5, 1);
  EXPECT_THROW(multihop_mfg(g, SeedBatch{0, {1, 1}}, FanoutSpec{{2}}, 0, kFastVariant), InvalidArgument);
  EXPECT_THROW(multihop_mfg(g, SeedBatch{0, {100}}, FanoutSpec{{2}}, 0, kFastVariant), InvalidArgument);
  EXPECT_THROW(multihop_mfg(g, SeedBatch{0, {1}}, FanoutSpec{}, 0, kFastVariant), InvalidArgument);
}

TEST(Variants, EnumerationIsStable) {
  const auto variants = list_variants();
  ASSERT_EQ(variants.size(), 18u);
  std::set<std::string> names;
  for (const auto& v : variants) {
    names.insert(v.descriptor());
    EXPECT_EQ(parse_variant(v.descriptor()), v);
  }
  EXPECT_EQ(names.size(), 18u);
  EXPECT_TRUE(names.contains("flat_probing/vector_set/fused"));
  EXPECT_EQ(variants.front().descriptor(), "std_hash/hash_set/fused");
  EXPECT_EQ(kBaselineVariant.descriptor(), "std_hash/hash_set/twopass");
  EXPECT_THROW(parse_variant("flat_probing/vector_set"), InvalidArgument);
  EXPECT_THROW(parse_variant("flat/vector_set/fused"), InvalidArgument);
}

TEST(IdMap, CompactAndDestinationFirst) {
  for (MapImpl impl : {MapImpl::std_hash, MapImpl::flat_probing, MapImpl::flat_probing_with_size_hint}) {
    IdMap map(impl, 4);
    EXPECT_EQ(map.insert(50), 0u);
    EXPECT_EQ(map.insert(7), 1u);
    EXPECT_EQ(map.insert(50), 0u);
    for (NodeId v = 100; v < 1100; ++v) map.insert(v);
    EXPECT_EQ(map.size(), 1002u);
    for (LocalId l = 0; l < map.size(); ++l) EXPECT_EQ(map.find(map.global(l)), l);
    EXPECT_FALSE(map.find(3).has_value());
  }
}

TEST(FlatIdTable, GrowsAndFinds) {
  FlatIdTable t;
  for (NodeId k = 0; k < 10000; ++k) EXPECT_TRUE(t.try_emplace(k * 2654435761u, k).second);
  EXPECT_EQ(t.size(), 10000u);
  EXPECT_LE(t.size() * 8, t.capacity() * 5);
  for (NodeId k = 0; k < 10000; ++k) EXPECT_EQ(t.find(k * 2654435761u), k);
  EXPECT_FALSE(t.try_emplace(0, 5).second);
}

TEST(SizeHint, CappedEstimate) {
  EXPECT_EQ(estimate_mfg_size(1024, FanoutSpec{{15, 10, 5}}, 1u << 30), 1024u * 31);
  EXPECT_EQ(estimate_mfg_size(1024, FanoutSpec{{15, 10, 5}}, 5000), 5000u);
}

}  // namespace
}  // namespace mfgprep
