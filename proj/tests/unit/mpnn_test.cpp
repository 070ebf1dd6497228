#include <gtest/gtest.h>

#include <numeric>

#include "mfgprep/batch.hpp"
#include "mfgprep/error.hpp"
#include "mfgprep/mpnn.hpp"
#include "mfgprep/synth.hpp"

namespace mfgprep {
namespace {

LayerWeights scalar_layer(float self, float neigh) {
  LayerWeights w{Matrix(1, 1, self), Matrix(1, 1, neigh)};
  return w;
}

std::vector<float> local_features(const Mfg& mfg, const FeatureMatrix& x) {
  std::vector<float> out(mfg.id_map.size() * x.cols());
  slice_features(x, mfg.id_map, out);
  return out;
}

TEST(InitWeights, ShapesRangeDeterminism) {
  const auto w = init_weights(8, 16, 3, 42);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[0].out_dim(), 16u);
  EXPECT_EQ(w[0].in_dim(), 8u);
  EXPECT_EQ(w[1].in_dim(), 16u);
  EXPECT_EQ(w[2].w_neigh.rows, 16u);
  EXPECT_EQ(w[2].w_neigh.cols, 16u);
  for (const auto& l : w) {
    for (float v : l.w_self.data) {
      EXPECT_GE(v, -0.1f);
      EXPECT_LE(v, 0.1f);
    }
  }
  const auto again = init_weights(8, 16, 3, 42);
  EXPECT_EQ(w[1].w_self, again[1].w_self);
  EXPECT_EQ(w[2].w_neigh, again[2].w_neigh);
  EXPECT_NE(w[0].w_self, init_weights(8, 16, 3, 43)[0].w_self);
  EXPECT_NE(w[0].w_self, w[0].w_neigh);
}

TEST(MfgForward, PathArithmetic) {
  const CsrGraph g = CsrGraph::from_edge_list(std::vector<Edge>{{0, 1}, {1, 2}}, 3, true);
  const FeatureMatrix x = FeatureMatrix::from_f32(3, 1, {10, 11, 12});
  const Mfg mfg = multihop_mfg(g, SeedBatch{0, {1}}, FanoutSpec{{2}}, 0, kFastVariant);
  const std::vector<LayerWeights> w{scalar_layer(2, 3)};
  const Matrix out = mfg_forward(mfg, local_features(mfg, x), 1, w);
  ASSERT_EQ(out.rows, 1u);
  EXPECT_FLOAT_EQ(out(0, 0), 2 * 11 + 3 * 11);  // mean of {10, 12} is 11

  const FeatureMatrix x2 = FeatureMatrix::from_f32(3, 1, {1, 0, 3});
  EXPECT_FLOAT_EQ(mfg_forward(mfg, local_features(mfg, x2), 1, std::vector<LayerWeights>{scalar_layer(0, 1)})(0, 0),
                  2.0f);
}

TEST(MfgForward, IsolatedNodeKeepsSelfTerm) {
  const CsrGraph g = CsrGraph::from_edge_list(std::vector<Edge>{{0, 1}}, 3, true);
  const FeatureMatrix x = FeatureMatrix::from_f32(3, 2, {1, 2, 3, 4, 5, 6});
  const Mfg mfg = multihop_mfg(g, SeedBatch{0, {2}}, FanoutSpec{{4, 4}}, 0, kFastVariant);
  const std::vector<LayerWeights> w{{Matrix::identity(2), Matrix(2, 2, 7.0f)},
                                    {Matrix::identity(2), Matrix(2, 2, 7.0f)}};
  const Matrix out = mfg_forward(mfg, local_features(mfg, x), 2, w);
  EXPECT_EQ(out.row(0)[0], 5.0f);
  EXPECT_EQ(out.row(0)[1], 6.0f);
}

TEST(MfgForward, ZeroWeightsGiveZero) {
  const CsrGraph g = synth_graph(500, 6.0, 2.5, 1);
  const FeatureMatrix x = generate_features(500, 4, Dtype::f32, 1);
  const Mfg mfg = multihop_mfg(g, SeedBatch{0, {1, 2, 3}}, FanoutSpec{{3, 3}}, 1, kFastVariant);
  std::vector<LayerWeights> w = init_weights(4, 5, 2, 1);
  for (auto& l : w) {
    std::fill(l.w_self.data.begin(), l.w_self.data.end(), 0.0f);
    std::fill(l.w_neigh.data.begin(), l.w_neigh.data.end(), 0.0f);
  }
  const Matrix out = mfg_forward(mfg, local_features(mfg, x), 4, w);
  EXPECT_EQ(out.rows, 3u);
  EXPECT_EQ(out.cols, 5u);
  for (float v : out.data) EXPECT_EQ(v, 0.0f);
}

TEST(MfgForward, TakeAllMatchesFullNeighborhood) {
  const CsrGraph g = synth_graph(800, 5.0, 3.0, 2);
  std::uint32_t max_deg = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) max_deg = std::max(max_deg, static_cast<std::uint32_t>(g.degree(v)));
  const FeatureMatrix x = generate_features(800, 6, Dtype::f32, 2);
  const SeedBatch seeds{0, {5, 50, 500, 7}};
  const Mfg mfg = multihop_mfg(g, seeds, FanoutSpec{{max_deg, max_deg}}, 2, kBaselineVariant);
  const auto w = init_weights(6, 8, 2, 2);
  const Matrix sampled = mfg_forward(mfg, local_features(mfg, x), 6, w);
  const Matrix full = full_forward(g, x, w, seeds.dst_ids);
  EXPECT_LE(max_abs_diff(sampled, full), 1e-5f);
  EXPECT_LE(max_abs_diff(sampled, sampled_reference_forward(g, mfg, x, w)), 1e-6f);
}

TEST(MfgForward, PreparedBatchOverload) {
  const CsrGraph g = synth_graph(400, 6.0, 2.5, 3);
  const FeatureMatrix x = generate_features(400, 3, Dtype::f16, 3);
  const LabelVector y = generate_labels(400, 2, 3);
  const PreparedBatch b = prepare_batch(g, x, y, SeedBatch{0, {1, 9}}, FanoutSpec{{4, 4}}, kFastVariant, 3);
  const auto w = init_weights(3, 4, 2, 3);
  EXPECT_EQ(mfg_forward(b, w), mfg_forward(b.mfg, b.features.data(), 3, w));
}

TEST(FullForward, PermutationEquivariant) {
  const CsrGraph g = synth_graph(300, 6.0, 2.5, 5);
  const FeatureMatrix x = generate_features(300, 4, Dtype::f32, 5);
  std::vector<NodeId> perm(300);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  std::reverse(perm.begin(), perm.end());
  std::vector<Edge> edges;
  for (NodeId v = 0; v < 300; ++v) {
    for (NodeId u : g.neighbors(v)) edges.push_back({perm[v], perm[u]});
  }
  const CsrGraph pg = CsrGraph::from_edge_list(edges, 300, false);
  std::vector<float> px(300 * 4);
  for (NodeId v = 0; v < 300; ++v) {
    for (std::size_t c = 0; c < 4; ++c) px[perm[v] * 4 + c] = x.at(v, c);
  }
  const FeatureMatrix pxm = FeatureMatrix::from_f32(300, 4, px);
  const auto w = init_weights(4, 6, 2, 5);
  const std::vector<NodeId> dst{3, 100, 299};
  std::vector<NodeId> pdst;
  for (NodeId v : dst) pdst.push_back(perm[v]);
  EXPECT_LE(max_abs_diff(full_forward(g, x, w, dst), full_forward(pg, pxm, w, pdst)), 1e-5f);
}

TEST(MfgForward, RejectsMismatches) {
  const CsrGraph g = synth_graph(100, 4.0, 2.5, 1);
  const FeatureMatrix x = generate_features(100, 4, Dtype::f32, 1);
  const Mfg mfg = multihop_mfg(g, SeedBatch{0, {1}}, FanoutSpec{{3, 3}}, 1, kFastVariant);
  const auto feats = local_features(mfg, x);
  EXPECT_THROW(mfg_forward(mfg, feats, 4, init_weights(4, 4, 1, 1)), InvalidArgument);
  EXPECT_THROW(mfg_forward(mfg, feats, 4, init_weights(5, 4, 2, 1)), InvalidArgument);
  EXPECT_THROW(mfg_forward(mfg, feats, 4, std::vector<LayerWeights>{}), InvalidArgument);
  EXPECT_THROW(full_forward(g, x, std::vector<LayerWeights>{}, std::vector<NodeId>{1}), InvalidArgument);
}

}  // namespace
}  // namespace mfgprep
