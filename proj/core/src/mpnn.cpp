#include "mfgprep/mpnn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "mfgprep/error.hpp"
#include "mfgprep/rng.hpp"

namespace mfgprep {
namespace {

void check_chain(std::span<const LayerWeights> weights, std::size_t in_dim) {
  if (weights.empty()) throw InvalidArgument("at least one layer is required");
  for (const auto& w : weights) {
    if (w.w_neigh.rows != w.w_self.rows || w.w_neigh.cols != w.w_self.cols) {
      throw InvalidArgument("w_self and w_neigh shapes differ");
    }
    if (w.in_dim() != in_dim) {
      throw InvalidArgument("layer expects input dim " + std::to_string(w.in_dim()) + ", got " +
                            std::to_string(in_dim));
    }
    in_dim = w.out_dim();
  }
}

/// out = w_self * self + w_neigh * mean; `sum` holds the neighbor sum.
void apply_layer(const LayerWeights& w, std::span<const float> self, std::span<const float> sum,
                 std::size_t count, std::span<float> out) {
  const float inv = count == 0 ? 0.0f : 1.0f / static_cast<float>(count);
  for (std::size_t r = 0; r < w.out_dim(); ++r) {
    float a = 0.0f;
    float b = 0.0f;
    for (std::size_t c = 0; c < w.in_dim(); ++c) {
      a += w.w_self(r, c) * self[c];
      b += w.w_neigh(r, c) * (sum[c] * inv);
    }
    out[r] = a + b;
  }
}

void accumulate(std::span<float> sum, std::span<const float> v) {
  for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += v[c];
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0f;
  return m;
}

std::vector<LayerWeights> init_weights(std::size_t f_in, std::size_t f_hidden, std::size_t num_layers,
                                       std::uint64_t seed) {
  std::vector<LayerWeights> out;
  std::size_t in = f_in;
  for (std::size_t l = 0; l < num_layers; ++l) {
    LayerWeights w{Matrix(f_hidden, in), Matrix(f_hidden, in)};
    CounterRng rs(derive_key(seed, 0x57454947, l, 0));
    CounterRng rn(derive_key(seed, 0x57454947, l, 1));
    for (float& v : w.w_self.data) v = static_cast<float>(rs.uniform_real() * 0.2 - 0.1);
    for (float& v : w.w_neigh.data) v = static_cast<float>(rn.uniform_real() * 0.2 - 0.1);
    out.push_back(std::move(w));
    in = f_hidden;
  }
  return out;
}

Matrix mfg_forward(const Mfg& mfg, std::span<const float> features, std::size_t dim,
                   std::span<const LayerWeights> weights) {
  if (weights.size() != mfg.layers.size()) {
    throw InvalidArgument("got " + std::to_string(weights.size()) + " weight layers for " +
                          std::to_string(mfg.layers.size()) + " MFG layers");
  }
  check_chain(weights, dim);
  if (dim == 0 || features.size() % dim != 0 || features.size() / dim < mfg.num_nodes()) {
    throw InvalidArgument("feature buffer does not cover the MFG nodes");
  }

  Matrix h(features.size() / dim, dim);
  std::copy(features.begin(), features.end(), h.data.begin());
  for (std::size_t l = 0; l < mfg.layers.size(); ++l) {
    const MfgLayer& layer = mfg.layers[l];
    const LayerWeights& w = weights[l];
    if (layer.num_src > h.rows) throw InvalidArgument("layer sources exceed the embedding rows");
    Matrix next(layer.num_dst, w.out_dim());
    std::vector<float> sum(h.cols);
    for (std::size_t d = 0; d < layer.num_dst; ++d) {
      std::fill(sum.begin(), sum.end(), 0.0f);
      for (std::uint64_t e = layer.indptr[d]; e < layer.indptr[d + 1]; ++e) {
        accumulate(sum, h.row(layer.src_local[e]));
      }
      apply_layer(w, h.row(d), sum, layer.in_degree(d), next.row(d));
    }
    h = std::move(next);
  }
  return h;
}

Matrix mfg_forward(const PreparedBatch& batch, std::span<const LayerWeights> weights) {
  return mfg_forward(batch.mfg, batch.features.data(), batch.feature_dim, weights);
}

Matrix full_forward(const CsrGraph& g, const FeatureMatrix& x, std::span<const LayerWeights> weights,
                    std::span<const NodeId> dst) {
  check_chain(weights, x.cols());
  const std::size_t num_layers = weights.size();

  // needed[l] = nodes whose layer-l embedding is required.
  std::vector<std::vector<NodeId>> needed(num_layers + 1);
  needed[num_layers].assign(dst.begin(), dst.end());
  for (std::size_t l = num_layers; l > 0; --l) {
    std::vector<char> seen(g.num_nodes(), 0);
    for (NodeId v : needed[l]) {
      if (v >= g.num_nodes()) throw InvalidArgument("destination out of range");
      if (!seen[v]) needed[l - 1].push_back(v), seen[v] = 1;
      for (NodeId u : g.neighbors(v)) {
        if (!seen[u]) needed[l - 1].push_back(u), seen[u] = 1;
      }
    }
  }

  std::unordered_map<NodeId, std::vector<float>> prev;
  for (NodeId v : needed[0]) {
    std::vector<float> row(x.cols());
    x.copy_row(v, row);
    prev.emplace(v, std::move(row));
  }
  for (std::size_t l = 1; l <= num_layers; ++l) {
    const LayerWeights& w = weights[l - 1];
    std::unordered_map<NodeId, std::vector<float>> cur;
    std::vector<float> sum(w.in_dim());
    for (NodeId v : needed[l]) {
      if (cur.contains(v)) continue;
      std::fill(sum.begin(), sum.end(), 0.0f);
      const auto nbrs = g.neighbors(v);
      for (NodeId u : nbrs) accumulate(sum, prev.at(u));
      std::vector<float> out(w.out_dim());
      apply_layer(w, prev.at(v), sum, nbrs.size(), out);
      cur.emplace(v, std::move(out));
    }
    prev = std::move(cur);
  }

  Matrix result(dst.size(), weights.back().out_dim());
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const auto& row = prev.at(dst[i]);
    std::copy(row.begin(), row.end(), result.row(i).begin());
  }
  return result;
}

Matrix sampled_reference_forward(const CsrGraph& g, const Mfg& mfg, const FeatureMatrix& x,
                                 std::span<const LayerWeights> weights) {
  if (weights.size() != mfg.layers.size()) throw InvalidArgument("weight/layer count mismatch");
  check_chain(weights, x.cols());

  const auto global_row = [&](NodeId v) {
    std::vector<float> row(x.cols());
    x.copy_row(v, row);
    return row;
  };
  std::unordered_map<NodeId, std::vector<float>> prev;
  bool first = true;
  for (std::size_t l = 0; l < mfg.layers.size(); ++l) {
    const MfgLayer& layer = mfg.layers[l];
    const LayerWeights& w = weights[l];
    const auto input = [&](NodeId v) { return first ? global_row(v) : prev.at(v); };
    std::unordered_map<NodeId, std::vector<float>> cur;
    std::vector<float> sum(w.in_dim());
    for (std::size_t d = 0; d < layer.num_dst; ++d) {
      const NodeId v = mfg.id_map.global(static_cast<LocalId>(d));
      std::fill(sum.begin(), sum.end(), 0.0f);
      for (std::uint64_t e = layer.indptr[d]; e < layer.indptr[d + 1]; ++e) {
        accumulate(sum, input(g.indices()[layer.edge_slots[e]]));
      }
      std::vector<float> out(w.out_dim());
      apply_layer(w, input(v), sum, layer.in_degree(d), out);
      cur.emplace(v, std::move(out));
    }
    prev = std::move(cur);
    first = false;
  }

  Matrix result(mfg.seeds.dst_ids.size(), weights.back().out_dim());
  for (std::size_t i = 0; i < mfg.seeds.dst_ids.size(); ++i) {
    const auto& row = prev.at(mfg.seeds.dst_ids[i]);
    std::copy(row.begin(), row.end(), result.row(i).begin());
  }
  return result;
}

float max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) return std::numeric_limits<float>::infinity();
  float m = 0.0f;
  for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

}  // namespace mfgprep
