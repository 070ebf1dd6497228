#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mfgprep/batch.hpp"
#include "mfgprep/csr_graph.hpp"
#include "mfgprep/features.hpp"
#include "mfgprep/sampler.hpp"

namespace mfgprep {

/// Dense row-major f32 matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<float> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, float fill = 0.0f) : rows(r), cols(c), data(r * c, fill) {}

  float& operator()(std::size_t r, std::size_t c) noexcept { return data[r * cols + c]; }
  float operator()(std::size_t r, std::size_t c) const noexcept { return data[r * cols + c]; }
  std::span<const float> row(std::size_t r) const noexcept {
    return std::span<const float>(data).subspan(r * cols, cols);
  }
  std::span<float> row(std::size_t r) noexcept { return std::span<float>(data).subspan(r * cols, cols); }

  static Matrix identity(std::size_t n);

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

/// One mean-aggregation layer: h' = w_self * h + w_neigh * mean(h of in-neighbors).
struct LayerWeights {
  Matrix w_self;   ///< f_out x f_in
  Matrix w_neigh;  ///< f_out x f_in

  std::size_t in_dim() const noexcept { return w_self.cols; }
  std::size_t out_dim() const noexcept { return w_self.rows; }
};

/// L layers, input f_in, every output f_hidden; entries uniform in [-0.1, 0.1].
std::vector<LayerWeights> init_weights(std::size_t f_in, std::size_t f_hidden, std::size_t num_layers,
                                       std::uint64_t seed);

/// Forward pass over the MFG with features ordered by local ID (`dim` floats
/// per row, at least id_map.size() rows). Returns one row per seed.
Matrix mfg_forward(const Mfg& mfg, std::span<const float> features, std::size_t dim,
                   std::span<const LayerWeights> weights);
Matrix mfg_forward(const PreparedBatch& batch, std::span<const LayerWeights> weights);

/// Forward pass over full neighborhoods of `dst`, indexing X by global ID.
Matrix full_forward(const CsrGraph& g, const FeatureMatrix& x, std::span<const LayerWeights> weights,
                    std::span<const NodeId> dst);

/// Same layer rule as mfg_forward but evaluated over global IDs: neighbors are
/// read from the graph through each edge's slot, features straight from X.
Matrix sampled_reference_forward(const CsrGraph& g, const Mfg& mfg, const FeatureMatrix& x,
                                 std::span<const LayerWeights> weights);

float max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace mfgprep
