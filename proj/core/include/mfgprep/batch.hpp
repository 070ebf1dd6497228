#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mfgprep/csr_graph.hpp"
#include "mfgprep/features.hpp"
#include "mfgprep/sampler.hpp"

namespace mfgprep {

/// Default mini-batch size.
inline constexpr std::size_t kDefaultBatchSize = 1024;

/// Seed batches of one epoch in delivery order; batch_id equals position.
struct EpochPlan {
  std::vector<SeedBatch> batches;
  std::size_t batch_size = kDefaultBatchSize;
  std::uint64_t shuffle_seed = 0;

  std::size_t size() const noexcept { return batches.size(); }
};

/// Shuffles train_ids with a seeded Fisher-Yates pass and chunks the result
/// into batches of batch_size (the last may be short).
EpochPlan make_epoch_plan(std::span<const NodeId> train_ids, std::size_t batch_size,
                          std::uint64_t shuffle_seed);

namespace detail {
struct PoolState;
void release_buffer(PoolState& pool, std::vector<float>&& storage) noexcept;
}  // namespace detail

/// Reusable f32 staging buffer, standing in for pinned host memory. A
/// buffer leased from a BufferPool goes back to it on destruction.
class FeatureBuffer {
 public:
  FeatureBuffer() = default;
  FeatureBuffer(std::vector<float> storage, std::shared_ptr<detail::PoolState> home)
      : storage_(std::move(storage)), home_(std::move(home)) {}
  FeatureBuffer(FeatureBuffer&&) noexcept = default;
  FeatureBuffer& operator=(FeatureBuffer&& other) noexcept {
    if (this != &other) {
      give_back();
      storage_ = std::move(other.storage_);
      home_ = std::move(other.home_);
    }
    return *this;
  }
  ~FeatureBuffer() { give_back(); }

  /// Sets the logical size, reusing existing capacity when possible.
  void resize(std::size_t count) { storage_.resize(count); }
  std::span<float> data() noexcept { return storage_; }
  std::span<const float> data() const noexcept { return storage_; }
  std::size_t size() const noexcept { return storage_.size(); }
  std::size_t capacity() const noexcept { return storage_.capacity(); }

  /// Keeps the data but returns the lease, so the pool can hand out a
  /// fresh buffer. Used when a consumer retains batches indefinitely.
  void detach() noexcept {
    if (home_) detail::release_buffer(*home_, {});
    home_.reset();
  }
  bool pooled() const noexcept { return home_ != nullptr; }

 private:
  void give_back() noexcept {
    if (home_) detail::release_buffer(*home_, std::move(storage_));
    home_.reset();
  }

  std::vector<float> storage_;
  std::shared_ptr<detail::PoolState> home_;
};

/// Fixed number of reusable buffers. acquire() blocks while all are leased.
class BufferPool {
 public:
  explicit BufferPool(std::size_t capacity);

  /// Throws PrepError once the pool has been shut down.
  FeatureBuffer acquire();
  /// Wakes blocked acquirers; later acquires fail. Outstanding leases stay valid.
  void shutdown();

  std::size_t capacity() const noexcept;
  std::size_t in_use() const;
  std::size_t peak_in_use() const;

 private:
  std::shared_ptr<detail::PoolState> state_;
};

/// Gathers feature rows `globals` (in order) into out as f32. Serial; no
/// allocation. Throws CapacityError if out is smaller than
/// globals.size() * fm.cols().
void slice_features(const FeatureMatrix& fm, std::span<const NodeId> globals, std::span<float> out);
inline void slice_features(const FeatureMatrix& fm, const IdMap& id_map, std::span<float> out) {
  slice_features(fm, id_map.globals(), out);
}

/// Labels of the seed nodes in destination order.
std::vector<std::uint32_t> slice_labels(const LabelVector& y, const SeedBatch& seeds);

struct BatchStats {
  std::size_t num_nodes = 0;
  std::vector<std::size_t> edges_per_layer;  ///< same order as Mfg::layers
  std::size_t num_edges = 0;
};

/// An MFG with its sliced features and labels, ready for transfer.
///
/// features row i is FeatureMatrix row mfg.id_map.global(i) as f32;
/// labels[j] is y[mfg.seeds.dst_ids[j]].
struct PreparedBatch {
  Mfg mfg;
  FeatureBuffer features;
  std::size_t feature_dim = 0;
  std::vector<std::uint32_t> labels;
  std::uint64_t byte_size = 0;
  BatchStats stats;

  std::span<const float> feature_row(std::size_t local) const noexcept {
    return features.data().subspan(local * feature_dim, feature_dim);
  }
};

/// Bytes moved to the device for a batch: f32 features, u32 labels, and
/// the edge index as int64 (src, dst) pairs.
std::uint64_t payload_bytes(std::size_t num_nodes, std::size_t feature_dim, std::size_t num_labels,
                            std::size_t num_edges) noexcept;

/// Sampling followed by serial slicing into `buffer`.
PreparedBatch prepare_batch(const CsrGraph& g, const FeatureMatrix& fm, const LabelVector& y,
                            const SeedBatch& seeds, const FanoutSpec& fanouts,
                            const SamplerVariant& variant, std::uint64_t global_seed,
                            FeatureBuffer buffer = {});

/// Slices an already sampled MFG into `buffer`.
PreparedBatch slice_batch(Mfg mfg, const FeatureMatrix& fm, const LabelVector& y,
                          FeatureBuffer buffer = {});

}  // namespace mfgprep
