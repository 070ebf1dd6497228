#include "mfgprep/batch.hpp"

#include <algorithm>
#include <condition_variable>
#include <mutex>
#include <string>

#include "mfgprep/error.hpp"
#include "mfgprep/rng.hpp"

namespace mfgprep {

namespace detail {

struct PoolState {
  explicit PoolState(std::size_t n) : capacity(n) { free.resize(n); }

  std::size_t capacity;
  mutable std::mutex mutex;
  std::condition_variable available;
  std::vector<std::vector<float>> free;
  std::size_t in_use = 0;
  std::size_t peak = 0;
  bool closed = false;
};

void release_buffer(PoolState& pool, std::vector<float>&& storage) noexcept {
  {
    std::lock_guard lock(pool.mutex);
    storage.clear();
    pool.free.push_back(std::move(storage));
    --pool.in_use;
  }
  pool.available.notify_one();
}

}  // namespace detail

EpochPlan make_epoch_plan(std::span<const NodeId> train_ids, std::size_t batch_size,
                          std::uint64_t shuffle_seed) {
  if (batch_size == 0) throw InvalidArgument("batch_size must be at least 1");
  std::vector<NodeId> order(train_ids.begin(), train_ids.end());
  CounterRng rng(derive_key(shuffle_seed, 0x504C414Eu));
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.uniform(i)]);

  EpochPlan plan;
  plan.batch_size = batch_size;
  plan.shuffle_seed = shuffle_seed;
  for (std::size_t start = 0; start < order.size(); start += batch_size) {
    const std::size_t end = std::min(order.size(), start + batch_size);
    plan.batches.push_back(
        {plan.batches.size(), std::vector<NodeId>(order.begin() + start, order.begin() + end)});
  }
  return plan;
}

BufferPool::BufferPool(std::size_t capacity)
    : state_(std::make_shared<detail::PoolState>(capacity == 0 ? 1 : capacity)) {}

FeatureBuffer BufferPool::acquire() {
  std::unique_lock lock(state_->mutex);
  state_->available.wait(lock, [&] { return state_->closed || !state_->free.empty(); });
  if (state_->closed) throw PrepError("buffer pool shut down");
  std::vector<float> storage = std::move(state_->free.back());
  state_->free.pop_back();
  ++state_->in_use;
  state_->peak = std::max(state_->peak, state_->in_use);
  return FeatureBuffer(std::move(storage), state_);
}

void BufferPool::shutdown() {
  {
    std::lock_guard lock(state_->mutex);
    state_->closed = true;
  }
  state_->available.notify_all();
}

std::size_t BufferPool::capacity() const noexcept { return state_->capacity; }

std::size_t BufferPool::in_use() const {
  std::lock_guard lock(state_->mutex);
  return state_->in_use;
}

std::size_t BufferPool::peak_in_use() const {
  std::lock_guard lock(state_->mutex);
  return state_->peak;
}

void slice_features(const FeatureMatrix& fm, std::span<const NodeId> globals, std::span<float> out) {
  const std::size_t f = fm.cols();
  const std::size_t needed = globals.size() * f;
  if (out.size() < needed) {
    throw CapacityError("slice_features: buffer holds " + std::to_string(out.size()) +
                        " floats, need " + std::to_string(needed));
  }
  for (std::size_t i = 0; i < globals.size(); ++i) {
    fm.copy_row(globals[i], out.subspan(i * f, f));
  }
}

std::vector<std::uint32_t> slice_labels(const LabelVector& y, const SeedBatch& seeds) {
  std::vector<std::uint32_t> out(seeds.dst_ids.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = y[seeds.dst_ids[j]];
  return out;
}

std::uint64_t payload_bytes(std::size_t num_nodes, std::size_t feature_dim, std::size_t num_labels,
                            std::size_t num_edges) noexcept {
  return std::uint64_t{num_nodes} * feature_dim * sizeof(float) +
         std::uint64_t{num_labels} * sizeof(std::uint32_t) +
         std::uint64_t{num_edges} * 2 * sizeof(std::int64_t);
}

PreparedBatch slice_batch(Mfg mfg, const FeatureMatrix& fm, const LabelVector& y,
                          FeatureBuffer buffer) {
  PreparedBatch batch;
  batch.feature_dim = fm.cols();
  buffer.resize(mfg.num_nodes() * fm.cols());
  slice_features(fm, mfg.id_map, buffer.data());
  batch.labels = slice_labels(y, mfg.seeds);
  batch.stats.num_nodes = mfg.num_nodes();
  for (const auto& layer : mfg.layers) batch.stats.edges_per_layer.push_back(layer.num_edges());
  batch.stats.num_edges = mfg.num_edges();
  batch.byte_size = payload_bytes(batch.stats.num_nodes, batch.feature_dim, batch.labels.size(),
                                  batch.stats.num_edges);
  batch.features = std::move(buffer);
  batch.mfg = std::move(mfg);
  return batch;
}

PreparedBatch prepare_batch(const CsrGraph& g, const FeatureMatrix& fm, const LabelVector& y,
                            const SeedBatch& seeds, const FanoutSpec& fanouts,
                            const SamplerVariant& variant, std::uint64_t global_seed,
                            FeatureBuffer buffer) {
  if (fm.rows() != g.num_nodes()) {
    throw InvalidArgument("feature matrix has " + std::to_string(fm.rows()) + " rows for " +
                          std::to_string(g.num_nodes()) + " nodes");
  }
  if (y.size() != g.num_nodes()) {
    throw InvalidArgument("label vector has " + std::to_string(y.size()) + " entries for " +
                          std::to_string(g.num_nodes()) + " nodes");
  }
  return slice_batch(multihop_mfg(g, seeds, fanouts, global_seed, variant), fm, y,
                     std::move(buffer));
}

}  // namespace mfgprep
