#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "mfgprep/batch.hpp"

namespace mfgprep {

enum class Delivery { in_order, completion_order };

struct PrepConfig {
  std::size_t num_workers = 1;
  /// Output queue capacity; 0 selects 4 x num_workers.
  std::size_t queue_capacity = 0;
  FanoutSpec fanouts{{15, 10, 5}};
  SamplerVariant variant = kFastVariant;
  Delivery delivery = Delivery::in_order;
  /// When false a batch is only started once the consumer asks for it, so
  /// preparation never overlaps the consumer's own work.
  bool prefetch = true;

  std::size_t effective_queue_capacity() const noexcept {
    return queue_capacity == 0 ? 4 * num_workers : queue_capacity;
  }
  void validate() const;
};

struct BatchTiming {
  std::uint64_t batch_id = 0;
  std::size_t worker = 0;
  double start_s = 0;     ///< worker picked the batch, relative to epoch start
  double sampling_s = 0;
  double slicing_s = 0;
  double ready_s = 0;     ///< batch entered the output queue
};

struct PrepReport {
  std::size_t num_workers = 0;
  std::vector<BatchTiming> batches;  ///< indexed by plan position
  double wall_s = 0;
  std::size_t peak_resident = 0;     ///< most batches materialized at once

  double total_sampling_s() const noexcept;
  double total_slicing_s() const noexcept;
};

/// Prepares an epoch with P worker threads.
///
/// Workers pull plan positions from a pre-filled lock-free queue, each
/// sampling and slicing a whole batch before taking the next one. Finished
/// batches pass through a bounded output queue; their feature buffers come
/// from a pool of queue_capacity + P buffers, so no more than that many
/// batches exist at once. With in_order delivery a worker only starts batch
/// i once i < delivered + queue_capacity, and next() reorders.
///
/// Inputs must outlive this object. next() is for a single consumer thread.
/// Consumers holding more than P delivered batches stall the workers.
class EpochPrep {
 public:
  EpochPrep(const CsrGraph& g, const FeatureMatrix& fm, const LabelVector& y,
            const EpochPlan& plan, PrepConfig cfg, std::uint64_t global_seed);
  ~EpochPrep();

  EpochPrep(const EpochPrep&) = delete;
  EpochPrep& operator=(const EpochPrep&) = delete;

  /// Next batch, or nullopt at the end of the epoch. Throws PrepError if a
  /// worker failed.
  std::optional<PreparedBatch> next();

  /// Timings; complete once next() has returned nullopt.
  PrepReport report() const;

  std::chrono::steady_clock::time_point start_time() const noexcept;
  const PrepConfig& config() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Drains an EpochPrep, returning every batch in delivery order.
std::vector<PreparedBatch> run_epoch_prep(const CsrGraph& g, const FeatureMatrix& fm,
                                          const LabelVector& y, const EpochPlan& plan,
                                          const PrepConfig& cfg, std::uint64_t global_seed,
                                          PrepReport* report = nullptr);

}  // namespace mfgprep
