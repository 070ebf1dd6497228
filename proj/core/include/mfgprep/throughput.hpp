#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "mfgprep/epoch_prep.hpp"

namespace mfgprep {

/// Runs fn(index, worker) for every index in [0, n) on `workers` threads
/// that pull indices from a shared lock-free queue.
void parallel_for_dynamic(std::size_t workers, std::size_t n,
                          const std::function<void(std::size_t, std::size_t)>& fn);

/// Epoch-level preparation time at one thread count.
struct ThroughputRow {
  std::size_t threads = 0;
  double sampling_s = 0;  ///< sampling only
  double slicing_s = 0;   ///< slicing only, over MFGs sampled beforehand
  double both_s = 0;      ///< end-to-end EpochPrep run
};

/// Times sampling alone, slicing alone, and full preparation of `plan` for
/// each thread count in `thread_counts`.
std::vector<ThroughputRow> measure_prep_throughput(const CsrGraph& g, const FeatureMatrix& fm,
                                                   const LabelVector& y, const EpochPlan& plan,
                                                   const PrepConfig& base,
                                                   std::span<const std::size_t> thread_counts,
                                                   std::uint64_t global_seed);

/// CSV with header "threads,sampling_s,slicing_s,both_s".
void write_throughput_csv(std::span<const ThroughputRow> rows, std::ostream& out);

}  // namespace mfgprep
