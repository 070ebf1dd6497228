#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "mfgprep/csr_graph.hpp"
#include "mfgprep/features.hpp"
#include "mfgprep/pipeline.hpp"
#include "mfgprep/rng.hpp"
#include "mfgprep/sampler.hpp"

namespace mfgprep::validation {

/// result[l] = nodes within l hops of the seeds (result[0] = seeds).
std::vector<std::set<NodeId>> bfs_hops(const CsrGraph& g, std::span<const NodeId> seeds,
                                       std::size_t num_hops);

/// result[l] = globals reached after l expansion hops, in the same shape as bfs_hops.
std::vector<std::set<NodeId>> mfg_source_sets(const Mfg& mfg);

/// Human-readable descriptions of every broken MFG invariant; empty if none.
std::vector<std::string> mfg_violations(const CsrGraph& g, const Mfg& mfg, const FanoutSpec& fanouts);

/// Scalar rejection loop over slot positions with a linear duplicate scan.
std::vector<EdgeSlot> reference_sample(const CsrGraph& g, NodeId v, std::uint32_t d, CounterRng& rng);

/// Nearest binary16 by search over every finite half value; ties to even.
std::uint16_t reference_half(float x);

/// Row-by-row gather through FeatureMatrix::at.
std::vector<float> reference_gather(const FeatureMatrix& fm, std::span<const NodeId> globals);

struct SimulatedSchedule {
  std::vector<Interval> transfer;
  std::vector<Interval> compute;
  double makespan_s = 0;
};

/// Event-driven replay of one epoch. The transfer channel starts batch i
/// when it is idle, batch i is ready, and (pipelined) compute i - depth has
/// started or (serial) compute i - 1 has finished; the compute channel
/// takes batches in order as their transfers finish.
SimulatedSchedule simulate_events(std::span<const BatchCost> batches, const TransferModel& tm,
                                  const ComputeModel& cm, bool pipelined, std::size_t depth = 1);

}  // namespace mfgprep::validation
