#pragma once

#include <cstddef>
#include <vector>

#include "mfgprep/epoch_prep.hpp"
#include "mfgprep/pipeline.hpp"

namespace mfgprep {

enum class ExecutionMode { serial, pipelined };

/// Blocks the calling thread for `seconds` of wall time: sleeps for the bulk
/// and busy-spins over the last 100 us for accuracy.
void calibrated_wait(double seconds);

/// Runs one epoch against real batch preparation. Transfer and compute are
/// emulated by calibrated waits of their modeled duration on two channel
/// threads; the main loop records how long it blocks on each stage. Times
/// are relative to prep.start_time().
Timeline run_live(EpochPrep& prep, const TransferModel& tm, const ComputeModel& cm,
                  ExecutionMode mode, std::size_t prefetch_depth = 1);

/// Batch costs for replaying a live run on the virtual clock: readiness
/// from the prep report, sizes from the live timeline.
std::vector<BatchCost> replay_costs(const Timeline& live, const PrepReport& report);

}  // namespace mfgprep
