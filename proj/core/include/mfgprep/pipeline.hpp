#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mfgprep {

/// Host-to-device copy cost:
///   base_latency + bytes / (bandwidth * efficiency)
///   + (validate_on_transfer ? round_trips * rt_latency : 0)
struct TransferModel {
  double bandwidth_bytes_per_s = 12.3e9;
  double efficiency = 1.0;
  double base_latency_s = 0.0;
  bool validate_on_transfer = false;
  std::uint32_t round_trips = 2;
  double rt_latency_s = 50e-6;

  double time(std::uint64_t bytes) const noexcept {
    double t = base_latency_s + static_cast<double>(bytes) / (bandwidth_bytes_per_s * efficiency);
    if (validate_on_transfer) t += static_cast<double>(round_trips) * rt_latency_s;
    return t;
  }
  void validate() const;
};

/// Device step cost: alpha + beta * nodes + gamma * edges.
struct ComputeModel {
  double alpha_s = 0.0;
  double beta_s_per_node = 0.0;
  double gamma_s_per_edge = 0.0;

  double time(std::uint64_t num_nodes, std::uint64_t num_edges) const noexcept {
    return alpha_s + beta_s_per_node * static_cast<double>(num_nodes) +
           gamma_s_per_edge * static_cast<double>(num_edges);
  }
  void validate() const;
};

struct ComputeSample {
  std::uint64_t num_nodes = 0;
  std::uint64_t num_edges = 0;
  double seconds = 0;
};

/// Least-squares fit of (alpha, beta, gamma). Directions the samples do not
/// span get a zero coefficient.
ComputeModel fit_compute_model(std::span<const ComputeSample> samples);

/// Per-batch input of a pipeline run.
struct BatchCost {
  std::uint64_t batch_id = 0;
  double prep_start_s = 0;  ///< informational, for event export
  double ready_s = 0;       ///< time the prepared batch becomes available
  std::uint64_t bytes = 0;
  std::uint64_t num_nodes = 0;
  std::uint64_t num_edges = 0;
};

struct Interval {
  double start = 0;
  double end = 0;
  double duration() const noexcept { return end - start; }
};

struct BatchEvents {
  std::uint64_t batch_id = 0;
  Interval prep;  ///< [prep start, ready]
  Interval transfer;
  Interval compute;
  std::uint64_t bytes = 0;
  std::uint64_t num_nodes = 0;
  std::uint64_t num_edges = 0;
};

/// Time the main loop spent waiting on each stage.
struct StageBlocking {
  double prep = 0;
  double transfer = 0;
  double compute = 0;
  double total() const noexcept { return prep + transfer + compute; }
};

struct Timeline {
  std::vector<BatchEvents> batches;
  double makespan_s = 0;
  StageBlocking blocking;

  double transfer_busy_s() const noexcept;
  double compute_busy_s() const noexcept;
  double transfer_utilization() const noexcept;
  double compute_utilization() const noexcept;
};

/// Ready times from list-scheduling prep_durations, in order, on `workers`
/// identical workers starting at t = 0. Fills prep_start_s and ready_s.
void schedule_prep(std::span<BatchCost> batches, std::span<const double> prep_durations,
                   std::size_t workers);

/// Prep, transfer and compute strictly one after another per batch.
Timeline run_serial(std::span<const BatchCost> batches, const TransferModel& tm,
                    const ComputeModel& cm);

/// Exclusive transfer and compute channels. Transfer i starts once batch i
/// is ready, the channel is idle, and compute i - prefetch_depth has
/// started; compute i starts once transfer i is done and the channel is idle.
Timeline run_pipelined(std::span<const BatchCost> batches, const TransferModel& tm,
                       const ComputeModel& cm, std::size_t prefetch_depth = 1);

/// Per-stage blocking breakdown of one epoch.
struct Breakdown {
  double epoch_s = 0;
  double prep_block_s = 0;
  double prep_pct = 0;
  double transfer_block_s = 0;
  double transfer_pct = 0;
  double compute_s = 0;
  double compute_pct = 0;
};

Breakdown breakdown(const Timeline& timeline);

/// Header "label,epoch_s,prep_block_s,prep_pct,transfer_block_s,transfer_pct,compute_s,compute_pct".
void write_breakdown_csv(std::span<const std::pair<std::string, Breakdown>> rows, std::ostream& out);

/// Header "batch_id,stage,start_s,end_s"; stages prep, transfer, compute.
void write_events_csv(const Timeline& timeline, std::ostream& out);

/// {"makespan_s", "blocking": {prep, transfer, compute},
///  "utilization": {transfer_channel, compute_channel}}
std::string summary_json(const Timeline& timeline);

}  // namespace mfgprep
