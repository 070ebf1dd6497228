#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mfgprep/batch.hpp"
#include "mfgprep/pipeline.hpp"

namespace mfgprep {

struct AblationSettings {
  std::size_t workers = 8;  ///< prep threads once shared-memory prep is enabled
  TransferModel transfer;   ///< validate_on_transfer is forced per row
  ComputeModel compute;
  std::size_t prefetch_depth = 1;
};

struct AblationRow {
  std::string label;
  double epoch_s = 0;
  StageBlocking blocking;
};

/// Row labels, in order.
inline constexpr const char* kAblationLabels[] = {
    "None (baseline)",
    "+ Fast sampling",
    "+ Shared-memory batch prep.",
    "+ Pipelined data transfers",
};

/// Evaluates the four cumulative configurations on the virtual clock:
///   1. baseline sampler, 1 prep thread, serial, validating transfers
///   2. fast sampler, 1 prep thread, serial, validating transfers
///   3. fast sampler, `workers` prep threads, serial, validating transfers
///   4. as 3, pipelined, no validation round trips
/// `shapes` supplies bytes/nodes/edges per batch; prep durations are per
/// batch for each sampler.
std::vector<AblationRow> ablation_table(std::span<const BatchCost> shapes,
                                        std::span<const double> baseline_prep_s,
                                        std::span<const double> fast_prep_s,
                                        const AblationSettings& settings);

/// Measures single-threaded per-batch prep time of both samplers on `plan`
/// and evaluates ablation_table on the result.
std::vector<AblationRow> ablation_report(const CsrGraph& g, const FeatureMatrix& fm,
                                         const LabelVector& y, const EpochPlan& plan,
                                         const FanoutSpec& fanouts,
                                         const AblationSettings& settings,
                                         std::uint64_t global_seed,
                                         const SamplerVariant& baseline = kBaselineVariant,
                                         const SamplerVariant& fast = kFastVariant);

/// Header "optimization,epoch_s,prep_block_s,transfer_block_s,compute_s".
void write_ablation_csv(std::span<const AblationRow> rows, std::ostream& out);

}  // namespace mfgprep
