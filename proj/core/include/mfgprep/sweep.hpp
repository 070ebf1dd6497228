#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mfgprep/trace.hpp"

namespace mfgprep {

inline constexpr std::size_t kDefaultRepetitions = 5;

struct ReplayResult {
  std::vector<double> hop_min_s;                 ///< min over repetitions, per hop
  std::vector<double> hop_mean_s;                ///< mean over repetitions, per hop
  std::vector<std::vector<double>> rep_hop_s;    ///< [repetition][hop]
  std::uint64_t digest = 0;                      ///< 0 for an empty trace
};

/// Replays every record of the trace with `variant`: one untimed warm-up
/// pass (which also computes the digest of all produced layers and ID
/// maps), then `repetitions` timed passes. Throws InvalidArgument when the
/// trace was recorded on a different graph.
ReplayResult replay_variant(const Trace& trace, const CsrGraph& g, const SamplerVariant& variant,
                            std::size_t repetitions = kDefaultRepetitions);

/// min over the first r samples for r = 1..n; non-increasing by construction.
std::vector<double> running_min(std::span<const double> samples);

struct SweepEntry {
  SamplerVariant variant;
  ReplayResult replay;
  std::vector<double> speedup;  ///< baseline hop time / this hop time
};

struct SweepResult {
  SamplerVariant baseline;
  std::size_t num_hops = 0;
  std::vector<SweepEntry> entries;
};

/// Replays each variant on the trace and compares it to `baseline`. Throws
/// DigestMismatch naming the first variant whose output differs.
SweepResult sweep(const Trace& trace, const CsrGraph& g, std::span<const SamplerVariant> variants,
                  const SamplerVariant& baseline, std::size_t repetitions = kDefaultRepetitions);

/// Header "variant,hop,time_s,speedup_vs_baseline"; one row per variant and hop.
void write_sweep_csv(const SweepResult& result, std::ostream& out);

}  // namespace mfgprep
