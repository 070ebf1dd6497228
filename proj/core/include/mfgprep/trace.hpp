#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "mfgprep/batch.hpp"

namespace mfgprep {

/// Destinations and fanout of one expansion hop of one batch.
struct TraceRecord {
  std::uint64_t batch_id = 0;
  std::uint32_t hop = 0;
  std::uint32_t fanout = 0;
  std::vector<NodeId> dst_ids;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

/// Hop-by-hop record of an epoch's MFG expansions.
///
/// Binary layout (little-endian): "TRCE", u32 version=1, u64 graph checksum,
/// u64 global seed, u64 record count, then per record: u64 batch_id,
/// u32 hop, u32 fanout, u64 count, count x u32 destination IDs.
struct Trace {
  std::uint64_t graph_checksum = 0;
  std::uint64_t global_seed = 0;
  std::vector<TraceRecord> records;

  std::size_t num_hops() const noexcept;

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// Expands every batch of `plan` and records each hop's destination list.
Trace record_trace(const CsrGraph& g, const EpochPlan& plan, const FanoutSpec& fanouts,
                   std::uint64_t global_seed);

void write_trace(const Trace& trace, std::ostream& out);
Trace read_trace(std::istream& in);
void save_trace(const Trace& trace, const std::filesystem::path& path);
Trace load_trace(const std::filesystem::path& path);

}  // namespace mfgprep
