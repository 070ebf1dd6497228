#pragma once

#include <cstddef>
#include <cstdint>

namespace mfgprep {

/// Global node identifier. The on-disk formats store node IDs as u32.
using NodeId = std::uint32_t;
/// Index into the CSR `indices` array (a directed edge slot).
using EdgeSlot = std::uint64_t;
/// Compact per-batch node index assigned by an IdMap.
using LocalId = std::uint32_t;

}  // namespace mfgprep
