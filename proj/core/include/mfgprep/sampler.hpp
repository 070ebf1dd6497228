#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "mfgprep/csr_graph.hpp"
#include "mfgprep/id_map.hpp"
#include "mfgprep/rng.hpp"
#include "mfgprep/variant.hpp"

namespace mfgprep {

/// Fanout that never caps a neighborhood.
inline constexpr std::uint32_t kAllNeighbors = std::numeric_limits<std::uint32_t>::max();

/// Per-hop fanouts in expansion order: per_hop[0] caps the neighbors drawn
/// for the seed nodes, per_hop[1] for the nodes they reached, and so on.
struct FanoutSpec {
  std::vector<std::uint32_t> per_hop;

  std::size_t num_hops() const noexcept { return per_hop.size(); }
  /// Parses "15,10,5". Entries must be positive integers.
  static FanoutSpec parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const FanoutSpec&, const FanoutSpec&) = default;
};

/// Destination nodes of one mini-batch.
struct SeedBatch {
  std::uint64_t batch_id = 0;
  std::vector<NodeId> dst_ids;

  friend bool operator==(const SeedBatch&, const SeedBatch&) = default;
};

/// Key of the random streams used by one expansion hop of one batch.
struct HopKey {
  std::uint64_t global_seed = 0;
  std::uint64_t batch_id = 0;
  std::uint64_t hop = 0;

  CounterRng stream(std::size_t dst_position) const noexcept {
    return CounterRng::for_sample(global_seed, batch_id, hop, dst_position);
  }
};

/// Bipartite layer of an MFG in CSR-by-destination form over local IDs.
/// Destinations are locals [0, num_dst), sources are locals [0, num_src).
struct MfgLayer {
  std::size_t num_dst = 0;
  std::size_t num_src = 0;
  std::vector<std::uint64_t> indptr{0};  ///< num_dst + 1 offsets
  std::vector<LocalId> src_local;        ///< source local ID per edge
  std::vector<EdgeSlot> edge_slots;      ///< global CSR slot each edge was drawn from

  std::size_t num_edges() const noexcept { return src_local.size(); }
  std::size_t in_degree(std::size_t dst) const noexcept {
    return static_cast<std::size_t>(indptr[dst + 1] - indptr[dst]);
  }

  friend bool operator==(const MfgLayer&, const MfgLayer&) = default;
};

/// Message-flow graph of one mini-batch.
///
/// `layers` is in consumption order: layers.front() is the outermost
/// expansion and layers.back() has the seed batch as its destinations, so
/// applying them in sequence shrinks the node set down to the seeds.
struct Mfg {
  std::vector<MfgLayer> layers;
  IdMap id_map;
  SeedBatch seeds;

  std::size_t num_nodes() const noexcept { return id_map.size(); }
  std::size_t num_edges() const noexcept;

  friend bool operator==(const Mfg&, const Mfg&) = default;
};

/// Draws up to d edge slots of v without replacement, returned as global CSR
/// slot positions. If deg(v) <= d every slot is returned in CSR order and no
/// randomness is consumed; otherwise positions are drawn uniformly and
/// rejected on repeats, and the result is in acceptance order.
std::vector<EdgeSlot> sample_neighbors(const CsrGraph& g, NodeId v, std::uint32_t d,
                                       CounterRng& rng, SetImpl set = SetImpl::vector_set);

/// Samples one hop for destinations = locals [0, num_dst) of `id_map`.
/// New sources are appended to `id_map` on first sight; the destination
/// at position j draws from key.stream(j). The map's own lookup table is
/// used; `variant` selects the set and fusion.
MfgLayer one_hop_mfg(const CsrGraph& g, IdMap& id_map, std::size_t num_dst,
                     std::uint32_t fanout, const HopKey& key, const SamplerVariant& variant);

/// Fresh IdMap holding the seeds as locals 0..k-1. Rejects duplicate or
/// out-of-range seeds.
IdMap seed_id_map(const CsrGraph& g, const SeedBatch& seeds, MapImpl impl,
                  std::size_t size_hint = 0);

/// Capacity estimate for the size-hinted map: |seeds| * (1 + sum of fanouts),
/// capped at the node count.
std::size_t estimate_mfg_size(std::size_t num_seeds, const FanoutSpec& fanouts,
                              std::size_t num_nodes) noexcept;

/// Multi-hop expansion. Hop h uses the whole source set of hop h-1 as its
/// destinations (hop 0: the seeds) and fanouts.per_hop[h].
Mfg multihop_mfg(const CsrGraph& g, const SeedBatch& seeds, const FanoutSpec& fanouts,
                 std::uint64_t global_seed, const SamplerVariant& variant);

/// Structural hash of a layer or of a whole MFG (ID map, layers, batch id).
std::uint64_t digest(const MfgLayer& layer);
std::uint64_t digest(const Mfg& mfg);

}  // namespace mfgprep
