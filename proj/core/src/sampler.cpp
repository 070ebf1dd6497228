#include "mfgprep/sampler.hpp"

#include <algorithm>
#include <charconv>
#include <string>
#include <unordered_set>

#include "mfgprep/error.hpp"
#include "mfgprep/hash.hpp"

namespace mfgprep {
namespace {

class HashPositionSet {
 public:
  void reset(std::size_t /*degree*/) { seen_.clear(); }
  bool insert(std::uint64_t pos) { return seen_.insert(pos).second; }

 private:
  std::unordered_set<std::uint64_t> seen_;
};

class VectorPositionSet {
 public:
  void reset(std::size_t /*degree*/) { seen_.clear(); }
  bool insert(std::uint64_t pos) {
    if (std::find(seen_.begin(), seen_.end(), pos) != seen_.end()) return false;
    seen_.push_back(pos);
    return true;
  }

 private:
  std::vector<std::uint64_t> seen_;
};

class BitPositionSet {
 public:
  void reset(std::size_t degree) { words_.assign((degree + 63) / 64, 0); }
  bool insert(std::uint64_t pos) {
    std::uint64_t& word = words_[pos >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (pos & 63);
    if (word & bit) return false;
    word |= bit;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

template <class Set, class Emit>
void draw_positions(std::size_t degree, std::uint32_t d, CounterRng& rng, Set& seen, Emit&& emit) {
  if (degree <= d) {
    for (std::size_t i = 0; i < degree; ++i) emit(i);
    return;
  }
  seen.reset(degree);
  for (std::uint32_t accepted = 0; accepted < d;) {
    const std::uint64_t pos = rng.uniform(degree);
    if (seen.insert(pos)) {
      emit(pos);
      ++accepted;
    }
  }
}

template <class Table, class Set, bool Fused>
MfgLayer expand(const CsrGraph& g, Table& table, std::vector<NodeId>& globals,
                std::size_t num_dst, std::uint32_t fanout, const HopKey& key) {
  MfgLayer layer;
  layer.num_dst = num_dst;
  layer.indptr.reserve(num_dst + 1);
  if (fanout <= 256) {
    layer.src_local.reserve(num_dst * fanout);
    layer.edge_slots.reserve(num_dst * fanout);
  }
  const auto indices = g.indices();
  Set seen;

  if constexpr (Fused) {
    for (std::size_t j = 0; j < num_dst; ++j) {
      const NodeId v = globals[j];
      const EdgeSlot base = g.row_begin(v);
      CounterRng rng = key.stream(j);
      draw_positions(g.degree(v), fanout, rng, seen, [&](std::uint64_t offset) {
        const EdgeSlot slot = base + offset;
        layer.src_local.push_back(IdMap::intern(table, globals, indices[slot]));
        layer.edge_slots.push_back(slot);
      });
      layer.indptr.push_back(layer.src_local.size());
    }
  } else {
    for (std::size_t j = 0; j < num_dst; ++j) {
      const NodeId v = globals[j];
      const EdgeSlot base = g.row_begin(v);
      CounterRng rng = key.stream(j);
      draw_positions(g.degree(v), fanout, rng, seen,
                     [&](std::uint64_t offset) { layer.edge_slots.push_back(base + offset); });
      layer.indptr.push_back(layer.edge_slots.size());
    }
    layer.src_local.resize(layer.edge_slots.size());
    for (std::size_t e = 0; e < layer.edge_slots.size(); ++e) {
      layer.src_local[e] = IdMap::intern(table, globals, indices[layer.edge_slots[e]]);
    }
  }
  layer.num_src = globals.size();
  return layer;
}

template <class Table>
MfgLayer expand_with(const CsrGraph& g, Table& table, std::vector<NodeId>& globals,
                     std::size_t num_dst, std::uint32_t fanout, const HopKey& key,
                     const SamplerVariant& variant) {
  switch (variant.set) {
    case SetImpl::hash_set:
      return variant.fused ? expand<Table, HashPositionSet, true>(g, table, globals, num_dst, fanout, key)
                           : expand<Table, HashPositionSet, false>(g, table, globals, num_dst, fanout, key);
    case SetImpl::vector_set:
      return variant.fused ? expand<Table, VectorPositionSet, true>(g, table, globals, num_dst, fanout, key)
                           : expand<Table, VectorPositionSet, false>(g, table, globals, num_dst, fanout, key);
    case SetImpl::bit_set:
      return variant.fused ? expand<Table, BitPositionSet, true>(g, table, globals, num_dst, fanout, key)
                           : expand<Table, BitPositionSet, false>(g, table, globals, num_dst, fanout, key);
  }
  throw InvalidArgument("unknown set implementation");
}

}  // namespace

FanoutSpec FanoutSpec::parse(std::string_view text) {
  FanoutSpec spec;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view token = text.substr(pos, comma - pos);
    std::uint32_t value = 0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || end != token.data() + token.size() || value == 0) {
      throw InvalidArgument("fanouts must be comma-separated positive integers, got \"" +
                            std::string(text) + "\"");
    }
    spec.per_hop.push_back(value);
    pos = comma + 1;
  }
  return spec;
}

std::string FanoutSpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < per_hop.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(per_hop[i]);
  }
  return out;
}

std::size_t Mfg::num_edges() const noexcept {
  std::size_t total = 0;
  for (const auto& layer : layers) total += layer.num_edges();
  return total;
}

std::vector<EdgeSlot> sample_neighbors(const CsrGraph& g, NodeId v, std::uint32_t d,
                                       CounterRng& rng, SetImpl set) {
  if (v >= g.num_nodes()) throw InvalidArgument("sample_neighbors: node out of range");
  std::vector<EdgeSlot> out;
  const EdgeSlot base = g.row_begin(v);
  auto emit = [&](std::uint64_t offset) { out.push_back(base + offset); };
  switch (set) {
    case SetImpl::hash_set: {
      HashPositionSet seen;
      draw_positions(g.degree(v), d, rng, seen, emit);
      break;
    }
    case SetImpl::vector_set: {
      VectorPositionSet seen;
      draw_positions(g.degree(v), d, rng, seen, emit);
      break;
    }
    case SetImpl::bit_set: {
      BitPositionSet seen;
      draw_positions(g.degree(v), d, rng, seen, emit);
      break;
    }
  }
  return out;
}

MfgLayer one_hop_mfg(const CsrGraph& g, IdMap& id_map, std::size_t num_dst,
                     std::uint32_t fanout, const HopKey& key, const SamplerVariant& variant) {
  if (num_dst > id_map.size()) {
    throw InvalidArgument("one_hop_mfg: id_map holds fewer nodes than num_dst");
  }
  return id_map.with_table([&](auto& table, std::vector<NodeId>& globals) {
    return expand_with(g, table, globals, num_dst, fanout, key, variant);
  });
}

IdMap seed_id_map(const CsrGraph& g, const SeedBatch& seeds, MapImpl impl,
                  std::size_t size_hint) {
  IdMap map(impl, size_hint);
  for (std::size_t i = 0; i < seeds.dst_ids.size(); ++i) {
    const NodeId v = seeds.dst_ids[i];
    if (v >= g.num_nodes()) {
      throw InvalidArgument("seed " + std::to_string(v) + " is not a node of the graph");
    }
    if (map.insert(v) != i) {
      throw InvalidArgument("seed batch " + std::to_string(seeds.batch_id) +
                            " repeats node " + std::to_string(v));
    }
  }
  return map;
}

std::size_t estimate_mfg_size(std::size_t num_seeds, const FanoutSpec& fanouts,
                              std::size_t num_nodes) noexcept {
  std::size_t per_seed = 1;
  for (std::uint32_t d : fanouts.per_hop) {
    per_seed += std::min<std::size_t>(d, num_nodes);
    if (per_seed >= num_nodes) break;
  }
  if (num_seeds != 0 && per_seed > num_nodes / num_seeds) return num_nodes;
  return std::min(num_seeds * per_seed, num_nodes);
}

Mfg multihop_mfg(const CsrGraph& g, const SeedBatch& seeds, const FanoutSpec& fanouts,
                 std::uint64_t global_seed, const SamplerVariant& variant) {
  if (fanouts.per_hop.empty()) throw InvalidArgument("multihop_mfg: need at least one hop");
  const std::size_t hint = variant.map == MapImpl::flat_probing_with_size_hint
                               ? estimate_mfg_size(seeds.dst_ids.size(), fanouts, g.num_nodes())
                               : 0;
  Mfg mfg{{}, seed_id_map(g, seeds, variant.map, hint), seeds};
  mfg.layers.reserve(fanouts.per_hop.size());
  std::size_t num_dst = seeds.dst_ids.size();
  for (std::size_t hop = 0; hop < fanouts.per_hop.size(); ++hop) {
    const HopKey key{global_seed, seeds.batch_id, hop};
    mfg.layers.push_back(one_hop_mfg(g, mfg.id_map, num_dst, fanouts.per_hop[hop], key, variant));
    num_dst = mfg.layers.back().num_src;
  }
  std::reverse(mfg.layers.begin(), mfg.layers.end());
  return mfg;
}

std::uint64_t digest(const MfgLayer& layer) {
  Hasher h;
  h.add(layer.num_dst);
  h.add(layer.num_src);
  h.add_range(std::span<const std::uint64_t>(layer.indptr));
  h.add_range(std::span<const LocalId>(layer.src_local));
  h.add_range(std::span<const EdgeSlot>(layer.edge_slots));
  return h.value();
}

std::uint64_t digest(const Mfg& mfg) {
  Hasher h;
  h.add(mfg.seeds.batch_id);
  h.add_range(mfg.id_map.globals());
  for (const auto& layer : mfg.layers) h.add(digest(layer));
  return h.value();
}

}  // namespace mfgprep
