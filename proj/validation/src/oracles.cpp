#include "mfgprep/validation/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

namespace mfgprep::validation {

std::vector<std::set<NodeId>> bfs_hops(const CsrGraph& g, std::span<const NodeId> seeds,
                                       std::size_t num_hops) {
  std::vector<std::set<NodeId>> out(num_hops + 1);
  out[0].insert(seeds.begin(), seeds.end());
  for (std::size_t l = 1; l <= num_hops; ++l) {
    out[l] = out[l - 1];
    for (NodeId v : out[l - 1]) {
      for (NodeId u : g.neighbors(v)) out[l].insert(u);
    }
  }
  return out;
}

std::vector<std::set<NodeId>> mfg_source_sets(const Mfg& mfg) {
  const std::size_t num_hops = mfg.layers.size();
  std::vector<std::set<NodeId>> out(num_hops + 1);
  const auto globals = mfg.id_map.globals();
  out[0].insert(mfg.seeds.dst_ids.begin(), mfg.seeds.dst_ids.end());
  for (std::size_t l = 1; l <= num_hops; ++l) {
    const std::size_t n = mfg.layers[num_hops - l].num_src;
    out[l].insert(globals.begin(), globals.begin() + static_cast<std::ptrdiff_t>(n));
  }
  return out;
}

std::vector<std::string> mfg_violations(const CsrGraph& g, const Mfg& mfg, const FanoutSpec& fanouts) {
  std::vector<std::string> bad;
  const auto globals = mfg.id_map.globals();
  const std::size_t num_hops = mfg.layers.size();
  if (num_hops != fanouts.num_hops()) bad.push_back("layer count differs from fanout count");

  std::set<NodeId> distinct(globals.begin(), globals.end());
  if (distinct.size() != globals.size()) bad.push_back("id map holds a global twice");
  for (std::size_t i = 0; i < mfg.seeds.dst_ids.size(); ++i) {
    if (i >= globals.size() || globals[i] != mfg.seeds.dst_ids[i]) {
      bad.push_back("seeds are not the id map prefix");
      break;
    }
  }
  if (!mfg.layers.empty()) {
    if (mfg.layers.back().num_dst != mfg.seeds.dst_ids.size()) bad.push_back("last layer dst != seeds");
    if (mfg.layers.front().num_src != globals.size()) bad.push_back("first layer src != id map size");
  }

  for (std::size_t h = 0; h < num_hops && h < fanouts.num_hops(); ++h) {
    const MfgLayer& layer = mfg.layers[num_hops - 1 - h];
    const std::uint32_t d = fanouts.per_hop[h];
    const std::string where = "hop " + std::to_string(h) + ": ";
    if (h + 1 < num_hops && mfg.layers[num_hops - 2 - h].num_dst != layer.num_src) {
      bad.push_back(where + "source count does not feed the next hop");
    }
    if (layer.indptr.size() != layer.num_dst + 1 || layer.edge_slots.size() != layer.src_local.size()) {
      bad.push_back(where + "malformed layer arrays");
      continue;
    }
    for (std::size_t j = 0; j < layer.num_dst; ++j) {
      const NodeId v = globals[j];
      const std::size_t deg = g.degree(v);
      const std::size_t expect = std::min<std::size_t>(d, deg);
      if (layer.in_degree(j) != expect) {
        bad.push_back(where + "node " + std::to_string(v) + " has in-degree " +
                      std::to_string(layer.in_degree(j)) + ", expected " + std::to_string(expect));
      }
      std::set<EdgeSlot> seen;
      for (std::uint64_t e = layer.indptr[j]; e < layer.indptr[j + 1]; ++e) {
        const EdgeSlot s = layer.edge_slots[e];
        if (s < g.row_begin(v) || s >= g.row_begin(v) + deg) {
          bad.push_back(where + "slot outside the row of " + std::to_string(v));
          continue;
        }
        if (!seen.insert(s).second) bad.push_back(where + "duplicate slot for " + std::to_string(v));
        const LocalId src = layer.src_local[e];
        if (src >= layer.num_src || globals[src] != g.indices()[s]) {
          bad.push_back(where + "source local does not map to the slot's neighbor");
        }
      }
    }
  }
  return bad;
}

std::vector<EdgeSlot> reference_sample(const CsrGraph& g, NodeId v, std::uint32_t d, CounterRng& rng) {
  std::vector<EdgeSlot> out;
  const std::uint64_t deg = g.degree(v);
  const EdgeSlot base = g.row_begin(v);
  if (deg <= d) {
    for (std::uint64_t k = 0; k < deg; ++k) out.push_back(base + k);
    return out;
  }
  while (out.size() < d) {
    const EdgeSlot s = base + rng.uniform(deg);
    bool dup = false;
    for (EdgeSlot t : out) dup = dup || t == s;
    if (!dup) out.push_back(s);
  }
  return out;
}

namespace {

double half_value(std::uint16_t bits) {
  const int e = (bits >> 10) & 0x1F;
  const int m = bits & 0x3FF;
  return e == 0 ? std::ldexp(m, -24) : std::ldexp(1024 + m, e - 25);
}

// Finite halves plus the overflow step 2^16 at index 0x7C00.
const std::array<double, 0x7C01>& positive_halves() {
  static const auto table = [] {
    std::array<double, 0x7C01> t{};
    for (std::uint16_t b = 0; b < 0x7C00; ++b) t[b] = half_value(b);
    t[0x7C00] = 65536.0;
    return t;
  }();
  return table;
}

}  // namespace

std::uint16_t reference_half(float x) {
  if (std::isnan(x)) return 0x7E00;
  const std::uint16_t sign = std::signbit(x) ? 0x8000 : 0;
  const double a = std::fabs(static_cast<double>(x));
  if (a >= 65520.0) return sign | 0x7C00;
  const auto& t = positive_halves();
  const auto it = std::lower_bound(t.begin(), t.end(), a);
  auto hi = static_cast<std::uint16_t>(it - t.begin());
  if (hi == 0) return sign;
  const auto lo = static_cast<std::uint16_t>(hi - 1);
  const double dl = a - t[lo];
  const double dh = t[hi] - a;
  std::uint16_t pick = dl < dh ? lo : dh < dl ? hi : ((lo & 1) == 0 ? lo : hi);
  return sign | pick;
}

std::vector<float> reference_gather(const FeatureMatrix& fm, std::span<const NodeId> globals) {
  std::vector<float> out;
  out.reserve(globals.size() * fm.cols());
  for (NodeId v : globals) {
    for (std::size_t c = 0; c < fm.cols(); ++c) out.push_back(fm.at(v, c));
  }
  return out;
}

SimulatedSchedule simulate_events(std::span<const BatchCost> batches, const TransferModel& tm,
                                  const ComputeModel& cm, bool pipelined, std::size_t depth) {
  enum Kind { kReady, kTransferDone, kComputeDone };
  struct Event {
    double time;
    Kind kind;
    std::size_t batch;
    bool operator>(const Event& o) const { return time > o.time; }
  };
  const std::size_t n = batches.size();
  SimulatedSchedule out;
  out.transfer.resize(n);
  out.compute.resize(n);

  std::priority_queue<Event, std::vector<Event>, std::greater<>> events;
  for (std::size_t i = 0; i < n; ++i) events.push({batches[i].ready_s, kReady, i});

  std::vector<char> ready(n, 0), transferred(n, 0), computed(n, 0);
  std::size_t next_transfer = 0, next_compute = 0;
  bool transfer_busy = false, compute_busy = false;

  while (!events.empty()) {
    const double now = events.top().time;
    while (!events.empty() && events.top().time == now) {
      const Event e = events.top();
      events.pop();
      switch (e.kind) {
        case kReady: ready[e.batch] = 1; break;
        case kTransferDone: transferred[e.batch] = 1; transfer_busy = false; break;
        case kComputeDone: computed[e.batch] = 1; compute_busy = false; break;
      }
    }
    for (bool progress = true; progress;) {
      progress = false;
      if (!transfer_busy && next_transfer < n && ready[next_transfer]) {
        const std::size_t i = next_transfer;
        const bool gate = pipelined ? (i < depth || next_compute > i - depth)
                                    : (i == 0 || computed[i - 1]);
        if (gate) {
          const double t = tm.time(batches[i].bytes);
          out.transfer[i] = {now, now + t};
          events.push({now + t, kTransferDone, i});
          transfer_busy = true;
          ++next_transfer;
          progress = true;
        }
      }
      if (!compute_busy && next_compute < n && transferred[next_compute]) {
        const std::size_t i = next_compute;
        const double c = cm.time(batches[i].num_nodes, batches[i].num_edges);
        out.compute[i] = {now, now + c};
        events.push({now + c, kComputeDone, i});
        compute_busy = true;
        ++next_compute;
        progress = true;
      }
    }
    out.makespan_s = std::max(out.makespan_s, now);
  }
  return out;
}

}  // namespace mfgprep::validation
