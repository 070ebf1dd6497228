#include "mfgprep/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>

#include "mfgprep/error.hpp"
#include "mfgprep/hash.hpp"

namespace mfgprep {
namespace {

using Clock = std::chrono::steady_clock;

/// Expands one record; returns the structural digest of the hop.
std::uint64_t replay_record(const CsrGraph& g, const TraceRecord& r, std::uint64_t global_seed,
                            const SamplerVariant& variant) {
  const std::size_t n = r.dst_ids.size();
  const std::size_t hint =
      variant.map == MapImpl::flat_probing_with_size_hint
          ? std::min<std::size_t>(g.num_nodes(), n * (1 + std::min<std::size_t>(r.fanout, g.num_nodes())))
          : 0;
  IdMap map(variant.map, hint);
  for (NodeId v : r.dst_ids) map.insert(v);
  const MfgLayer layer =
      one_hop_mfg(g, map, n, r.fanout, HopKey{global_seed, r.batch_id, r.hop}, variant);
  Hasher h;
  h.add(digest(layer));
  h.add_range(map.globals());
  return h.value();
}

}  // namespace

std::vector<double> running_min(std::span<const double> samples) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (double s : samples) out.push_back(out.empty() ? s : std::min(out.back(), s));
  return out;
}

ReplayResult replay_variant(const Trace& trace, const CsrGraph& g, const SamplerVariant& variant,
                            std::size_t repetitions) {
  if (trace.graph_checksum != g.checksum()) {
    throw InvalidArgument("trace checksum does not match the graph");
  }
  if (repetitions == 0) throw InvalidArgument("repetitions must be at least 1");
  ReplayResult result;
  if (trace.records.empty()) return result;

  const std::size_t hops = trace.num_hops();
  Hasher h;
  for (const auto& r : trace.records) h.add(replay_record(g, r, trace.global_seed, variant));
  result.digest = h.value();

  result.rep_hop_s.assign(repetitions, std::vector<double>(hops, 0.0));
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    for (const auto& r : trace.records) {
      const auto t0 = Clock::now();
      const std::uint64_t d = replay_record(g, r, trace.global_seed, variant);
      result.rep_hop_s[rep][r.hop] += std::chrono::duration<double>(Clock::now() - t0).count();
      // Keep the result observable so the work is not optimized away.
      if (d == 0) result.digest ^= 1;
    }
  }
  result.hop_min_s.assign(hops, 0.0);
  result.hop_mean_s.assign(hops, 0.0);
  for (std::size_t hop = 0; hop < hops; ++hop) {
    std::vector<double> samples;
    for (const auto& rep : result.rep_hop_s) samples.push_back(rep[hop]);
    result.hop_min_s[hop] = *std::min_element(samples.begin(), samples.end());
    for (double s : samples) result.hop_mean_s[hop] += s / static_cast<double>(samples.size());
  }
  return result;
}

SweepResult sweep(const Trace& trace, const CsrGraph& g, std::span<const SamplerVariant> variants,
                  const SamplerVariant& baseline, std::size_t repetitions) {
  if (std::find(variants.begin(), variants.end(), baseline) == variants.end()) {
    throw InvalidArgument("baseline variant " + baseline.descriptor() + " is not being swept");
  }
  SweepResult result;
  result.baseline = baseline;
  result.num_hops = trace.num_hops();

  const ReplayResult base = replay_variant(trace, g, baseline, repetitions);
  for (const SamplerVariant& v : variants) {
    SweepEntry entry{v, v == baseline ? base : replay_variant(trace, g, v, repetitions), {}};
    if (entry.replay.digest != base.digest) {
      throw DigestMismatch(v.descriptor(), "variant " + v.descriptor() +
                                               " produced MFGs that differ from baseline " +
                                               baseline.descriptor());
    }
    for (std::size_t hop = 0; hop < result.num_hops; ++hop) {
      const double t = entry.replay.hop_min_s[hop];
      entry.speedup.push_back(v == baseline ? 1.0 : (t > 0 ? base.hop_min_s[hop] / t : 0.0));
    }
    result.entries.push_back(std::move(entry));
  }
  return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  const auto precision = out.precision(9);
  out << "variant,hop,time_s,speedup_vs_baseline\n";
  for (const auto& e : result.entries) {
    for (std::size_t hop = 0; hop < result.num_hops; ++hop) {
      out << e.variant.descriptor() << ',' << hop << ',' << e.replay.hop_min_s[hop] << ','
          << e.speedup[hop] << '\n';
    }
  }
  out.precision(precision);
}

}  // namespace mfgprep
