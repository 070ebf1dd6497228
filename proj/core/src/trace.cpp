#include "mfgprep/trace.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <string>

#include "mfgprep/error.hpp"

namespace mfgprep {
namespace {

constexpr std::array<char, 4> kTraceMagic{'T', 'R', 'C', 'E'};
constexpr std::uint32_t kTraceVersion = 1;

template <class T>
void put(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (static_cast<std::size_t>(in.gcount()) != sizeof(T)) {
    throw FormatError(FormatError::Kind::truncated, "trace: truncated file");
  }
  return value;
}

}  // namespace

std::size_t Trace::num_hops() const noexcept {
  std::size_t hops = 0;
  for (const auto& r : records) hops = std::max<std::size_t>(hops, r.hop + std::size_t{1});
  return hops;
}

Trace record_trace(const CsrGraph& g, const EpochPlan& plan, const FanoutSpec& fanouts,
                   std::uint64_t global_seed) {
  Trace trace;
  trace.graph_checksum = g.checksum();
  trace.global_seed = global_seed;
  for (const SeedBatch& seeds : plan.batches) {
    // Any variant yields the same expansion; use the fast one.
    IdMap map = seed_id_map(g, seeds, kFastVariant.map);
    std::size_t num_dst = seeds.dst_ids.size();
    for (std::size_t hop = 0; hop < fanouts.num_hops(); ++hop) {
      const auto globals = map.globals();
      trace.records.push_back({seeds.batch_id, static_cast<std::uint32_t>(hop), fanouts.per_hop[hop],
                               std::vector<NodeId>(globals.begin(), globals.begin() + num_dst)});
      const HopKey key{global_seed, seeds.batch_id, hop};
      num_dst = one_hop_mfg(g, map, num_dst, fanouts.per_hop[hop], key, kFastVariant).num_src;
    }
  }
  return trace;
}

void write_trace(const Trace& trace, std::ostream& out) {
  put(out, kTraceMagic);
  put(out, kTraceVersion);
  put(out, trace.graph_checksum);
  put(out, trace.global_seed);
  put(out, static_cast<std::uint64_t>(trace.records.size()));
  for (const auto& r : trace.records) {
    put(out, r.batch_id);
    put(out, r.hop);
    put(out, r.fanout);
    put(out, static_cast<std::uint64_t>(r.dst_ids.size()));
    out.write(reinterpret_cast<const char*>(r.dst_ids.data()),
              static_cast<std::streamsize>(r.dst_ids.size() * sizeof(NodeId)));
  }
  if (!out) throw IoError("write failed: trace");
}

Trace read_trace(std::istream& in) {
  const auto magic = get<std::array<char, 4>>(in);
  if (magic != kTraceMagic) {
    throw FormatError(FormatError::Kind::bad_magic, "trace: bad magic, expected \"TRCE\"");
  }
  const auto version = get<std::uint32_t>(in);
  if (version != kTraceVersion) {
    throw FormatError(FormatError::Kind::version_mismatch,
                      "trace: version mismatch, file has " + std::to_string(version));
  }
  Trace trace;
  trace.graph_checksum = get<std::uint64_t>(in);
  trace.global_seed = get<std::uint64_t>(in);
  const auto count = get<std::uint64_t>(in);
  for (std::uint64_t i = 0; i < count; ++i) {
    TraceRecord r;
    r.batch_id = get<std::uint64_t>(in);
    r.hop = get<std::uint32_t>(in);
    r.fanout = get<std::uint32_t>(in);
    const auto n = get<std::uint64_t>(in);
    while (r.dst_ids.size() < n) {
      const std::uint64_t take = std::min<std::uint64_t>(n - r.dst_ids.size(), 1u << 20);
      const std::size_t old = r.dst_ids.size();
      r.dst_ids.resize(old + take);
      const auto bytes = static_cast<std::streamsize>(take * sizeof(NodeId));
      in.read(reinterpret_cast<char*>(r.dst_ids.data() + old), bytes);
      if (in.gcount() != bytes) throw FormatError(FormatError::Kind::truncated, "trace: truncated file");
    }
    trace.records.push_back(std::move(r));
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError(FormatError::Kind::invalid_content, "trace: trailing bytes after payload");
  }
  return trace;
}

void save_trace(const Trace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_trace(trace, out);
}

Trace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return read_trace(in);
}

}  // namespace mfgprep
