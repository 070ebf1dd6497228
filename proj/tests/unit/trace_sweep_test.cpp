#include <gtest/gtest.h>

#include <filesystem>
#include <numeric>
#include <sstream>

#include "mfgprep/error.hpp"
#include "mfgprep/sweep.hpp"
#include "mfgprep/synth.hpp"

namespace mfgprep {
namespace {

struct Recorded {
  CsrGraph g = synth_graph(6000, 10.0, 2.3, 9);
  EpochPlan plan;
  FanoutSpec fanouts{{15, 10, 5}};
  Trace trace;

  Recorded() {
    std::vector<NodeId> ids(1500);
    std::iota(ids.begin(), ids.end(), NodeId{0});
    plan = make_epoch_plan(ids, 512, 9);
    trace = record_trace(g, plan, fanouts, 9);
  }
};

std::string serialize(const Trace& t) {
  std::ostringstream out;
  write_trace(t, out);
  return out.str();
}

TEST(Trace, RecordingIsByteIdentical) {
  Recorded s;
  EXPECT_EQ(serialize(s.trace), serialize(record_trace(s.g, s.plan, s.fanouts, 9)));
  EXPECT_EQ(s.trace.num_hops(), 3u);
  EXPECT_EQ(s.trace.records.size(), s.plan.size() * 3);
  EXPECT_EQ(s.trace.graph_checksum, s.g.checksum());
}

TEST(Trace, HopsChainThroughTheExpansion) {
  Recorded s;
  for (std::size_t b = 0; b < s.plan.size(); ++b) {
    const Mfg mfg = multihop_mfg(s.g, s.plan.batches[b], s.fanouts, 9, kBaselineVariant);
    const auto globals = mfg.id_map.globals();
    for (std::uint32_t h = 0; h < 3; ++h) {
      const TraceRecord& r = s.trace.records[b * 3 + h];
      EXPECT_EQ(r.batch_id, b);
      EXPECT_EQ(r.hop, h);
      EXPECT_EQ(r.fanout, s.fanouts.per_hop[h]);
      if (h == 0) EXPECT_EQ(r.dst_ids, s.plan.batches[b].dst_ids);
      const MfgLayer& layer = mfg.layers[2 - h];
      ASSERT_EQ(r.dst_ids.size(), layer.num_dst);
      EXPECT_TRUE(std::equal(r.dst_ids.begin(), r.dst_ids.end(), globals.begin()));
      if (h > 0) EXPECT_EQ(r.dst_ids.size(), mfg.layers[3 - h].num_src);
    }
  }
}

TEST(Trace, FileRoundTripAndErrors) {
  Recorded s;
  const auto dir = std::filesystem::temp_directory_path() / "mfgprep_trace_test";
  std::filesystem::create_directories(dir);
  save_trace(s.trace, dir / "t.bin");
  EXPECT_EQ(load_trace(dir / "t.bin"), s.trace);
  EXPECT_THROW(load_trace(dir / "missing.bin"), IoError);

  const std::string bytes = serialize(s.trace);
  auto kind_of = [](const std::string& data) {
    std::istringstream in(data);
    try {
      read_trace(in);
    } catch (const FormatError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "no error";
    return FormatError::Kind::invalid_content;
  };
  EXPECT_EQ(kind_of("XXXX" + bytes.substr(4)), FormatError::Kind::bad_magic);
  std::string v2 = bytes;
  v2[4] = 2;
  EXPECT_EQ(kind_of(v2), FormatError::Kind::version_mismatch);
  EXPECT_EQ(kind_of(bytes.substr(0, bytes.size() - 3)), FormatError::Kind::truncated);
  EXPECT_EQ(kind_of(bytes + "z"), FormatError::Kind::invalid_content);
  std::filesystem::remove_all(dir);
}

TEST(Replay, DigestsAgreeAcrossVariants) {
  Recorded s;
  const std::uint64_t ref = replay_variant(s.trace, s.g, kBaselineVariant, 1).digest;
  EXPECT_NE(ref, 0u);
  for (const auto& v : list_variants()) EXPECT_EQ(replay_variant(s.trace, s.g, v, 1).digest, ref) << v.descriptor();
}

TEST(Replay, RepetitionShapes) {
  Recorded s;
  const ReplayResult one = replay_variant(s.trace, s.g, kFastVariant, 1);
  const ReplayResult five = replay_variant(s.trace, s.g, kFastVariant);
  EXPECT_EQ(one.rep_hop_s.size(), 1u);
  EXPECT_EQ(one.hop_min_s, one.hop_mean_s);
  ASSERT_EQ(five.rep_hop_s.size(), 5u);
  ASSERT_EQ(five.hop_min_s.size(), 3u);
  for (std::size_t h = 0; h < 3; ++h) {
    double lo = five.rep_hop_s[0][h];
    for (const auto& rep : five.rep_hop_s) lo = std::min(lo, rep[h]);
    EXPECT_EQ(five.hop_min_s[h], lo);
    EXPECT_LE(five.hop_min_s[h], five.hop_mean_s[h]);
  }
  EXPECT_EQ(one.digest, five.digest);
}

TEST(Replay, EmptyTraceAndBadInputs) {
  Recorded s;
  Trace empty;
  empty.graph_checksum = s.g.checksum();
  const ReplayResult r = replay_variant(empty, s.g, kFastVariant);
  EXPECT_EQ(r.digest, 0u);
  EXPECT_TRUE(r.hop_min_s.empty());

  Trace other = s.trace;
  other.graph_checksum ^= 1;
  EXPECT_THROW(replay_variant(other, s.g, kFastVariant), InvalidArgument);
  EXPECT_THROW(replay_variant(s.trace, s.g, kFastVariant, 0), InvalidArgument);
}

TEST(RunningMin, NonIncreasing) {
  const std::vector<double> samples{5, 3, 4, 1, 2};
  EXPECT_EQ(running_min(samples), (std::vector<double>{5, 3, 3, 1, 1}));
  EXPECT_TRUE(running_min({}).empty());
}

TEST(Sweep, AllVariantsAgainstBaseline) {
  Recorded s;
  const auto variants = list_variants();
  const SweepResult r = sweep(s.trace, s.g, variants, kBaselineVariant, 1);
  ASSERT_EQ(r.entries.size(), 18u);
  EXPECT_EQ(r.num_hops, 3u);
  for (const auto& e : r.entries) {
    ASSERT_EQ(e.speedup.size(), 3u);
    if (e.variant == kBaselineVariant) {
      for (double x : e.speedup) EXPECT_EQ(x, 1.0);
    }
  }
  std::ostringstream csv;
  write_sweep_csv(r, csv);
  const std::string text = csv.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "variant,hop,time_s,speedup_vs_baseline");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 55);
  EXPECT_NE(text.find("std_hash/hash_set/twopass,0,"), std::string::npos);
}

TEST(Sweep, BaselineMustBeSwept) {
  Recorded s;
  const std::vector<SamplerVariant> only{kFastVariant};
  EXPECT_THROW(sweep(s.trace, s.g, only, kBaselineVariant, 1), InvalidArgument);
}

TEST(Sweep, MismatchNamesVariant) {
  const DigestMismatch e("flat_probing/bit_set/fused", "diverged");
  EXPECT_EQ(e.variant(), "flat_probing/bit_set/fused");
  EXPECT_STREQ(e.what(), "diverged");
}

}  // namespace
}  // namespace mfgprep
