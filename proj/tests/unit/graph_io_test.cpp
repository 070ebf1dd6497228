#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mfgprep/error.hpp"
#include "mfgprep/graph_io.hpp"
#include "mfgprep/rng.hpp"
#include "mfgprep/synth.hpp"

namespace mfgprep {
namespace {

namespace fs = std::filesystem;

class GraphIo : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("mfgprep_io_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

std::string bytes_of(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

FormatError::Kind kind_of_read(const std::string& bytes) {
  std::istringstream in(bytes);
  try {
    read_csr(in);
  } catch (const FormatError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "read succeeded";
  return FormatError::Kind::invalid_content;
}

TEST_F(GraphIo, PathRoundTrip) {
  const std::vector<Edge> edges{{0, 1}, {1, 2}};
  const CsrGraph g = CsrGraph::from_edge_list(edges, 3, true);
  save_csr(g, dir_ / "g.csr");
  EXPECT_EQ(load_csr(dir_ / "g.csr"), g);
}

TEST_F(GraphIo, LayoutIsBitExact) {
  const CsrGraph g = CsrGraph::from_edge_list(std::vector<Edge>{{0, 1}}, 2, true);
  std::ostringstream out;
  write_csr(g, out);
  const std::string s = out.str();
  ASSERT_EQ(s.size(), 4u + 4 + 8 + 8 + 3 * 8 + 2 * 4);
  EXPECT_EQ(s.substr(0, 4), "MFGC");
  EXPECT_EQ(s[4], 1);
  EXPECT_EQ(s[8], 2);   // num_nodes
  EXPECT_EQ(s[16], 2);  // num_edges
}

TEST_F(GraphIo, RandomEdgesRoundTripByteIdentical) {
  CounterRng rng(5);
  std::vector<Edge> edges(10000);
  for (auto& e : edges) e = {static_cast<NodeId>(rng.uniform(2000)), static_cast<NodeId>(rng.uniform(2000))};
  const CsrGraph g = CsrGraph::from_edge_list(edges, 2000, false);
  save_csr(g, dir_ / "a.csr");
  const CsrGraph back = load_csr(dir_ / "a.csr");
  EXPECT_EQ(back, g);
  save_csr(back, dir_ / "b.csr");
  EXPECT_EQ(bytes_of(dir_ / "a.csr"), bytes_of(dir_ / "b.csr"));
}

TEST_F(GraphIo, SyntheticRoundTrip) {
  const CsrGraph g = synth_graph(20000, 10.0, 2.5, 3);
  save_csr(g, dir_ / "s.csr");
  EXPECT_EQ(load_csr(dir_ / "s.csr"), g);
}

TEST_F(GraphIo, DistinctErrors) {
  const CsrGraph g = synth_graph(100, 4.0, 2.5, 3);
  std::ostringstream out;
  write_csr(g, out);
  const std::string good = out.str();

  std::string bad_magic = good;
  bad_magic[0] = 'X';
  EXPECT_EQ(kind_of_read(bad_magic), FormatError::Kind::bad_magic);

  std::string bad_version = good;
  bad_version[4] = 2;
  EXPECT_EQ(kind_of_read(bad_version), FormatError::Kind::version_mismatch);

  EXPECT_EQ(kind_of_read(good.substr(0, good.size() - 3)), FormatError::Kind::truncated);
  EXPECT_EQ(kind_of_read(good.substr(0, 10)), FormatError::Kind::truncated);
  EXPECT_EQ(kind_of_read(good + "x"), FormatError::Kind::invalid_content);

  EXPECT_THROW(load_csr(dir_ / "missing.csr"), IoError);
}

TEST_F(GraphIo, FeaturesAndLabelsRoundTrip) {
  for (Dtype dt : {Dtype::f32, Dtype::f16}) {
    const FeatureMatrix fm = generate_features(123, 7, dt, 1);
    save_features(fm, dir_ / "x.feat");
    EXPECT_EQ(load_features(dir_ / "x.feat"), fm);
    const auto bytes = bytes_of(dir_ / "x.feat");
    EXPECT_EQ(bytes.substr(0, 4), "FEAT");
    EXPECT_EQ(static_cast<int>(bytes[20]), dt == Dtype::f16 ? 1 : 2);
    EXPECT_EQ(bytes.size(), 24 + fm.storage_bytes());
  }
  const LabelVector y = generate_labels(50, 4, 2);
  save_labels(y, dir_ / "y.labl");
  EXPECT_EQ(load_labels(dir_ / "y.labl"), y);
  EXPECT_EQ(bytes_of(dir_ / "y.labl").size(), 4 + 4 + 8 + 4 + 50 * 4u);
}

TEST(EdgeList, SkipsCommentsAndBlankLines) {
  std::istringstream in("# header\n0 1\n\n  2\t3  \n# another\n4 0\n");
  const auto edges = read_edge_list(in);
  ASSERT_EQ(edges.size(), 3u);
  EXPECT_EQ(edges[1].src, 2u);
  EXPECT_EQ(edges[1].dst, 3u);
  EXPECT_EQ(infer_num_nodes(edges), 5u);
  std::istringstream bad("0 1\n1 x\n");
  EXPECT_THROW(read_edge_list(bad), FormatError);
}

}  // namespace
}  // namespace mfgprep
