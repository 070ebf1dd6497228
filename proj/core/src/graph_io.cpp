#include "mfgprep/graph_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "mfgprep/error.hpp"

static_assert(std::endian::native == std::endian::little,
              "binary formats assume a little-endian host");

namespace mfgprep {
namespace {

using Magic = std::array<char, 4>;
constexpr Magic kCsrMagic{'M', 'F', 'G', 'C'};
constexpr Magic kFeatMagic{'F', 'E', 'A', 'T'};
constexpr Magic kLablMagic{'L', 'A', 'B', 'L'};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  template <class T>
  void put(const T& value) {
    out_.write(reinterpret_cast<const char*>(&value), sizeof(T));
  }
  template <class T>
  void put_array(std::span<const T> values) {
    out_.write(reinterpret_cast<const char*>(values.data()),
               static_cast<std::streamsize>(values.size_bytes()));
  }
  void check(const char* what) {
    if (!out_) throw IoError(std::string("write failed: ") + what);
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  Reader(std::istream& in, const char* what) : in_(in), what_(what) {}

  void expect_header(const Magic& magic) {
    Magic got{};
    raw(got.data(), got.size());
    if (got != magic) {
      throw FormatError(FormatError::Kind::bad_magic,
                        std::string(what_) + ": bad magic, expected \"" +
                            std::string(magic.data(), 4) + "\"");
    }
    const auto version = get<std::uint32_t>();
    if (version != kFormatVersion) {
      throw FormatError(FormatError::Kind::version_mismatch,
                        std::string(what_) + ": version mismatch, file has " +
                            std::to_string(version) + ", expected " +
                            std::to_string(kFormatVersion));
    }
  }

  template <class T>
  T get() {
    T value{};
    raw(reinterpret_cast<char*>(&value), sizeof(T));
    return value;
  }

  template <class T>
  std::vector<T> get_array(std::uint64_t count) {
    // Grow in bounded chunks so a corrupt count cannot trigger a huge
    // allocation before truncation is detected.
    constexpr std::uint64_t kChunk = 1u << 20;
    std::vector<T> values;
    while (values.size() < count) {
      const std::uint64_t take = std::min<std::uint64_t>(kChunk, count - values.size());
      const std::size_t old = values.size();
      values.resize(old + take);
      raw(reinterpret_cast<char*>(values.data() + old), take * sizeof(T));
    }
    return values;
  }

  void expect_end() {
    if (in_.peek() != std::char_traits<char>::eof()) {
      throw FormatError(FormatError::Kind::invalid_content,
                        std::string(what_) + ": trailing bytes after payload");
    }
  }

 private:
  void raw(char* dst, std::size_t n) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in_.gcount()) != n) {
      throw FormatError(FormatError::Kind::truncated, std::string(what_) + ": truncated file");
    }
  }

  std::istream& in_;
  const char* what_;
};

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return in;
}

}  // namespace

void write_csr(const CsrGraph& g, std::ostream& out) {
  Writer w(out);
  w.put(kCsrMagic);
  w.put(kFormatVersion);
  w.put(static_cast<std::uint64_t>(g.num_nodes()));
  w.put(static_cast<std::uint64_t>(g.num_edges()));
  w.put_array(g.indptr());
  w.put_array(g.indices());
  w.check("csr");
}

CsrGraph read_csr(std::istream& in) {
  Reader r(in, "csr");
  r.expect_header(kCsrMagic);
  const auto num_nodes = r.get<std::uint64_t>();
  const auto num_edges = r.get<std::uint64_t>();
  if (num_nodes > std::uint64_t{std::numeric_limits<NodeId>::max()} + 1) {
    throw FormatError(FormatError::Kind::invalid_content, "csr: num_nodes exceeds u32 range");
  }
  auto indptr = r.get_array<EdgeSlot>(num_nodes + 1);
  auto indices = r.get_array<NodeId>(num_edges);
  r.expect_end();
  try {
    return CsrGraph(std::move(indptr), std::move(indices));
  } catch (const InvalidArgument& e) {
    throw FormatError(FormatError::Kind::invalid_content, std::string("csr: ") + e.what());
  }
}

void save_csr(const CsrGraph& g, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_csr(g, out);
}

CsrGraph load_csr(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_csr(in);
}

void save_features(const FeatureMatrix& fm, const std::filesystem::path& path) {
  if (fm.cols() > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("feature dimension exceeds u32");
  }
  auto out = open_out(path);
  Writer w(out);
  w.put(kFeatMagic);
  w.put(kFormatVersion);
  w.put(static_cast<std::uint64_t>(fm.rows()));
  w.put(static_cast<std::uint32_t>(fm.cols()));
  w.put(static_cast<std::uint8_t>(fm.dtype()));
  const std::array<std::uint8_t, 3> padding{};
  w.put(padding);
  if (fm.dtype() == Dtype::f16) {
    w.put_array(fm.f16_data());
  } else {
    w.put_array(fm.f32_data());
  }
  w.check("features");
}

FeatureMatrix load_features(const std::filesystem::path& path) {
  auto in = open_in(path);
  Reader r(in, "features");
  r.expect_header(kFeatMagic);
  const auto rows = r.get<std::uint64_t>();
  const auto cols = r.get<std::uint32_t>();
  const auto dtype = r.get<std::uint8_t>();
  r.get<std::array<std::uint8_t, 3>>();
  const std::uint64_t count = rows * cols;
  FeatureMatrix fm;
  if (dtype == static_cast<std::uint8_t>(Dtype::f16)) {
    fm = FeatureMatrix::from_f16_bits(rows, cols, r.get_array<std::uint16_t>(count));
  } else if (dtype == static_cast<std::uint8_t>(Dtype::f32)) {
    fm = FeatureMatrix::from_f32(rows, cols, r.get_array<float>(count));
  } else {
    throw FormatError(FormatError::Kind::invalid_content,
                      "features: unknown dtype tag " + std::to_string(dtype));
  }
  r.expect_end();
  return fm;
}

void save_labels(const LabelVector& y, const std::filesystem::path& path) {
  auto out = open_out(path);
  Writer w(out);
  w.put(kLablMagic);
  w.put(kFormatVersion);
  w.put(static_cast<std::uint64_t>(y.size()));
  w.put(y.num_classes());
  w.put_array(y.values());
  w.check("labels");
}

LabelVector load_labels(const std::filesystem::path& path) {
  auto in = open_in(path);
  Reader r(in, "labels");
  r.expect_header(kLablMagic);
  const auto rows = r.get<std::uint64_t>();
  const auto num_classes = r.get<std::uint32_t>();
  auto values = r.get_array<std::uint32_t>(rows);
  r.expect_end();
  try {
    return LabelVector(std::move(values), num_classes);
  } catch (const InvalidArgument& e) {
    throw FormatError(FormatError::Kind::invalid_content, std::string("labels: ") + e.what());
  }
}

std::vector<Edge> read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::uint64_t src = 0;
    std::uint64_t dst = 0;
    std::string rest;
    if (!(fields >> src >> dst) || (fields >> rest)) {
      throw FormatError(FormatError::Kind::invalid_content,
                        "edge list: malformed line " + std::to_string(line_no));
    }
    if (src > std::numeric_limits<NodeId>::max() || dst > std::numeric_limits<NodeId>::max()) {
      throw FormatError(FormatError::Kind::invalid_content,
                        "edge list: node ID exceeds u32 on line " + std::to_string(line_no));
    }
    edges.push_back({static_cast<NodeId>(src), static_cast<NodeId>(dst)});
  }
  return edges;
}

std::vector<Edge> read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return read_edge_list(in);
}

std::size_t infer_num_nodes(std::span<const Edge> edges) noexcept {
  std::size_t n = 0;
  for (const Edge& e : edges) n = std::max<std::size_t>(n, std::max(e.src, e.dst) + std::size_t{1});
  return n;
}

}  // namespace mfgprep
