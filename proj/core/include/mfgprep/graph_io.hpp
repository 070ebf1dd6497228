#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "mfgprep/csr_graph.hpp"
#include "mfgprep/features.hpp"

namespace mfgprep {

// Little-endian binary formats.
//
//   CSR:      "MFGC" u32 version=1, u64 num_nodes, u64 num_edges,
//             (num_nodes+1) x u64 indptr, num_edges x u32 indices
//   Features: "FEAT" u32 version=1, u64 rows, u32 cols, u8 dtype (1=f16, 2=f32),
//             3 zero bytes, row-major payload
//   Labels:   "LABL" u32 version=1, u64 rows, u32 num_classes, rows x u32
//
// Loaders distinguish bad magic, version mismatch and truncation through
// FormatError::kind().

inline constexpr std::uint32_t kFormatVersion = 1;

void save_csr(const CsrGraph& g, const std::filesystem::path& path);
CsrGraph load_csr(const std::filesystem::path& path);
void write_csr(const CsrGraph& g, std::ostream& out);
CsrGraph read_csr(std::istream& in);

void save_features(const FeatureMatrix& fm, const std::filesystem::path& path);
FeatureMatrix load_features(const std::filesystem::path& path);

void save_labels(const LabelVector& y, const std::filesystem::path& path);
LabelVector load_labels(const std::filesystem::path& path);

/// One "src dst" pair per line; blank lines and lines starting with '#'
/// are skipped. Malformed lines raise FormatError naming the line number.
std::vector<Edge> read_edge_list(std::istream& in);
std::vector<Edge> read_edge_list(const std::filesystem::path& path);

/// One past the largest endpoint, or 0 for an empty list.
std::size_t infer_num_nodes(std::span<const Edge> edges) noexcept;

}  // namespace mfgprep
