#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "mfgprep/types.hpp"

namespace mfgprep {

struct Edge {
  NodeId src;
  NodeId dst;
};

/// Immutable compressed-sparse-row adjacency.
///
/// Neighbors of a node keep their construction order. Multi-edges and
/// self-loops are kept as separate slots.
class CsrGraph {
 public:
  CsrGraph() : indptr_{0} {}

  /// Takes ownership of prebuilt arrays and validates every CSR invariant.
  CsrGraph(std::vector<EdgeSlot> indptr, std::vector<NodeId> indices);

  /// One directed slot per input edge; with `make_undirected` each edge
  /// also contributes its reverse, immediately after it. No deduplication.
  static CsrGraph from_edge_list(std::span<const Edge> edges, std::size_t num_nodes,
                                 bool make_undirected);

  std::size_t num_nodes() const noexcept { return indptr_.size() - 1; }
  std::size_t num_edges() const noexcept { return indices_.size(); }

  std::span<const EdgeSlot> indptr() const noexcept { return indptr_; }
  std::span<const NodeId> indices() const noexcept { return indices_; }

  EdgeSlot row_begin(NodeId v) const noexcept { return indptr_[v]; }
  std::size_t degree(NodeId v) const noexcept {
    return static_cast<std::size_t>(indptr_[v + 1] - indptr_[v]);
  }
  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return std::span<const NodeId>(indices_).subspan(indptr_[v], degree(v));
  }
  std::size_t max_degree() const noexcept;

  /// Structural hash of indptr and indices.
  std::uint64_t checksum() const noexcept;

  friend bool operator==(const CsrGraph&, const CsrGraph&) = default;

 private:
  std::vector<EdgeSlot> indptr_;
  std::vector<NodeId> indices_;
};

/// degree -> number of nodes with exactly that out-degree.
using DegreeHistogram = std::map<std::size_t, std::size_t>;

DegreeHistogram degree_histogram(const CsrGraph& g);

}  // namespace mfgprep
