#include "mfgprep/csr_graph.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "mfgprep/error.hpp"
#include "mfgprep/hash.hpp"

namespace mfgprep {

CsrGraph::CsrGraph(std::vector<EdgeSlot> indptr, std::vector<NodeId> indices)
    : indptr_(std::move(indptr)), indices_(std::move(indices)) {
  if (indptr_.empty()) throw InvalidArgument("indptr must have num_nodes + 1 entries");
  if (indptr_.front() != 0) throw InvalidArgument("indptr[0] must be 0");
  for (std::size_t i = 1; i < indptr_.size(); ++i) {
    if (indptr_[i] < indptr_[i - 1]) {
      throw InvalidArgument("indptr decreases at position " + std::to_string(i));
    }
  }
  if (indptr_.back() != indices_.size()) {
    throw InvalidArgument("indptr[num_nodes] = " + std::to_string(indptr_.back()) +
                          " but there are " + std::to_string(indices_.size()) + " indices");
  }
  const std::size_t n = num_nodes();
  if (n > std::size_t{std::numeric_limits<NodeId>::max()} + 1) {
    throw InvalidArgument("node count exceeds the 32-bit node ID range");
  }
  for (std::size_t e = 0; e < indices_.size(); ++e) {
    if (indices_[e] >= n) {
      throw InvalidArgument("indices[" + std::to_string(e) + "] = " +
                            std::to_string(indices_[e]) + " out of range");
    }
  }
}

CsrGraph CsrGraph::from_edge_list(std::span<const Edge> edges, std::size_t num_nodes,
                                  bool make_undirected) {
  if (num_nodes > std::size_t{std::numeric_limits<NodeId>::max()} + 1) {
    throw InvalidArgument("node count exceeds the 32-bit node ID range");
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.src >= num_nodes || e.dst >= num_nodes) {
      throw EdgeOutOfRange(i, "edge " + std::to_string(i) + " (" + std::to_string(e.src) + ", " +
                                  std::to_string(e.dst) + ") has an endpoint >= num_nodes " +
                                  std::to_string(num_nodes));
    }
  }

  std::vector<EdgeSlot> indptr(num_nodes + 1, 0);
  for (const Edge& e : edges) {
    ++indptr[e.src + 1];
    if (make_undirected) ++indptr[e.dst + 1];
  }
  for (std::size_t v = 0; v < num_nodes; ++v) indptr[v + 1] += indptr[v];

  // Stable counting sort over the emitted (src, dst), (dst, src) sequence.
  std::vector<EdgeSlot> cursor(indptr.begin(), indptr.end() - 1);
  std::vector<NodeId> indices(indptr.back());
  for (const Edge& e : edges) {
    indices[cursor[e.src]++] = e.dst;
    if (make_undirected) indices[cursor[e.dst]++] = e.src;
  }

  CsrGraph g;
  g.indptr_ = std::move(indptr);
  g.indices_ = std::move(indices);
  return g;
}

std::size_t CsrGraph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t v = 0; v < num_nodes(); ++v) {
    best = std::max(best, degree(static_cast<NodeId>(v)));
  }
  return best;
}

std::uint64_t CsrGraph::checksum() const noexcept {
  Hasher h;
  h.add_range(std::span<const EdgeSlot>(indptr_));
  h.add_range(std::span<const NodeId>(indices_));
  return h.value();
}

DegreeHistogram degree_histogram(const CsrGraph& g) {
  DegreeHistogram hist;
  for (std::size_t v = 0; v < g.num_nodes(); ++v) ++hist[g.degree(static_cast<NodeId>(v))];
  return hist;
}

}  // namespace mfgprep
