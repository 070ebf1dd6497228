#pragma once

#include <cstddef>
#include <cstdint>

#include "mfgprep/csr_graph.hpp"

namespace mfgprep {

/// Undirected power-law multigraph from a configuration model.
///
/// Node i (before a seeded relabeling) gets a target degree proportional to
/// (i+1)^(-1/(exponent-1)); round(n * avg_degree / 2) undirected edges are
/// formed by pairing shuffled degree stubs, so self-loops and multi-edges can
/// occur. `exponent` must exceed 1; +infinity gives a near-regular graph.
CsrGraph synth_graph(std::size_t n, double avg_degree, double exponent, std::uint64_t seed);

}  // namespace mfgprep
