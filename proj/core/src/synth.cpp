#include "mfgprep/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mfgprep/error.hpp"
#include "mfgprep/rng.hpp"

namespace mfgprep {
namespace {

template <class T>
void shuffle(std::vector<T>& values, CounterRng& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = rng.uniform(i);
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace

CsrGraph synth_graph(std::size_t n, double avg_degree, double exponent, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("synth_graph: n must be at least 1");
  if (!(avg_degree >= 0.0) || !std::isfinite(avg_degree)) {
    throw InvalidArgument("synth_graph: avg_degree must be a finite value >= 0");
  }
  if (!(exponent > 1.0)) throw InvalidArgument("synth_graph: exponent must exceed 1");

  const auto num_pairs = static_cast<std::size_t>(std::llround(static_cast<double>(n) * avg_degree / 2.0));
  const std::size_t stubs = 2 * num_pairs;

  std::vector<double> weight(n, 1.0);
  if (std::isfinite(exponent)) {
    const double power = -1.0 / (exponent - 1.0);
    for (std::size_t i = 0; i < n; ++i) weight[i] = std::pow(static_cast<double>(i + 1), power);
  }
  const double total = std::accumulate(weight.begin(), weight.end(), 0.0);

  // Largest-remainder apportionment of `stubs` over the weights.
  std::vector<std::size_t> degree(n);
  std::vector<double> remainder(n);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double share = static_cast<double>(stubs) * weight[i] / total;
    degree[i] = static_cast<std::size_t>(std::floor(share));
    remainder[i] = share - static_cast<double>(degree[i]);
    assigned += degree[i];
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < stubs; k = (k + 1) % n, ++assigned) ++degree[order[k]];
  // Floating-point slack can overshoot by a few stubs; trim from the largest.
  for (std::size_t k = 0; assigned > stubs; ++k) {
    auto& d = degree[k % n];
    if (d > 0) {
      --d;
      --assigned;
    }
  }

  CounterRng rng(derive_key(seed, 0x53594E54u));
  std::vector<NodeId> relabel(n);
  std::iota(relabel.begin(), relabel.end(), NodeId{0});
  shuffle(relabel, rng);

  std::vector<NodeId> stub_owner;
  stub_owner.reserve(stubs);
  for (std::size_t i = 0; i < n; ++i) stub_owner.insert(stub_owner.end(), degree[i], relabel[i]);
  shuffle(stub_owner, rng);

  std::vector<Edge> edges(num_pairs);
  for (std::size_t k = 0; k < num_pairs; ++k) edges[k] = {stub_owner[2 * k], stub_owner[2 * k + 1]};
  return CsrGraph::from_edge_list(edges, n, /*make_undirected=*/true);
}

}  // namespace mfgprep
