#include "mfgprep/throughput.hpp"

#include <chrono>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "mfgprep/error.hpp"
#include "mfgprep/mpmc_queue.hpp"

namespace mfgprep {
namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double time_seconds(F&& f) {
  const auto t0 = Clock::now();
  f();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

void parallel_for_dynamic(std::size_t workers, std::size_t n,
                          const std::function<void(std::size_t, std::size_t)>& fn) {
  if (workers == 0) throw InvalidArgument("parallel_for_dynamic: need at least one worker");
  MpmcQueue<std::size_t> queue(n);
  for (std::size_t i = 0; i < n; ++i) queue.try_push(i);

  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&](std::size_t w) {
    try {
      while (auto i = queue.try_pop()) fn(*i, w);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      while (queue.try_pop()) {
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) threads.emplace_back(body, w);
  body(0);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<ThroughputRow> measure_prep_throughput(const CsrGraph& g, const FeatureMatrix& fm,
                                                   const LabelVector& y, const EpochPlan& plan,
                                                   const PrepConfig& base,
                                                   std::span<const std::size_t> thread_counts,
                                                   std::uint64_t global_seed) {
  std::vector<ThroughputRow> rows;
  for (std::size_t threads : thread_counts) {
    PrepConfig cfg = base;
    cfg.num_workers = threads;
    cfg.validate();
    ThroughputRow row;
    row.threads = threads;

    std::vector<std::vector<NodeId>> node_sets(plan.size());
    row.sampling_s = time_seconds([&] {
      parallel_for_dynamic(threads, plan.size(), [&](std::size_t i, std::size_t) {
        Mfg mfg = multihop_mfg(g, plan.batches[i], cfg.fanouts, global_seed, cfg.variant);
        node_sets[i].assign(mfg.id_map.globals().begin(), mfg.id_map.globals().end());
      });
    });

    std::vector<std::vector<float>> scratch(threads);
    row.slicing_s = time_seconds([&] {
      parallel_for_dynamic(threads, plan.size(), [&](std::size_t i, std::size_t w) {
        auto& buffer = scratch[w];
        buffer.resize(node_sets[i].size() * fm.cols());
        slice_features(fm, node_sets[i], buffer);
        const auto labels = slice_labels(y, plan.batches[i]);
        (void)labels;
      });
    });

    row.both_s = time_seconds([&] {
      EpochPrep prep(g, fm, y, plan, cfg, global_seed);
      while (prep.next()) {
      }
    });
    rows.push_back(row);
  }
  return rows;
}

void write_throughput_csv(std::span<const ThroughputRow> rows, std::ostream& out) {
  out << "threads,sampling_s,slicing_s,both_s\n";
  for (const auto& r : rows) {
    out << r.threads << ',' << r.sampling_s << ',' << r.slicing_s << ',' << r.both_s << '\n';
  }
}

}  // namespace mfgprep
