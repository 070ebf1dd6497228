#include "mfgprep/epoch_prep.hpp"

#include <atomic>
#include <condition_variable>
#include <map>
#include <mutex>
#include <string>
#include <thread>

#include "mfgprep/bounded_queue.hpp"
#include "mfgprep/error.hpp"
#include "mfgprep/mpmc_queue.hpp"

namespace mfgprep {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

struct Item {
  std::size_t position = 0;
  PreparedBatch batch;
};

}  // namespace

void PrepConfig::validate() const {
  if (num_workers == 0) throw InvalidArgument("num_workers must be at least 1");
  if (fanouts.per_hop.empty()) throw InvalidArgument("fanouts must have at least one hop");
}

double PrepReport::total_sampling_s() const noexcept {
  double total = 0;
  for (const auto& b : batches) total += b.sampling_s;
  return total;
}

double PrepReport::total_slicing_s() const noexcept {
  double total = 0;
  for (const auto& b : batches) total += b.slicing_s;
  return total;
}

struct EpochPrep::Impl {
  Impl(const CsrGraph& g_, const FeatureMatrix& fm_, const LabelVector& y_,
       const EpochPlan& plan_, PrepConfig cfg_, std::uint64_t seed_)
      : g(g_),
        fm(fm_),
        y(y_),
        plan(plan_),
        cfg(std::move(cfg_)),
        global_seed(seed_),
        window(cfg.effective_queue_capacity()),
        input(plan.size()),
        output(cfg.effective_queue_capacity()),
        pool(cfg.effective_queue_capacity() + cfg.num_workers),
        active(cfg.num_workers) {
    timings.resize(plan.size());
    for (std::size_t i = 0; i < plan.size(); ++i) input.try_push(i);
    start = Clock::now();
    workers.reserve(cfg.num_workers);
    for (std::size_t w = 0; w < cfg.num_workers; ++w) workers.emplace_back([this, w] { work(w); });
  }

  ~Impl() {
    stop.store(true);
    pool.shutdown();
    output.close();
    {
      std::lock_guard lock(window_mutex);
    }
    window_cv.notify_all();
    for (auto& t : workers) t.join();
  }

  void work(std::size_t w) {
    try {
      while (!stop.load(std::memory_order_relaxed)) {
        const auto position = input.try_pop();
        if (!position) break;
        if (!cfg.prefetch || cfg.delivery == Delivery::in_order) {
          std::unique_lock lock(window_mutex);
          window_cv.wait(lock, [&] {
            return stop.load() || *position < (cfg.prefetch ? delivered + window : requested);
          });
          if (stop.load()) break;
        }
        const auto t0 = Clock::now();
        FeatureBuffer buffer = pool.acquire();
        const SeedBatch& seeds = plan.batches[*position];
        const auto t1 = Clock::now();
        Mfg mfg = multihop_mfg(g, seeds, cfg.fanouts, global_seed, cfg.variant);
        const auto t2 = Clock::now();
        PreparedBatch batch = slice_batch(std::move(mfg), fm, y, std::move(buffer));
        const auto t3 = Clock::now();

        BatchTiming& timing = timings[*position];
        timing.batch_id = seeds.batch_id;
        timing.worker = w;
        timing.start_s = seconds_between(start, t0);
        timing.sampling_s = seconds_between(t1, t2);
        timing.slicing_s = seconds_between(t2, t3);
        if (!output.push(Item{*position, std::move(batch)})) break;
        timing.ready_s = seconds_between(start, Clock::now());
      }
    } catch (const PrepError&) {
      if (!stop.load()) output.fail(std::current_exception());
    } catch (...) {
      output.fail(std::current_exception());
    }
    if (active.fetch_sub(1) == 1) {
      wall_s = seconds_between(start, Clock::now());
      output.close();
    }
  }

  std::optional<PreparedBatch> next() {
    if (next_position == plan.size()) {
      if (!finished) {
        // Wait for the workers to close the queue so the report is final.
        if (output.pop()) throw PrepError("unexpected extra batch after the end of the epoch");
        finished = true;
      }
      return std::nullopt;
    }
    if (!cfg.prefetch) {
      {
        std::lock_guard lock(window_mutex);
        requested = next_position + 1;
      }
      window_cv.notify_all();
    }
    try {
      if (cfg.delivery == Delivery::completion_order) {
        auto item = output.pop();
        if (!item) throw PrepError("batch preparation ended before the epoch was complete");
        mark_delivered();
        return std::move(item->batch);
      }
      auto found = stash.find(next_position);
      while (found == stash.end()) {
        auto item = output.pop();
        if (!item) throw PrepError("batch preparation ended before the epoch was complete");
        found = stash.emplace(item->position, std::move(item->batch)).first;
        if (item->position != next_position) found = stash.end();
      }
      PreparedBatch batch = std::move(found->second);
      stash.erase(found);
      mark_delivered();
      return batch;
    } catch (const PrepError&) {
      throw;
    } catch (const std::exception& e) {
      throw PrepError(std::string("batch preparation failed: ") + e.what());
    }
  }

  void mark_delivered() {
    ++next_position;
    {
      std::lock_guard lock(window_mutex);
      delivered = next_position;
    }
    window_cv.notify_all();
  }

  const CsrGraph& g;
  const FeatureMatrix& fm;
  const LabelVector& y;
  const EpochPlan& plan;
  const PrepConfig cfg;
  const std::uint64_t global_seed;
  const std::size_t window;

  MpmcQueue<std::size_t> input;
  BoundedQueue<Item> output;
  BufferPool pool;
  std::vector<BatchTiming> timings;
  std::atomic<std::size_t> active;
  std::atomic<bool> stop{false};
  Clock::time_point start;
  double wall_s = 0;  // written by the last worker before output.close()

  std::mutex window_mutex;
  std::condition_variable window_cv;
  std::size_t delivered = 0;
  std::size_t requested = 0;

  // Consumer-side state.
  std::size_t next_position = 0;
  bool finished = false;
  std::map<std::size_t, PreparedBatch> stash;

  std::vector<std::thread> workers;
};

EpochPrep::EpochPrep(const CsrGraph& g, const FeatureMatrix& fm, const LabelVector& y,
                     const EpochPlan& plan, PrepConfig cfg, std::uint64_t global_seed) {
  cfg.validate();
  if (fm.rows() != g.num_nodes() || y.size() != g.num_nodes()) {
    throw InvalidArgument("features and labels must have one row per graph node");
  }
  impl_ = std::make_unique<Impl>(g, fm, y, plan, std::move(cfg), global_seed);
}

EpochPrep::~EpochPrep() = default;

std::optional<PreparedBatch> EpochPrep::next() { return impl_->next(); }

PrepReport EpochPrep::report() const {
  PrepReport r;
  r.num_workers = impl_->cfg.num_workers;
  r.batches = impl_->timings;
  r.wall_s = impl_->wall_s;
  r.peak_resident = impl_->pool.peak_in_use();
  return r;
}

std::chrono::steady_clock::time_point EpochPrep::start_time() const noexcept {
  return impl_->start;
}

const PrepConfig& EpochPrep::config() const noexcept { return impl_->cfg; }

std::vector<PreparedBatch> run_epoch_prep(const CsrGraph& g, const FeatureMatrix& fm,
                                          const LabelVector& y, const EpochPlan& plan,
                                          const PrepConfig& cfg, std::uint64_t global_seed,
                                          PrepReport* report) {
  EpochPrep prep(g, fm, y, plan, cfg, global_seed);
  std::vector<PreparedBatch> out;
  out.reserve(plan.size());
  while (auto batch = prep.next()) {
    batch->features.detach();
    out.push_back(std::move(*batch));
  }
  if (report) *report = prep.report();
  return out;
}

}  // namespace mfgprep
