#include "mfgprep/live.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <exception>
#include <functional>
#include <future>
#include <mutex>
#include <thread>

#include "mfgprep/bounded_queue.hpp"
#include "mfgprep/error.hpp"

namespace mfgprep {
namespace {

using Clock = std::chrono::steady_clock;

/// Single-threaded executor standing in for one device stream.
class Channel {
 public:
  Channel() : jobs_(1), thread_([this] { loop(); }) {}
  ~Channel() {
    jobs_.close();
    thread_.join();
  }

  /// Runs a calibrated wait of `seconds` on the channel thread and blocks
  /// until it finishes.
  void run(double seconds) {
    std::packaged_task<void()> task([seconds] { calibrated_wait(seconds); });
    auto done = task.get_future();
    jobs_.push(std::move(task));
    done.get();
  }

 private:
  void loop() {
    while (auto job = jobs_.pop()) (*job)();
  }

  BoundedQueue<std::packaged_task<void()>> jobs_;
  std::thread thread_;
};

struct Staged {
  PreparedBatch batch;
  double ready = 0;
  Interval transfer;
};

}  // namespace

void calibrated_wait(double seconds) {
  if (seconds <= 0) return;
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
  constexpr auto kSpin = std::chrono::microseconds(100);
  if (deadline - Clock::now() > kSpin) std::this_thread::sleep_until(deadline - kSpin);
  while (Clock::now() < deadline) {
  }
}

Timeline run_live(EpochPrep& prep, const TransferModel& tm, const ComputeModel& cm,
                  ExecutionMode mode, std::size_t prefetch_depth) {
  if (prefetch_depth == 0) throw InvalidArgument("prefetch_depth must be at least 1");
  const auto origin = prep.start_time();
  auto now = [origin] { return std::chrono::duration<double>(Clock::now() - origin).count(); };

  Timeline tl;
  Channel compute;

  auto record = [&](const PreparedBatch& b, double ready, Interval transfer, Interval comp) {
    BatchEvents ev;
    ev.batch_id = b.mfg.seeds.batch_id;
    ev.prep = {ready, ready};
    ev.transfer = transfer;
    ev.compute = comp;
    ev.bytes = b.byte_size;
    ev.num_nodes = b.stats.num_nodes;
    ev.num_edges = b.stats.num_edges;
    tl.batches.push_back(ev);
  };

  if (mode == ExecutionMode::serial) {
    Channel transfer;
    while (true) {
      const double asked = now();
      auto batch = prep.next();
      const double got = now();
      if (!batch) break;
      tl.blocking.prep += got - asked;

      const double t_start = now();
      transfer.run(tm.time(batch->byte_size));
      const double t_end = now();
      tl.blocking.transfer += t_end - got;

      const double c_start = now();
      compute.run(cm.time(batch->stats.num_nodes, batch->stats.num_edges));
      const double c_end = now();
      tl.blocking.compute += c_end - t_end;
      record(*batch, got, {t_start, t_end}, {c_start, c_end});
      tl.makespan_s = c_end;
    }
    return tl;
  }

  // Pipelined: the feeder thread is the transfer channel. It may start
  // transfer i once compute i - prefetch_depth has started.
  BoundedQueue<Staged> staged(prefetch_depth + 1);
  std::mutex gate_mutex;
  std::condition_variable gate_cv;
  std::size_t computes_started = 0;
  bool abort = false;

  std::thread feeder([&] {
    try {
      for (std::size_t i = 0;; ++i) {
        {
          std::unique_lock lock(gate_mutex);
          gate_cv.wait(lock, [&] { return abort || i < computes_started + prefetch_depth; });
          if (abort) break;
        }
        auto batch = prep.next();
        if (!batch) break;
        Staged s;
        s.ready = now();
        s.transfer.start = s.ready;
        calibrated_wait(tm.time(batch->byte_size));
        s.transfer.end = now();
        s.batch = std::move(*batch);
        if (!staged.push(std::move(s))) break;
      }
      staged.close();
    } catch (...) {
      staged.fail(std::current_exception());
    }
  });

  try {
    while (true) {
      const double asked = now();
      auto item = staged.pop();
      const double got = now();
      if (!item) break;
      const double wait = got - asked;
      const double prep_wait = std::clamp(item->ready - asked, 0.0, wait);
      tl.blocking.prep += prep_wait;
      tl.blocking.transfer += wait - prep_wait;
      {
        std::lock_guard lock(gate_mutex);
        ++computes_started;
      }
      gate_cv.notify_all();
      const double c_start = now();
      compute.run(cm.time(item->batch.stats.num_nodes, item->batch.stats.num_edges));
      const double c_end = now();
      tl.blocking.compute += c_end - got;
      record(item->batch, item->ready, item->transfer, {c_start, c_end});
      tl.makespan_s = c_end;
    }
  } catch (...) {
    {
      std::lock_guard lock(gate_mutex);
      abort = true;
    }
    gate_cv.notify_all();
    staged.close();
    feeder.join();
    throw;
  }
  feeder.join();
  return tl;
}

std::vector<BatchCost> replay_costs(const Timeline& live, const PrepReport& report) {
  std::vector<BatchCost> out;
  out.reserve(live.batches.size());
  for (std::size_t i = 0; i < live.batches.size(); ++i) {
    const BatchEvents& ev = live.batches[i];
    BatchCost c;
    c.batch_id = ev.batch_id;
    if (ev.batch_id < report.batches.size()) {
      c.prep_start_s = report.batches[ev.batch_id].start_s;
      c.ready_s = report.batches[ev.batch_id].ready_s;
    } else {
      c.ready_s = ev.prep.end;
    }
    c.bytes = ev.bytes;
    c.num_nodes = ev.num_nodes;
    c.num_edges = ev.num_edges;
    out.push_back(c);
  }
  return out;
}

}  // namespace mfgprep
