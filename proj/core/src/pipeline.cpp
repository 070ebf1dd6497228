#include "mfgprep/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <queue>

#include <json.hpp>

#include "mfgprep/error.hpp"

namespace mfgprep {

void TransferModel::validate() const {
  if (!(bandwidth_bytes_per_s > 0)) throw InvalidArgument("transfer bandwidth must be positive");
  if (!(efficiency > 0 && efficiency <= 1)) throw InvalidArgument("transfer efficiency must be in (0, 1]");
  if (base_latency_s < 0 || rt_latency_s < 0) throw InvalidArgument("latencies must be non-negative");
}

void ComputeModel::validate() const {
  if (alpha_s < 0 || beta_s_per_node < 0 || gamma_s_per_edge < 0) {
    throw InvalidArgument("compute model coefficients must be non-negative");
  }
}

ComputeModel fit_compute_model(std::span<const ComputeSample> samples) {
  // Normal equations A^T A x = A^T b with rows (1, nodes, edges).
  std::array<std::array<double, 4>, 3> m{};
  for (const auto& s : samples) {
    const std::array<double, 3> row{1.0, static_cast<double>(s.num_nodes),
                                    static_cast<double>(s.num_edges)};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] += row[i] * row[j];
      m[i][3] += row[i] * s.seconds;
    }
  }
  // Gauss-Jordan with partial pivoting; near-singular columns are dropped.
  std::array<bool, 3> pivoted{};
  std::array<int, 3> pivot_row{-1, -1, -1};
  for (int col = 0, r = 0; col < 3 && r < 3; ++col) {
    int best = r;
    for (int i = r + 1; i < 3; ++i) {
      if (std::abs(m[i][col]) > std::abs(m[best][col])) best = i;
    }
    double scale = 0;
    for (int i = 0; i < 3; ++i) scale = std::max(scale, std::abs(m[i][col]));
    if (scale == 0 || std::abs(m[best][col]) <= 1e-12 * scale) continue;
    std::swap(m[r], m[best]);
    const double p = m[r][col];
    for (double& v : m[r]) v /= p;
    for (int i = 0; i < 3; ++i) {
      if (i == r) continue;
      const double factor = m[i][col];
      for (int j = 0; j < 4; ++j) m[i][j] -= factor * m[r][j];
    }
    pivoted[col] = true;
    pivot_row[col] = r;
    ++r;
  }
  std::array<double, 3> x{};
  for (int col = 0; col < 3; ++col) {
    if (pivoted[col]) x[col] = m[pivot_row[col]][3];
  }
  return {x[0], x[1], x[2]};
}

double Timeline::transfer_busy_s() const noexcept {
  double total = 0;
  for (const auto& b : batches) total += b.transfer.duration();
  return total;
}

double Timeline::compute_busy_s() const noexcept {
  double total = 0;
  for (const auto& b : batches) total += b.compute.duration();
  return total;
}

double Timeline::transfer_utilization() const noexcept {
  return makespan_s > 0 ? transfer_busy_s() / makespan_s : 0.0;
}

double Timeline::compute_utilization() const noexcept {
  return makespan_s > 0 ? compute_busy_s() / makespan_s : 0.0;
}

void schedule_prep(std::span<BatchCost> batches, std::span<const double> prep_durations,
                   std::size_t workers) {
  if (workers == 0) throw InvalidArgument("schedule_prep: need at least one worker");
  if (prep_durations.size() != batches.size()) {
    throw InvalidArgument("schedule_prep: one duration per batch required");
  }
  std::priority_queue<double, std::vector<double>, std::greater<>> free_at;
  for (std::size_t w = 0; w < workers; ++w) free_at.push(0.0);
  for (std::size_t i = 0; i < batches.size(); ++i) {
    const double start = free_at.top();
    free_at.pop();
    batches[i].prep_start_s = start;
    batches[i].ready_s = start + prep_durations[i];
    free_at.push(batches[i].ready_s);
  }
}

namespace {

BatchEvents events_for(const BatchCost& b) {
  BatchEvents ev;
  ev.batch_id = b.batch_id;
  ev.prep = {b.prep_start_s, b.ready_s};
  ev.bytes = b.bytes;
  ev.num_nodes = b.num_nodes;
  ev.num_edges = b.num_edges;
  return ev;
}

}  // namespace

Timeline run_serial(std::span<const BatchCost> batches, const TransferModel& tm,
                    const ComputeModel& cm) {
  Timeline tl;
  tl.batches.reserve(batches.size());
  double clock = 0;
  for (const BatchCost& b : batches) {
    BatchEvents ev = events_for(b);
    const double start = std::max(clock, b.ready_s);
    tl.blocking.prep += start - clock;
    ev.transfer = {start, start + tm.time(b.bytes)};
    ev.compute = {ev.transfer.end, ev.transfer.end + cm.time(b.num_nodes, b.num_edges)};
    tl.blocking.transfer += ev.transfer.duration();
    tl.blocking.compute += ev.compute.duration();
    clock = ev.compute.end;
    tl.batches.push_back(ev);
  }
  tl.makespan_s = clock;
  return tl;
}

Timeline run_pipelined(std::span<const BatchCost> batches, const TransferModel& tm,
                       const ComputeModel& cm, std::size_t prefetch_depth) {
  if (prefetch_depth == 0) throw InvalidArgument("prefetch_depth must be at least 1");
  Timeline tl;
  tl.batches.reserve(batches.size());
  double transfer_free = 0;
  double compute_free = 0;  // also the main loop's clock
  for (std::size_t i = 0; i < batches.size(); ++i) {
    const BatchCost& b = batches[i];
    BatchEvents ev = events_for(b);
    const double gate = i >= prefetch_depth ? tl.batches[i - prefetch_depth].compute.start : 0.0;
    const double t_start = std::max({b.ready_s, transfer_free, gate});
    ev.transfer = {t_start, t_start + tm.time(b.bytes)};
    transfer_free = ev.transfer.end;

    const double asked = compute_free;
    const double c_start = std::max(ev.transfer.end, compute_free);
    ev.compute = {c_start, c_start + cm.time(b.num_nodes, b.num_edges)};
    compute_free = ev.compute.end;

    const double wait = c_start - asked;
    const double prep_wait = std::clamp(b.ready_s - asked, 0.0, wait);
    tl.blocking.prep += prep_wait;
    tl.blocking.transfer += wait - prep_wait;
    tl.blocking.compute += ev.compute.duration();
    tl.batches.push_back(ev);
  }
  tl.makespan_s = compute_free;
  return tl;
}

Breakdown breakdown(const Timeline& timeline) {
  Breakdown out;
  out.epoch_s = timeline.makespan_s;
  out.prep_block_s = timeline.blocking.prep;
  out.transfer_block_s = timeline.blocking.transfer;
  out.compute_s = timeline.blocking.compute;
  const double total = timeline.blocking.total();
  if (total > 0) {
    out.prep_pct = 100.0 * out.prep_block_s / total;
    out.transfer_pct = 100.0 * out.transfer_block_s / total;
    out.compute_pct = 100.0 * out.compute_s / total;
  }
  return out;
}

void write_breakdown_csv(std::span<const std::pair<std::string, Breakdown>> rows, std::ostream& out) {
  const auto precision = out.precision(12);
  out << "label,epoch_s,prep_block_s,prep_pct,transfer_block_s,transfer_pct,compute_s,compute_pct\n";
  for (const auto& [label, b] : rows) {
    out << label << ',' << b.epoch_s << ',' << b.prep_block_s << ',' << b.prep_pct << ','
        << b.transfer_block_s << ',' << b.transfer_pct << ',' << b.compute_s << ','
        << b.compute_pct << '\n';
  }
  out.precision(precision);
}

void write_events_csv(const Timeline& timeline, std::ostream& out) {
  const auto precision = out.precision(12);
  out << "batch_id,stage,start_s,end_s\n";
  for (const auto& b : timeline.batches) {
    out << b.batch_id << ",prep," << b.prep.start << ',' << b.prep.end << '\n';
    out << b.batch_id << ",transfer," << b.transfer.start << ',' << b.transfer.end << '\n';
    out << b.batch_id << ",compute," << b.compute.start << ',' << b.compute.end << '\n';
  }
  out.precision(precision);
}

std::string summary_json(const Timeline& timeline) {
  nlohmann::json j;
  j["makespan_s"] = timeline.makespan_s;
  j["blocking"] = {{"prep", timeline.blocking.prep},
                   {"transfer", timeline.blocking.transfer},
                   {"compute", timeline.blocking.compute}};
  j["utilization"] = {{"transfer_channel", timeline.transfer_utilization()},
                      {"compute_channel", timeline.compute_utilization()}};
  return j.dump(2);
}

}  // namespace mfgprep
