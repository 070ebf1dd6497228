#include "mfgprep/ablation.hpp"

#include <chrono>
#include <ostream>

#include "mfgprep/error.hpp"

namespace mfgprep {
namespace {

using Clock = std::chrono::steady_clock;

std::vector<BatchCost> with_prep(std::span<const BatchCost> shapes, std::span<const double> prep_s,
                                 std::size_t workers) {
  std::vector<BatchCost> out(shapes.begin(), shapes.end());
  schedule_prep(out, prep_s, workers);
  return out;
}

AblationRow make_row(const char* label, const Timeline& tl) {
  return {label, tl.makespan_s, tl.blocking};
}

}  // namespace

std::vector<AblationRow> ablation_table(std::span<const BatchCost> shapes,
                                        std::span<const double> baseline_prep_s,
                                        std::span<const double> fast_prep_s,
                                        const AblationSettings& settings) {
  if (baseline_prep_s.size() != shapes.size() || fast_prep_s.size() != shapes.size()) {
    throw InvalidArgument("ablation_table: need one prep duration per batch for each sampler");
  }
  TransferModel validating = settings.transfer;
  validating.validate_on_transfer = true;
  TransferModel streamlined = settings.transfer;
  streamlined.validate_on_transfer = false;

  std::vector<AblationRow> rows;
  rows.push_back(make_row(kAblationLabels[0],
                          run_serial(with_prep(shapes, baseline_prep_s, 1), validating,
                                     settings.compute)));
  rows.push_back(make_row(kAblationLabels[1], run_serial(with_prep(shapes, fast_prep_s, 1),
                                                         validating, settings.compute)));
  const auto parallel = with_prep(shapes, fast_prep_s, settings.workers);
  rows.push_back(make_row(kAblationLabels[2], run_serial(parallel, validating, settings.compute)));
  rows.push_back(make_row(kAblationLabels[3], run_pipelined(parallel, streamlined, settings.compute,
                                                            settings.prefetch_depth)));
  return rows;
}

std::vector<AblationRow> ablation_report(const CsrGraph& g, const FeatureMatrix& fm,
                                         const LabelVector& y, const EpochPlan& plan,
                                         const FanoutSpec& fanouts,
                                         const AblationSettings& settings,
                                         std::uint64_t global_seed,
                                         const SamplerVariant& baseline,
                                         const SamplerVariant& fast) {
  std::vector<BatchCost> shapes(plan.size());
  std::vector<double> baseline_s(plan.size());
  std::vector<double> fast_s(plan.size());
  FeatureBuffer scratch;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    for (const auto* variant : {&baseline, &fast}) {
      const auto t0 = Clock::now();
      PreparedBatch b = prepare_batch(g, fm, y, plan.batches[i], fanouts, *variant, global_seed,
                                      std::move(scratch));
      const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
      (variant == &baseline ? baseline_s : fast_s)[i] = elapsed;
      shapes[i] = {plan.batches[i].batch_id, 0, 0, b.byte_size, b.stats.num_nodes, b.stats.num_edges};
      scratch = std::move(b.features);
    }
  }
  return ablation_table(shapes, baseline_s, fast_s, settings);
}

void write_ablation_csv(std::span<const AblationRow> rows, std::ostream& out) {
  const auto precision = out.precision(12);
  out << "optimization,epoch_s,prep_block_s,transfer_block_s,compute_s\n";
  for (const auto& r : rows) {
    out << '"' << r.label << "\"," << r.epoch_s << ',' << r.blocking.prep << ','
        << r.blocking.transfer << ',' << r.blocking.compute << '\n';
  }
  out.precision(precision);
}

}  // namespace mfgprep
