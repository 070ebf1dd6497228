#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mfgprep/ablation.hpp"
#include "mfgprep/batch.hpp"
#include "mfgprep/epoch_prep.hpp"
#include "mfgprep/error.hpp"
#include "mfgprep/graph_io.hpp"
#include "mfgprep/live.hpp"
#include "mfgprep/pipeline.hpp"
#include "mfgprep/sweep.hpp"
#include "mfgprep/synth.hpp"
#include "mfgprep/throughput.hpp"
#include "mfgprep/trace.hpp"
#include "mfgprep/validation/checks.hpp"

namespace fs = std::filesystem;
using namespace mfgprep;

namespace {

enum Exit { kOk = 0, kUsage = 1, kIo = 2, kValidation = 3 };

struct DatasetOptions {
  std::string graph;
  std::string features;
  std::string labels;
  std::size_t synth_nodes = 100000;
  double synth_degree = 10.0;
  double synth_exponent = 2.5;
  std::size_t feature_dim = 128;
  std::string dtype = "f32";
  std::uint32_t classes = 47;
};

struct RunConfig {
  DatasetOptions data;
  std::uint64_t seed = 0;
  std::string fanouts = "15,10,5";
  std::size_t batch_size = kDefaultBatchSize;
  std::size_t max_batches = 0;
  std::string workers = "1";
  std::string variant = kFastVariant.descriptor();
  std::string out;

  // ingest
  std::string edges;
  bool directed = false;
  std::string out_dir = ".";

  // explore
  std::string variants = "all";
  std::string baseline = kBaselineVariant.descriptor();
  std::size_t reps = kDefaultRepetitions;
  std::string trace_in;
  std::string trace_out;

  // pipeline / ablate
  std::string mode = "virtual";
  std::string schedule = "pipelined";
  std::size_t depth = 1;
  TransferModel transfer;
  ComputeModel compute{2e-3, 1e-8, 1e-9};
  std::string events_out;

  // validate
  bool quick = false;
  std::size_t hidden = 256;
  std::string artifact_dir;
};

struct Dataset {
  CsrGraph graph;
  FeatureMatrix features;
  LabelVector labels;
};

Dtype parse_dtype(const std::string& s) {
  if (s == "f16") return Dtype::f16;
  if (s == "f32") return Dtype::f32;
  throw InvalidArgument("dtype must be f16 or f32, got '" + s + "'");
}

Dataset load_dataset(const DatasetOptions& o, std::uint64_t seed) {
  Dataset d;
  d.graph = o.graph.empty() ? synth_graph(o.synth_nodes, o.synth_degree, o.synth_exponent, seed)
                            : load_csr(o.graph);
  const std::size_t n = d.graph.num_nodes();
  d.features = o.features.empty() ? generate_features(n, o.feature_dim, parse_dtype(o.dtype), seed)
                                  : load_features(o.features);
  d.labels = o.labels.empty() ? generate_labels(n, o.classes, seed) : load_labels(o.labels);
  if (d.features.rows() != n || d.labels.size() != n) {
    throw InvalidArgument("features and labels must have one row per node");
  }
  return d;
}

EpochPlan plan_for(const Dataset& d, const RunConfig& c) {
  std::vector<NodeId> ids(d.graph.num_nodes());
  std::iota(ids.begin(), ids.end(), NodeId{0});
  EpochPlan plan = make_epoch_plan(ids, c.batch_size, c.seed);
  if (c.max_batches != 0 && plan.batches.size() > c.max_batches) plan.batches.resize(c.max_batches);
  return plan;
}

std::vector<std::size_t> parse_counts(const std::string& text) {
  std::vector<std::size_t> out;
  for (std::uint32_t v : FanoutSpec::parse(text).per_hop) out.push_back(v);
  return out;
}

/// Runs `write` against --out, or stdout when --out is empty.
template <class F>
void emit(const std::string& path, F&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write(out);
  if (!out) throw IoError("failed writing " + path);
}

PrepConfig prep_config(const RunConfig& c, std::size_t workers) {
  PrepConfig cfg;
  cfg.num_workers = workers;
  cfg.fanouts = FanoutSpec::parse(c.fanouts);
  cfg.variant = parse_variant(c.variant);
  return cfg;
}

int cmd_ingest(const RunConfig& c) {
  const fs::path dir(c.out_dir);
  fs::create_directories(dir);
  CsrGraph g;
  if (c.edges.empty()) {
    g = synth_graph(c.data.synth_nodes, c.data.synth_degree, c.data.synth_exponent, c.seed);
  } else {
    const auto edges = read_edge_list(fs::path(c.edges));
    g = CsrGraph::from_edge_list(edges, infer_num_nodes(edges), !c.directed);
  }
  save_csr(g, dir / "graph.csr");
  save_features(generate_features(g.num_nodes(), c.data.feature_dim, parse_dtype(c.data.dtype), c.seed),
                dir / "features.feat");
  save_labels(generate_labels(g.num_nodes(), c.data.classes, c.seed), dir / "labels.labl");
  std::cerr << "wrote " << g.num_nodes() << " nodes, " << g.num_edges() << " edge slots to "
            << dir.string() << '\n';
  return kOk;
}

int cmd_sample(const RunConfig& c) {
  const Dataset d = load_dataset(c.data, c.seed);
  const EpochPlan plan = plan_for(d, c);
  const auto threads = parse_counts(c.workers);
  const auto rows = measure_prep_throughput(d.graph, d.features, d.labels, plan, prep_config(c, 1),
                                            threads, c.seed);
  emit(c.out, [&](std::ostream& os) { write_throughput_csv(rows, os); });
  return kOk;
}

int cmd_explore(const RunConfig& c) {
  const Dataset d = load_dataset(c.data, c.seed);
  const Trace trace = c.trace_in.empty()
                          ? record_trace(d.graph, plan_for(d, c), FanoutSpec::parse(c.fanouts), c.seed)
                          : load_trace(c.trace_in);
  if (!c.trace_out.empty()) save_trace(trace, c.trace_out);

  std::vector<SamplerVariant> variants;
  if (c.variants == "all") {
    variants = list_variants();
  } else {
    std::stringstream ss(c.variants);
    for (std::string item; std::getline(ss, item, ',');) variants.push_back(parse_variant(item));
  }
  const SweepResult result = sweep(trace, d.graph, variants, parse_variant(c.baseline), c.reps);
  emit(c.out, [&](std::ostream& os) { write_sweep_csv(result, os); });
  return kOk;
}

int cmd_pipeline(const RunConfig& c) {
  const Dataset d = load_dataset(c.data, c.seed);
  const EpochPlan plan = plan_for(d, c);
  const PrepConfig cfg = prep_config(c, parse_counts(c.workers).front());
  const bool pipelined = c.schedule == "pipelined";

  Timeline tl;
  if (c.mode == "live") {
    EpochPrep prep(d.graph, d.features, d.labels, plan, cfg, c.seed);
    tl = run_live(prep, c.transfer, c.compute, pipelined ? ExecutionMode::pipelined : ExecutionMode::serial,
                  c.depth);
  } else {
    PrepReport report;
    const auto batches = run_epoch_prep(d.graph, d.features, d.labels, plan, cfg, c.seed, &report);
    std::vector<BatchCost> costs;
    for (const auto& b : batches) {
      const BatchTiming& t = report.batches[b.mfg.seeds.batch_id];
      costs.push_back({b.mfg.seeds.batch_id, t.start_s, t.ready_s, b.byte_size, b.stats.num_nodes,
                       b.stats.num_edges});
    }
    tl = pipelined ? run_pipelined(costs, c.transfer, c.compute, c.depth)
                   : run_serial(costs, c.transfer, c.compute);
  }
  if (!c.events_out.empty()) emit(c.events_out, [&](std::ostream& os) { write_events_csv(tl, os); });
  emit(c.out, [&](std::ostream& os) { os << summary_json(tl) << '\n'; });
  return kOk;
}

int cmd_ablate(const RunConfig& c) {
  const Dataset d = load_dataset(c.data, c.seed);
  AblationSettings s;
  s.workers = parse_counts(c.workers).front();
  s.transfer = c.transfer;
  s.compute = c.compute;
  s.prefetch_depth = c.depth;
  const auto rows = ablation_report(d.graph, d.features, d.labels, plan_for(d, c), FanoutSpec::parse(c.fanouts),
                                    s, c.seed, parse_variant(c.baseline), parse_variant(c.variant));
  emit(c.out, [&](std::ostream& os) { write_ablation_csv(rows, os); });
  return kOk;
}

int cmd_validate(const RunConfig& c) {
  validation::SuiteOptions opt;
  opt.seed = c.seed;
  opt.quick = c.quick;
  opt.hidden = c.hidden;
  opt.artifact_dir = c.artifact_dir;
  bool ok = true;
  for (const auto& r : validation::run_validation(opt)) {
    std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.id << ". " << r.name << ": " << r.detail << " ["
              << r.seconds << " s]\n";
    ok = ok && r.passed;
  }
  return ok ? kOk : kValidation;
}

int cmd_stats(const RunConfig& c) {
  const Dataset d = load_dataset(c.data, c.seed);
  emit(c.out, [&](std::ostream& os) {
    os << "degree,count\n";
    for (const auto& [deg, count] : degree_histogram(d.graph)) os << deg << ',' << count << '\n';
  });
  std::cerr << d.graph.num_nodes() << " nodes, " << d.graph.num_edges() << " edge slots, mean degree "
            << (d.graph.num_nodes() ? static_cast<double>(d.graph.num_edges()) / d.graph.num_nodes() : 0.0)
            << '\n';
  return kOk;
}

void add_dataset_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--graph", c.data.graph, "CSR graph file; a synthetic graph is generated when absent");
  cmd->add_option("--features", c.data.features, "feature file; generated when absent");
  cmd->add_option("--labels", c.data.labels, "label file; generated when absent");
  cmd->add_option("--synth-nodes", c.data.synth_nodes, "synthetic node count")->capture_default_str();
  cmd->add_option("--synth-degree", c.data.synth_degree, "synthetic mean degree")->capture_default_str();
  cmd->add_option("--synth-exponent", c.data.synth_exponent, "synthetic power-law exponent")->capture_default_str();
  cmd->add_option("--feature-dim", c.data.feature_dim, "generated feature width")->capture_default_str();
  cmd->add_option("--dtype", c.data.dtype, "generated feature storage (f16|f32)")
      ->check(CLI::IsMember({"f16", "f32"}))
      ->capture_default_str();
  cmd->add_option("--classes", c.data.classes, "generated label classes")->capture_default_str();
}

void add_batch_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--fanouts", c.fanouts, "per-hop fanouts, seeds first")->capture_default_str();
  cmd->add_option("--batch-size", c.batch_size, "seeds per mini-batch")->capture_default_str();
  cmd->add_option("--max-batches", c.max_batches, "limit the epoch to this many batches (0 = all)");
}

void add_model_options(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--bandwidth", c.transfer.bandwidth_bytes_per_s, "peak transfer bandwidth, bytes/s")
      ->capture_default_str();
  cmd->add_option("--efficiency", c.transfer.efficiency, "fraction of peak bandwidth achieved")->capture_default_str();
  cmd->add_option("--base-latency", c.transfer.base_latency_s, "fixed cost per transfer, s")->capture_default_str();
  cmd->add_flag("--validate-transfers", c.transfer.validate_on_transfer, "charge validation round trips");
  cmd->add_option("--round-trips", c.transfer.round_trips, "round trips per validated transfer")->capture_default_str();
  cmd->add_option("--rt-latency", c.transfer.rt_latency_s, "latency of one round trip, s")->capture_default_str();
  cmd->add_option("--alpha", c.compute.alpha_s, "compute cost per batch, s")->capture_default_str();
  cmd->add_option("--beta", c.compute.beta_s_per_node, "compute cost per node, s")->capture_default_str();
  cmd->add_option("--gamma", c.compute.gamma_s_per_edge, "compute cost per edge, s")->capture_default_str();
  cmd->add_option("--depth", c.depth, "prefetch depth")->capture_default_str();
}

int run(int argc, char** argv) {
  CLI::App app{"Mini-batch preparation engine for sampled GNN training"};
  app.require_subcommand(1);
  RunConfig c;
  app.add_option("--seed", c.seed, "seed for every stochastic component")->capture_default_str();

  auto* ingest = app.add_subcommand("ingest", "write CSR, feature and label files");
  ingest->add_option("--edges", c.edges, "text edge list; a synthetic graph is generated when absent");
  ingest->add_flag("--directed", c.directed, "keep edges one-directional");
  ingest->add_option("--out-dir", c.out_dir, "output directory")->capture_default_str();
  add_dataset_options(ingest, c);

  auto* sample = app.add_subcommand("sample", "measure sampling and slicing throughput per thread count");
  add_dataset_options(sample, c);
  add_batch_options(sample, c);
  sample->add_option("--workers", c.workers, "comma-separated thread counts")->capture_default_str();
  sample->add_option("--variant", c.variant, "sampler variant descriptor")->capture_default_str();
  sample->add_option("--out", c.out, "CSV path (default stdout)");

  auto* explore = app.add_subcommand("explore", "record a trace and sweep sampler variants on it");
  add_dataset_options(explore, c);
  add_batch_options(explore, c);
  explore->add_option("--variants", c.variants, "\"all\" or comma-separated descriptors")->capture_default_str();
  explore->add_option("--baseline", c.baseline, "baseline descriptor")->capture_default_str();
  explore->add_option("--reps", c.reps, "timed repetitions per variant")->capture_default_str();
  explore->add_option("--trace", c.trace_in, "replay this trace instead of recording one");
  explore->add_option("--trace-out", c.trace_out, "save the recorded trace");
  explore->add_option("--out", c.out, "CSV path (default stdout)");

  auto* pipeline = app.add_subcommand("pipeline", "run an epoch through the transfer/compute pipeline");
  add_dataset_options(pipeline, c);
  add_batch_options(pipeline, c);
  add_model_options(pipeline, c);
  pipeline->add_option("--mode", c.mode, "virtual clock or live waits")
      ->check(CLI::IsMember({"virtual", "live"}))
      ->capture_default_str();
  pipeline->add_option("--schedule", c.schedule, "serial or pipelined")
      ->check(CLI::IsMember({"serial", "pipelined"}))
      ->capture_default_str();
  pipeline->add_option("--workers", c.workers, "prep threads")->capture_default_str();
  pipeline->add_option("--variant", c.variant, "sampler variant descriptor")->capture_default_str();
  pipeline->add_option("--events-out", c.events_out, "event CSV path");
  pipeline->add_option("--out", c.out, "JSON summary path (default stdout)");

  auto* ablate = app.add_subcommand("ablate", "evaluate the cumulative optimization table");
  add_dataset_options(ablate, c);
  add_batch_options(ablate, c);
  add_model_options(ablate, c);
  c.workers = "1";
  ablate->add_option("--workers", c.workers, "prep threads once shared-memory prep is enabled");
  ablate->add_option("--baseline", c.baseline, "baseline sampler descriptor")->capture_default_str();
  ablate->add_option("--variant", c.variant, "fast sampler descriptor")->capture_default_str();
  ablate->add_option("--out", c.out, "CSV path (default stdout)");

  auto* validate = app.add_subcommand("validate", "run every oracle check");
  validate->add_flag("--quick", c.quick, "smaller instance counts");
  validate->add_option("--hidden", c.hidden, "hidden width of the layer-rule check")->capture_default_str();
  validate->add_option("--artifact-dir", c.artifact_dir, "directory for the sweep CSV");

  auto* stats = app.add_subcommand("stats", "write the degree histogram");
  add_dataset_options(stats, c);
  stats->add_option("--out", c.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    if (e.get_exit_code() != 0) std::cerr << app.help();
    return kUsage;
  }
  if (ablate->parsed() && ablate->count("--workers") == 0) c.workers = "8";

  try {
    if (ingest->parsed()) return cmd_ingest(c);
    if (sample->parsed()) return cmd_sample(c);
    if (explore->parsed()) return cmd_explore(c);
    if (pipeline->parsed()) return cmd_pipeline(c);
    if (ablate->parsed()) return cmd_ablate(c);
    if (validate->parsed()) return cmd_validate(c);
    if (stats->parsed()) return cmd_stats(c);
  } catch (const DigestMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
