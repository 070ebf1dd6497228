#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace mfgprep::validation {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  /// Smaller instance counts, for the command-line smoke run.
  bool quick = false;
  /// Where the sweep CSV is written; a temporary directory when empty.
  std::filesystem::path artifact_dir;
  /// Hidden width of the layer-rule check.
  std::size_t hidden = 256;
};

CheckResult check_cross_variant(const SuiteOptions& opt);
CheckResult check_fanout_invariants(const SuiteOptions& opt);
CheckResult check_exact_expansion(const SuiteOptions& opt);
CheckResult check_layer_semantics(const SuiteOptions& opt);
CheckResult check_schedule_independence(const SuiteOptions& opt);
CheckResult check_pipeline_laws(const SuiteOptions& opt);
CheckResult check_round_trip_elimination(const SuiteOptions& opt);
CheckResult check_breakdown(const SuiteOptions& opt);
CheckResult check_scaling_and_sweep(const SuiteOptions& opt);

/// Every check above, in order.
std::vector<CheckResult> run_validation(const SuiteOptions& opt);

}  // namespace mfgprep::validation
