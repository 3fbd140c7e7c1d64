#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hds/de.hpp"
#include "hds/functions.hpp"

namespace hds {

/// Paired HDS-vs-Sobol optimizer comparison grid.
struct ExperimentPlan {
  std::vector<FunctionId> functions;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> sizes;
  std::size_t trials = 0;
  /// Trial t runs with seed base_seed + t for sampling and optimization alike.
  std::uint64_t base_seed = 0;
  DeConfig de;

  void validate() const;
  /// Stable text identity of every setting that influences the records.
  std::string canonical() const;
  /// Hex digest of canonical().
  std::string fingerprint() const;
};

struct RunOptions {
  /// Append-only records file; existing records are kept and their keys skipped.
  std::optional<std::filesystem::path> records_path;
  std::size_t workers = 1;
  /// Stop after this many new records (simulates an interrupted run).
  std::optional<std::size_t> stop_after;
  std::function<void(const TrialRecord&)> on_record;
};

/// Runs one optimizer trial: build the initial population, run DE, time both.
TrialRecord run_trial(InitMethod method, FunctionId function, std::size_t dims, std::size_t n,
                      std::uint64_t trial, const ExperimentPlan& plan);

/// Every (function, dims, n, trial, method) cell of the plan, in canonical
/// order. When a records file is given it is rewritten sorted at the end.
std::vector<TrialRecord> run_experiment(const ExperimentPlan& plan, const RunOptions& options = {});

/// Canonical record order: function, dims, n, trial, method.
void sort_records(std::vector<TrialRecord>& records);

/// Checks `dir`/plan.json against the plan. Without `resume` an existing
/// records file is an error; with `resume` a different fingerprint is.
/// Throws StateError; writes plan.json when absent.
void prepare_output_dir(const std::filesystem::path& dir, const ExperimentPlan& plan, bool resume);

}  // namespace hds
