#include "hds/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "hds/error.hpp"
#include "hds/io.hpp"
#include "json.hpp"

namespace hds {

void ExperimentPlan::validate() const {
  if (functions.empty()) throw ConfigError("experiment: no functions");
  if (dims.empty()) throw ConfigError("experiment: no dimensions");
  if (sizes.empty()) throw ConfigError("experiment: no sample sizes");
  if (trials < 2) throw ConfigError("experiment: trials must be >= 2");
  for (std::size_t d : dims) {
    if (d < 1) throw ConfigError("experiment: dimensions must be >= 1");
  }
  for (std::size_t n : sizes) {
    if (n < 5) throw ConfigError("experiment: sample sizes must be >= 5");
  }
  de.validate();
}

std::string ExperimentPlan::canonical() const {
  std::ostringstream out;
  out << "functions=";
  for (std::size_t i = 0; i < functions.size(); ++i) out << (i ? "," : "") << to_string(functions[i]);
  out << ";dims=";
  for (std::size_t i = 0; i < dims.size(); ++i) out << (i ? "," : "") << dims[i];
  out << ";sizes=";
  for (std::size_t i = 0; i < sizes.size(); ++i) out << (i ? "," : "") << sizes[i];
  out << ";trials=" << trials << ";base_seed=" << base_seed << ";f=" << format_double(de.f_low) << ","
      << format_double(de.f_high) << ";cr=" << format_double(de.cr) << ";max_iter=" << de.max_iter
      << ";tol=" << format_double(de.tol) << ";atol=" << format_double(de.atol);
  return out.str();
}

std::string ExperimentPlan::fingerprint() const {
  // FNV-1a, 64 bit.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(h));
  return buffer;
}

TrialRecord run_trial(InitMethod method, FunctionId function, std::size_t dims, std::size_t n,
                      std::uint64_t trial, const ExperimentPlan& plan) {
  const BenchmarkFunction objective(function, dims);
  const Bounds bounds = objective.bounds();
  const std::uint64_t seed = plan.base_seed + trial;

  const auto start = std::chrono::steady_clock::now();
  const SampleMatrix population = make_init_population(method, n, bounds, seed);
  DeConfig de = plan.de;
  de.seed = seed;

  TrialRecord record;
  record.method = method;
  record.function = std::string(to_string(function));
  record.dims = dims;
  record.n = n;
  record.trial = trial;
  try {
    const DeResult result = differential_evolution(
        [&](std::span<const double> x) { return objective(x); }, bounds, population, de);
    record.final_error = std::max(0.0, result.best_value - objective.optimum_value());
    record.evaluations = result.evaluations;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    record.final_error = std::numeric_limits<double>::infinity();
  }
  record.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return record;
}

namespace {

using RecordKey = std::tuple<std::string, std::size_t, std::size_t, std::uint64_t, int>;

RecordKey key_of(const TrialRecord& r) {
  return {r.function, r.dims, r.n, r.trial, static_cast<int>(r.method)};
}

struct Job {
  InitMethod method;
  FunctionId function;
  std::size_t dims;
  std::size_t n;
  std::uint64_t trial;
};

void write_atomically(const std::filesystem::path& path, const std::vector<TrialRecord>& records) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw StateError("cannot write " + tmp.string());
    write_records_csv(out, records);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

void sort_records(std::vector<TrialRecord>& records) {
  std::sort(records.begin(), records.end(),
            [](const TrialRecord& a, const TrialRecord& b) { return key_of(a) < key_of(b); });
}

std::vector<TrialRecord> run_experiment(const ExperimentPlan& plan, const RunOptions& options) {
  plan.validate();

  std::vector<Job> jobs;
  std::set<RecordKey> planned;
  for (FunctionId f : plan.functions) {
    for (std::size_t d : plan.dims) {
      for (std::size_t n : plan.sizes) {
        for (std::uint64_t t = 0; t < plan.trials; ++t) {
          for (InitMethod m : {InitMethod::Hds, InitMethod::Sobol}) {
            jobs.push_back({m, f, d, n, t});
            planned.insert({std::string(to_string(f)), d, n, t, static_cast<int>(m)});
          }
        }
      }
    }
  }

  std::vector<TrialRecord> records;
  std::set<RecordKey> done;
  if (options.records_path && std::filesystem::exists(*options.records_path)) {
    std::ifstream in(*options.records_path);
    for (auto& r : read_records_csv(in)) {
      const RecordKey key = key_of(r);
      if (!planned.count(key) || !done.insert(key).second) continue;
      records.push_back(std::move(r));
    }
  }

  std::vector<Job> pending;
  for (const Job& job : jobs) {
    const RecordKey key{std::string(to_string(job.function)), job.dims, job.n, job.trial,
                        static_cast<int>(job.method)};
    if (!done.count(key)) pending.push_back(job);
  }

  std::ofstream sink;
  if (options.records_path) {
    // Rewrite what survived (drops truncated lines), then append as we go.
    write_atomically(*options.records_path, records);
    sink.open(*options.records_path, std::ios::app);
    if (!sink) throw StateError("cannot append to " + options.records_path->string());
  }

  std::mutex mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> produced{0};
  const std::size_t limit = options.stop_after.value_or(pending.size());
  std::exception_ptr failure;

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= pending.size() || i >= limit) return;
      const Job& job = pending[i];
      TrialRecord record;
      try {
        record = run_trial(job.method, job.function, job.dims, job.n, job.trial, plan);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
      std::lock_guard lock(mutex);
      if (sink.is_open()) sink << record_to_csv(record) << '\n' << std::flush;
      if (options.on_record) options.on_record(record);
      records.push_back(std::move(record));
      ++produced;
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  sort_records(records);
  if (options.records_path) {
    sink.close();
    write_atomically(*options.records_path, records);
  }
  return records;
}

void prepare_output_dir(const std::filesystem::path& dir, const ExperimentPlan& plan, bool resume) {
  std::filesystem::create_directories(dir);
  const auto plan_path = dir / "plan.json";
  const auto records_path = dir / "records.csv";
  const std::string fingerprint = plan.fingerprint();

  if (std::filesystem::exists(plan_path)) {
    std::ifstream in(plan_path);
    nlohmann::json existing;
    try {
      in >> existing;
    } catch (const std::exception&) {
      throw StateError("unreadable " + plan_path.string());
    }
    if (existing.value("fingerprint", std::string()) != fingerprint) {
      throw StateError("existing results in " + dir.string() +
                       " were produced by a different configuration; refusing to resume");
    }
  }
  if (std::filesystem::exists(records_path) && !resume) {
    throw StateError(records_path.string() + " already exists; pass --resume to continue it");
  }
  nlohmann::json j = {{"fingerprint", fingerprint}, {"plan", plan.canonical()}};
  std::ofstream out(plan_path, std::ios::trunc);
  out << j.dump(2) << '\n';
}

}  // namespace hds
