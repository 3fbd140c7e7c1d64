// hds: sample generation, discrepancy, single optimizer runs and the paired
// HDS-vs-Sobol benchmark.
//
// Exit codes: 0 success, 2 usage/configuration error, 3 state/resume error.
// Machine-readable output goes to stdout (or --out); everything else to stderr.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hds/de.hpp"
#include "hds/discrepancy.hpp"
#include "hds/error.hpp"
#include "hds/experiment.hpp"
#include "hds/functions.hpp"
#include "hds/generator.hpp"
#include "hds/io.hpp"
#include "hds/sobol.hpp"
#include "hds/stats.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitState = 3;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw hds::ConfigError(flag + ": '" + item + "' is not a number");
    }
  }
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& text, const std::string& flag) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(text)) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw hds::ConfigError(flag + ": '" + item + "' is not a positive integer");
    }
  }
  if (out.empty()) throw hds::ConfigError(flag + ": empty list");
  return out;
}

struct BoundsFlags {
  std::string pair = "0,1";
  std::string file;

  hds::Bounds resolve(std::size_t dims) const {
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw hds::ConfigError("--bounds-file: cannot open " + file);
      std::vector<double> lower;
      std::vector<double> upper;
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto values = parse_doubles(line, "--bounds-file");
        if (values.size() != 2) throw hds::ConfigError("--bounds-file: each line must be 'lo,hi'");
        lower.push_back(values[0]);
        upper.push_back(values[1]);
      }
      if (lower.size() != dims) {
        throw hds::ConfigError("--bounds-file: " + std::to_string(lower.size()) + " lines for " +
                               std::to_string(dims) + " dimensions");
      }
      return hds::Bounds(std::move(lower), std::move(upper));
    }
    const auto values = parse_doubles(pair, "--bounds");
    if (values.size() != 2) throw hds::ConfigError("--bounds: expected 'lo,hi'");
    return hds::Bounds::uniform(dims, values[0], values[1]);
  }

  json describe(const hds::Bounds& bounds) const {
    if (!file.empty()) return {{"file", file}, {"lower", bounds.lower()}, {"upper", bounds.upper()}};
    return {{"lo", bounds.lower().front()}, {"hi", bounds.upper().front()}};
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::trunc);
      if (!*file_) throw hds::ConfigError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void echo_config(const std::string& command, const json& config) {
  json j = config;
  j["command"] = command;
  std::cerr << "#config " << j.dump() << std::endl;
}

hds::InitMethod require_method(const std::string& name) {
  const auto method = hds::parse_method(name);
  if (!method) throw hds::ConfigError("--method must be 'hds' or 'sobol'");
  return *method;
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw hds::ConfigError("unsupported --format '" + format + "'");
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
  std::string method = "hds";
  std::size_t n = 1000;
  std::size_t dims = 0;
  BoundsFlags bounds;
  std::uint64_t seed = 0;
  std::string weights_mean;
  std::string weights_std;
  bool normalize = false;
  bool include_origin = false;
  std::optional<std::size_t> n_ellipsoids;
  std::optional<std::size_t> k_init;
  std::string out = "-";
  std::string format = "csv";
};

hds::SampleMatrix generate(const SampleArgs& a, json& config) {
  if (a.n < 1) throw hds::ConfigError("--n must be >= 1");
  if (a.dims < 1) throw hds::ConfigError("--dims must be >= 1");
  const hds::InitMethod method = require_method(a.method);
  const hds::Bounds bounds = a.bounds.resolve(a.dims);
  config = {{"method", std::string(hds::to_string(method))},
            {"n", a.n},
            {"dims", a.dims},
            {"bounds", a.bounds.describe(bounds)},
            {"seed", a.seed},
            {"normalize", a.normalize}};

  if (method == hds::InitMethod::Sobol) {
    if (!a.weights_mean.empty() || !a.weights_std.empty()) {
      throw hds::ConfigError("Gaussian weights apply to --method hds only");
    }
    config["include_origin"] = a.include_origin;
    hds::SobolEngine engine(a.dims);
    if (!a.include_origin) engine.skip(1);
    hds::SampleMatrix unit = engine.draw(a.n);
    return a.normalize ? unit : hds::denormalize(unit, bounds);
  }

  hds::HdsConfig hc;
  hc.n_samples = a.n;
  hc.dims = a.dims;
  hc.bounds = bounds;
  hc.seed = a.seed;
  hc.normalize = a.normalize;
  hc.k_init = a.k_init;
  hc.n_ellipsoids = a.n_ellipsoids;
  if (!a.weights_mean.empty() || !a.weights_std.empty()) {
    hds::GaussianWeightSpec spec;
    spec.mean = parse_doubles(a.weights_mean, "--weights-mean");
    spec.stddev = parse_doubles(a.weights_std, "--weights-std");
    if (spec.mean.size() != a.dims || spec.stddev.size() != a.dims) {
      throw hds::ConfigError("--weights-mean and --weights-std need exactly " + std::to_string(a.dims) +
                             " values");
    }
    hc.weights = spec;
    config["weights"] = {{"mean", spec.mean}, {"stddev", spec.stddev}};
  } else {
    config["weights"] = nullptr;
  }
  config["k_init"] = a.k_init ? json(*a.k_init) : json(hds::initial_cluster_count(a.dims));
  config["n_ellipsoids"] = a.n_ellipsoids ? json(*a.n_ellipsoids) : json("auto");
  config["initial_samples"] = hds::initial_sample_count(a.dims, hc.cap_exponent);
  config["epsilon"] = hc.epsilon;
  config["alpha"] = hc.alpha;
  return hds::hds_generate(hc);
}

void add_sample_options(CLI::App& cmd, SampleArgs& a, bool with_output) {
  cmd.add_option("--method", a.method, "hds or sobol")->capture_default_str();
  cmd.add_option("--n", a.n, "number of samples")->capture_default_str();
  cmd.add_option("--dims", a.dims, "dimensionality")->required();
  cmd.add_option("--bounds", a.bounds.pair, "lo,hi applied to every dimension")->capture_default_str();
  cmd.add_option("--bounds-file", a.bounds.file, "file with one 'lo,hi' line per dimension");
  cmd.add_option("--seed", a.seed, "random seed")->capture_default_str();
  cmd.add_option("--weights-mean", a.weights_mean, "Gaussian weight mean per dimension (bounds frame)");
  cmd.add_option("--weights-std", a.weights_std, "Gaussian weight stddev per dimension (bounds frame)");
  cmd.add_flag("--normalize", a.normalize, "emit unit-cube coordinates instead of bounds coordinates");
  cmd.add_flag("--include-origin", a.include_origin, "sobol: keep the all-zero first point");
  cmd.add_option("--n-ellipsoids", a.n_ellipsoids, "fix the ellipsoid count (skips the dendrogram)");
  cmd.add_option("--k-init", a.k_init, "initial centroid count for the dendrogram");
  if (with_output) {
    cmd.add_option("--out", a.out, "output path, '-' for stdout")->capture_default_str();
    cmd.add_option("--format", a.format, "csv or json")->capture_default_str();
  }
}

int run_sample(const SampleArgs& a) {
  require_format(a.format, {"csv", "json"});
  json config;
  const hds::SampleMatrix samples = generate(a, config);
  config["format"] = a.format;
  config["out"] = a.out;
  echo_config("sample", config);
  Output out(a.out);
  if (a.format == "csv") {
    hds::write_samples_csv(out.stream(), samples);
  } else {
    hds::write_samples_json(out.stream(), samples);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- discrepancy

struct DiscrepancyArgs {
  std::string in;
  SampleArgs gen;
  std::string metric = "all";
  std::string out = "-";
};

int run_discrepancy(CLI::App& cmd, const DiscrepancyArgs& a) {
  std::vector<hds::DiscrepancyMetric> metrics;
  if (a.metric == "all") {
    metrics = {hds::DiscrepancyMetric::L2Star, hds::DiscrepancyMetric::CenteredL2};
  } else if (auto m = hds::parse_metric(a.metric)) {
    metrics = {*m};
  } else {
    throw hds::ConfigError("--metric must be l2star, centered_l2 or all");
  }

  json config;
  hds::SampleMatrix unit;
  if (!a.in.empty()) {
    std::ifstream file(a.in);
    if (!file) throw hds::ConfigError("--in: cannot open " + a.in);
    hds::SampleMatrix raw = hds::read_samples_csv(file);
    if (raw.empty()) throw hds::ConfigError("--in: no samples in " + a.in);
    const bool has_bounds = cmd.count("--bounds") > 0 || !a.gen.bounds.file.empty();
    if (has_bounds) {
      const hds::Bounds bounds = a.gen.bounds.resolve(raw.cols());
      unit = hds::normalize(raw, bounds);
      config["bounds"] = a.gen.bounds.describe(bounds);
    } else {
      unit = std::move(raw);
      unit.set_frame(hds::Frame::UnitCube);
      config["bounds"] = "unit";
    }
    config["in"] = a.in;
  } else {
    SampleArgs gen = a.gen;
    gen.normalize = true;
    unit = generate(gen, config);
  }
  config["metric"] = a.metric;
  echo_config("discrepancy", config);

  Output out(a.out);
  for (const auto metric : metrics) {
    out.stream() << hds::discrepancy_to_json(hds::discrepancy(unit, metric)) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- optimize

struct OptimizeArgs {
  std::string method = "hds";
  std::string function = "sphere";
  std::size_t dims = 10;
  std::size_t n = 64;
  std::uint64_t seed = 0;
  hds::DeConfig de;
  std::string out = "-";
  std::string format = "json";
};

int run_optimize(const OptimizeArgs& a) {
  require_format(a.format, {"csv", "json"});
  const hds::InitMethod method = require_method(a.method);
  const hds::FunctionId function = hds::parse_function(a.function);
  hds::ExperimentPlan plan;
  plan.de = a.de;
  plan.base_seed = 0;
  plan.de.validate();
  echo_config("optimize", {{"method", std::string(hds::to_string(method))},
                           {"function", a.function},
                           {"dims", a.dims},
                           {"n", a.n},
                           {"seed", a.seed},
                           {"f_min", a.de.f_low},
                           {"f_max", a.de.f_high},
                           {"cr", a.de.cr},
                           {"maxiter", a.de.max_iter},
                           {"tol", a.de.tol},
                           {"format", a.format}});
  if (a.n < 5) throw hds::ConfigError("--n must be >= 5 for best1bin");
  const hds::TrialRecord record = hds::run_trial(method, function, a.dims, a.n, a.seed, plan);
  Output out(a.out);
  if (a.format == "json") {
    out.stream() << hds::record_to_json(record) << '\n';
  } else {
    out.stream() << hds::kRecordsHeader << '\n' << hds::record_to_csv(record) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- bench / report

struct BenchArgs {
  std::string functions = "shifted";
  std::string dims = "10,30";
  std::string sizes = "64,1000";
  std::size_t trials = 15;
  std::uint64_t seed = 0;
  std::string out_dir;
  bool resume = false;
  std::size_t workers = 1;
  std::size_t maxiter = 100;
  std::size_t bootstrap = 10000;
  std::uint64_t bootstrap_seed = 0;
};

struct ReportArgs {
  std::string in;
  std::string format = "table";
  std::size_t bootstrap = 10000;
  std::uint64_t bootstrap_seed = 0;
  std::string out = "-";
};

void write_report(std::ostream& out, const std::vector<hds::ComparisonSummary>& summaries,
                  const std::string& format) {
  if (format == "json") {
    out << hds::summaries_to_json(summaries) << '\n';
  } else {
    out << hds::report_table(summaries);
  }
}

int run_bench(const BenchArgs& a) {
  hds::ExperimentPlan plan;
  for (const auto& name : split_list(a.functions)) {
    if (name == "shifted" || name == "all") {
      const auto& group = name == "shifted" ? hds::shifted_functions() : hds::all_functions();
      plan.functions.insert(plan.functions.end(), group.begin(), group.end());
    } else {
      plan.functions.push_back(hds::parse_function(name));
    }
  }
  plan.dims = parse_sizes(a.dims, "--dims");
  plan.sizes = parse_sizes(a.sizes, "--sizes");
  plan.trials = a.trials;
  plan.base_seed = a.seed;
  plan.de.max_iter = a.maxiter;
  plan.validate();
  if (a.out_dir.empty()) throw hds::ConfigError("--out-dir is required");

  std::vector<std::string> names;
  for (auto f : plan.functions) names.emplace_back(hds::to_string(f));
  echo_config("bench", {{"functions", names},
                        {"dims", plan.dims},
                        {"sizes", plan.sizes},
                        {"trials", plan.trials},
                        {"seed", plan.base_seed},
                        {"maxiter", plan.de.max_iter},
                        {"f_min", plan.de.f_low},
                        {"f_max", plan.de.f_high},
                        {"cr", plan.de.cr},
                        {"out_dir", a.out_dir},
                        {"resume", a.resume},
                        {"workers", a.workers},
                        {"bootstrap", a.bootstrap},
                        {"bootstrap_seed", a.bootstrap_seed},
                        {"fingerprint", plan.fingerprint()}});

  const std::filesystem::path dir(a.out_dir);
  hds::prepare_output_dir(dir, plan, a.resume);

  hds::RunOptions options;
  options.records_path = dir / "records.csv";
  options.workers = a.workers;
  std::size_t done = 0;
  options.on_record = [&](const hds::TrialRecord& r) {
    ++done;
    std::cerr << "[" << done << "] " << hds::to_string(r.method) << ' ' << r.function << " D=" << r.dims
              << " N=" << r.n << " trial=" << r.trial << " error=" << hds::format_double(r.final_error)
              << '\n';
  };
  const auto records = hds::run_experiment(plan, options);

  const auto summaries = hds::summarize(records, {a.bootstrap_seed, a.bootstrap});
  {
    std::ofstream summary(dir / "summary.json", std::ios::trunc);
    summary << hds::summaries_to_json(summaries) << '\n';
  }
  write_report(std::cout, summaries, "table");
  return kExitOk;
}

int run_report(const ReportArgs& a) {
  require_format(a.format, {"table", "json"});
  std::ifstream in(a.in);
  if (!in) throw hds::ConfigError("--in: cannot open " + a.in);
  echo_config("report", {{"in", a.in},
                         {"format", a.format},
                         {"bootstrap", a.bootstrap},
                         {"bootstrap_seed", a.bootstrap_seed},
                         {"out", a.out}});
  const auto records = hds::read_records_csv(in);
  const auto summaries = hds::summarize(records, {a.bootstrap_seed, a.bootstrap});
  Output out(a.out);
  write_report(out.stream(), summaries, a.format);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyperellipsoid density sampling and HDS-vs-Sobol optimizer benchmarks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "Generate an HDS or Sobol sequence");
  add_sample_options(*sample_cmd, sample, true);

  DiscrepancyArgs disc;
  auto* disc_cmd = app.add_subcommand("discrepancy", "L2-star / centered L2 discrepancy as JSON lines");
  disc_cmd->add_option("--in", disc.in, "CSV of samples (header optional)");
  add_sample_options(*disc_cmd, disc.gen, false);
  disc_cmd->get_option("--dims")->required(false);
  disc_cmd->add_option("--metric", disc.metric, "l2star, centered_l2 or all")->capture_default_str();
  disc_cmd->add_option("--out", disc.out, "output path, '-' for stdout")->capture_default_str();

  OptimizeArgs opt;
  auto* opt_cmd = app.add_subcommand("optimize", "One differential evolution run");
  opt_cmd->add_option("--method", opt.method, "hds or sobol")->capture_default_str();
  opt_cmd->add_option("--function", opt.function, "benchmark function id")->capture_default_str();
  opt_cmd->add_option("--dims", opt.dims)->capture_default_str();
  opt_cmd->add_option("--n", opt.n, "population size")->capture_default_str();
  opt_cmd->add_option("--seed", opt.seed)->capture_default_str();
  opt_cmd->add_option("--maxiter", opt.de.max_iter)->capture_default_str();
  opt_cmd->add_option("--cr", opt.de.cr)->capture_default_str();
  opt_cmd->add_option("--f-min", opt.de.f_low)->capture_default_str();
  opt_cmd->add_option("--f-max", opt.de.f_high)->capture_default_str();
  opt_cmd->add_option("--tol", opt.de.tol)->capture_default_str();
  opt_cmd->add_option("--out", opt.out)->capture_default_str();
  opt_cmd->add_option("--format", opt.format, "json or csv")->capture_default_str();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Paired HDS-vs-Sobol experiment");
  bench_cmd->add_option("--functions", bench.functions, "comma-separated function ids; 'shifted' and 'all' name groups")->capture_default_str();
  bench_cmd->add_option("--dims", bench.dims, "comma-separated dimensions")->capture_default_str();
  bench_cmd->add_option("--sizes", bench.sizes, "comma-separated population sizes")->capture_default_str();
  bench_cmd->add_option("--trials", bench.trials)->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "base seed; trial t uses seed + t")->capture_default_str();
  bench_cmd->add_option("--out-dir", bench.out_dir)->required();
  bench_cmd->add_flag("--resume", bench.resume, "continue an interrupted run");
  bench_cmd->add_option("--workers", bench.workers)->capture_default_str();
  bench_cmd->add_option("--maxiter", bench.maxiter)->capture_default_str();
  bench_cmd->add_option("--bootstrap", bench.bootstrap, "bootstrap resamples")->capture_default_str();
  bench_cmd->add_option("--bootstrap-seed", bench.bootstrap_seed)->capture_default_str();

  ReportArgs report;
  auto* report_cmd = app.add_subcommand("report", "Summarize a records file");
  report_cmd->add_option("--in", report.in, "records CSV")->required();
  report_cmd->add_option("--format", report.format, "table or json")->capture_default_str();
  report_cmd->add_option("--bootstrap", report.bootstrap)->capture_default_str();
  report_cmd->add_option("--bootstrap-seed", report.bootstrap_seed)->capture_default_str();
  report_cmd->add_option("--out", report.out)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sample_cmd->parsed()) return run_sample(sample);
    if (disc_cmd->parsed()) return run_discrepancy(*disc_cmd, disc);
    if (opt_cmd->parsed()) return run_optimize(opt);
    if (bench_cmd->parsed()) return run_bench(bench);
    if (report_cmd->parsed()) return run_report(report);
  } catch (const hds::StateError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitState;
  } catch (const hds::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const hds::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
