#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("hds_cli_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  const auto out = work_dir() / "stdout.txt";
  const auto err = work_dir() / "stderr.txt";
  const std::string cmd = std::string(HDS_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string* header = nullptr) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

TEST(Cli, SampleHdsInBounds) {
  const auto r = run("sample --method hds --n 1000 --dims 10 --bounds -100,100 --seed 1");
  ASSERT_EQ(r.code, 0) << r.err;
  std::string header;
  const auto rows = parse_csv(r.out, &header);
  EXPECT_EQ(header, "x0,x1,x2,x3,x4,x5,x6,x7,x8,x9");
  ASSERT_EQ(rows.size(), 1000u);
  for (const auto& row : rows) {
    ASSERT_EQ(row.size(), 10u);
    for (double v : row) {
      EXPECT_GE(v, -100.0);
      EXPECT_LE(v, 100.0);
    }
  }
}

TEST(Cli, ConfigEchoOnStderrOnly) {
  const auto r = run("sample --method sobol --n 4 --dims 2");
  ASSERT_EQ(r.code, 0);
  ASSERT_EQ(r.err.rfind("#config ", 0), 0u);
  const auto cfg = nlohmann::json::parse(r.err.substr(8, r.err.find('\n') - 8));
  EXPECT_EQ(cfg["command"], "sample");
  EXPECT_EQ(cfg["method"], "sobol");
  EXPECT_EQ(cfg["seed"], 0);
  EXPECT_EQ(cfg["format"], "csv");
  EXPECT_EQ(r.out.find("#config"), std::string::npos);
}

TEST(Cli, SobolByteIdenticalFiles) {
  const auto a = work_dir() / "a.csv";
  const auto b = work_dir() / "b.csv";
  ASSERT_EQ(run("sample --method sobol --n 64 --dims 10 --seed 7 --out " + a.string()).code, 0);
  ASSERT_EQ(run("sample --method sobol --n 64 --dims 10 --seed 7 --out " + b.string()).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
}

TEST(Cli, SampleJsonAndOrigin) {
  const auto r = run("sample --method sobol --n 4 --dims 2 --normalize --include-origin --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["frame"], "unit");
  EXPECT_EQ(j["samples"][0][0].get<double>(), 0.0);
  EXPECT_EQ(j["samples"][3][1].get<double>(), 0.75);
}

TEST(Cli, WeightedSampleShiftsTowardMean) {
  const auto r = run("sample --method hds --n 2000 --dims 2 --weights-mean 0.25,0.25 --weights-std 0.33,0.33 --normalize");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  double m0 = 0.0;
  double m1 = 0.0;
  for (const auto& row : rows) {
    m0 += row[0];
    m1 += row[1];
  }
  EXPECT_NEAR(m0 / rows.size(), 0.37, 0.05);
  EXPECT_NEAR(m1 / rows.size(), 0.37, 0.05);
}

TEST(Cli, BoundsFile) {
  const auto path = work_dir() / "bounds.txt";
  std::ofstream(path) << "0,1\n-5,5\n";
  const auto r = run("sample --method sobol --n 8 --dims 2 --bounds-file " + path.string());
  ASSERT_EQ(r.code, 0) << r.err;
  for (const auto& row : parse_csv(r.out)) {
    EXPECT_LE(row[0], 1.0);
    EXPECT_GE(row[1], -5.0);
  }
  EXPECT_EQ(run("sample --method sobol --n 8 --dims 3 --bounds-file " + path.string()).code, 2);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("sample --dims 2 --bounds 1,1").code, 2);
  EXPECT_EQ(run("sample --dims 2 --bounds 1").code, 2);
  EXPECT_EQ(run("sample --dims 2 --weights-mean 0.5 --weights-std 0.1").code, 2);
  EXPECT_EQ(run("sample --dims 2 --frobnicate").code, 2);
  EXPECT_EQ(run("sample --dims 2 --method lhs").code, 2);
  EXPECT_EQ(run("sample --dims 2 --n 0").code, 2);
  EXPECT_EQ(run("optimize --function nope").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST(Cli, DiscrepancyJsonLines) {
  const auto r = run("discrepancy --method sobol --n 128 --dims 3");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::vector<nlohmann::json> lines;
  while (std::getline(in, line)) lines.push_back(nlohmann::json::parse(line));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0]["metric"], "l2star");
  EXPECT_EQ(lines[1]["metric"], "centered_l2");
  EXPECT_EQ(lines[0]["n"], 128);
  EXPECT_GT(lines[1]["value"].get<double>(), 0.0);

  const auto csv = work_dir() / "pts.csv";
  ASSERT_EQ(run("sample --method sobol --n 128 --dims 3 --bounds -100,100 --out " + csv.string()).code, 0);
  const auto from_file = run("discrepancy --in " + csv.string() + " --bounds -100,100 --metric centered_l2");
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  const auto j = nlohmann::json::parse(from_file.out);
  EXPECT_NEAR(j["value"].get<double>(), lines[1]["value"].get<double>(), 1e-12);
}

TEST(Cli, OptimizeRecord) {
  const auto r = run("optimize --method sobol --function sphere --dims 3 --n 16 --maxiter 10 --seed 2");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["method"], "sobol");
  EXPECT_EQ(j["function"], "sphere");
  EXPECT_EQ(j["evaluations"], 16 * 11);
  EXPECT_GE(j["final_error"].get<double>(), 0.0);
}

TEST(Cli, BenchResumeAndReport) {
  const auto dir = work_dir() / "bench";
  const std::string base =
      "bench --functions sphere,rastrigin --dims 10 --sizes 64 --trials 3 --maxiter 5 --bootstrap 200 --out-dir " +
      dir.string();
  const auto r = run(base);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Ratio"), std::string::npos);
  const auto records = slurp(dir / "records.csv");
  EXPECT_EQ(std::count(records.begin(), records.end(), '\n'), 13);
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  ASSERT_EQ(summary.size(), 1u);
  EXPECT_EQ(summary[0]["n"], 64);

  EXPECT_EQ(run(base).code, 3);
  EXPECT_EQ(run(base + " --resume").code, 0);
  const auto resumed = slurp(dir / "records.csv");
  EXPECT_EQ(std::count(resumed.begin(), resumed.end(), '\n'), 13);
  const std::string changed =
      "bench --functions sphere --dims 10 --sizes 64 --trials 3 --maxiter 5 --resume --out-dir " + dir.string();
  EXPECT_EQ(run(changed).code, 3);

  const auto table = run("report --in " + (dir / "records.csv").string() + " --bootstrap 200");
  ASSERT_EQ(table.code, 0) << table.err;
  for (const char* col : {"HDS Err.", "Sobol Err.", "Ratio", "p-Val", "CI95"}) {
    EXPECT_NE(table.out.find(col), std::string::npos);
  }
  const auto js = run("report --in " + (dir / "records.csv").string() + " --bootstrap 200 --format json");
  ASSERT_EQ(js.code, 0);
  EXPECT_EQ(nlohmann::json::parse(js.out), summary);
}

}  // namespace
