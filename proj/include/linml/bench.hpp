#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linml/dataset.hpp"
#include "linml/metrics.hpp"
#include "linml/train.hpp"

#include <json.hpp>

namespace linml {

struct SyntheticSpec {
  SyntheticFn fn = SyntheticFn::Sqrt;
  std::size_t n = 1000;
  double lo = 0.0;
  double hi = 1.0;
  SyntheticMode mode = SyntheticMode::BinarizedAtMedian;
};

struct BenchDataset {
  std::string id;
  Task task = Task::Binary;
  std::string path;  // LIBSVM file; empty when synthetic
  std::optional<SyntheticSpec> synthetic;
  std::optional<std::size_t> subsample;   // seeded row cap applied before splitting
  std::optional<double> train_fraction;   // per-dataset override
  std::vector<std::string> algorithms;    // per-dataset override; empty = spec-wide list
  std::string published;  // reference accuracy printed alongside, when known
};

struct LinearizationParams {
  TrainConfig config;
  std::vector<std::size_t> k_grid;  // nonempty -> per-run k tuning on a validation slice
  double tune_fraction = 0.2;       // slice of the training half held out for tuning
};

struct LogisticParams {
  double lr = 0.05;
  std::size_t iters = 300;
  double l2 = 1e-4;
};

struct KnnBaselineParams {
  std::size_t k = 5;
};

struct BenchSpec {
  std::vector<BenchDataset> datasets;
  std::vector<std::string> algorithms;  // subset of {linearization, logistic, knn_baseline}
  std::vector<std::uint64_t> seeds;
  double train_fraction = 0.64;
  LinearizationParams lin;
  LogisticParams logistic;
  KnnBaselineParams knn;
  bool report_timing = true;  // false gives byte-identical reports across runs
};

struct BenchRow {
  std::string dataset_id;
  std::string algorithm;
  Task task = Task::Binary;
  std::uint64_t seed = 0;
  double train_fraction = 0.0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  Metrics metrics;
  double wall_ms = 0.0;
  std::string published;
};

// Mean/min/max over the seeds of a (dataset, algorithm) pair; the metric is
// accuracy for classification and RMSE for regression datasets.
struct BenchSummary {
  std::string dataset_id;
  std::string algorithm;
  std::string metric;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::string published;
};

struct BenchReport {
  std::vector<BenchRow> rows;  // spec order: dataset, then algorithm, then seed
  std::vector<BenchSummary> summaries;
};

BenchSpec parse_bench_spec(const nlohmann::json& j);

// Reads a JSON spec; relative dataset paths resolve against the spec file's
// directory.
BenchSpec load_bench_spec(const std::string& path);

BenchReport run_benchmark(const BenchSpec& spec);

std::string render_report(const BenchReport& report, bool timing);
nlohmann::json report_to_json(const BenchReport& report, bool timing);

}  // namespace linml
