#include "linml/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "linml/baselines.hpp"
#include "linml/error.hpp"

namespace linml {

namespace {

using nlohmann::json;

Task parse_task(const std::string& name) {
  auto t = task_from_name(name);
  if (!t) fail(ErrorKind::ConfigInvalid, "unknown task '" + name + "'");
  return *t;
}

SyntheticSpec parse_synthetic(const json& j) {
  SyntheticSpec s;
  std::string fn = j.value("fn", "sqrt");
  if (fn == "sqrt")
    s.fn = SyntheticFn::Sqrt;
  else if (fn == "exp")
    s.fn = SyntheticFn::Exp;
  else
    fail(ErrorKind::ConfigInvalid, "unknown synthetic fn '" + fn + "'");
  s.n = j.value("n", std::size_t{1000});
  if (j.contains("range")) {
    auto r = j.at("range");
    if (!r.is_array() || r.size() != 2)
      fail(ErrorKind::ConfigInvalid, "synthetic range must be [lo, hi]");
    s.lo = r[0].get<double>();
    s.hi = r[1].get<double>();
  }
  std::string mode = j.value("mode", "binarized_at_median");
  if (mode == "regression")
    s.mode = SyntheticMode::Regression;
  else if (mode == "binarized_at_median")
    s.mode = SyntheticMode::BinarizedAtMedian;
  else
    fail(ErrorKind::ConfigInvalid, "unknown synthetic mode '" + mode + "'");
  return s;
}

TrainConfig parse_train_config(const json& j, const TrainConfig& base) {
  TrainConfig c = base;
  c.k = j.value("k", c.k);
  c.inc = j.value("inc", c.inc);
  c.eps = j.value("eps", c.eps);
  c.max_iters = j.value("max_iters", c.max_iters);
  c.ridge_lambda = j.value("ridge_lambda", c.ridge_lambda);
  c.leave_self_out = j.value("leave_self_out", c.leave_self_out);
  if (j.contains("consensus")) {
    auto v = consensus_from_name(j.at("consensus").get<std::string>());
    if (!v) fail(ErrorKind::ConfigInvalid, "unknown consensus variant");
    c.consensus = *v;
  }
  c.validate();
  return c;
}

}  // namespace

BenchSpec parse_bench_spec(const json& j) {
  BenchSpec spec;
  try {
    spec.train_fraction = j.value("train_fraction", spec.train_fraction);
    spec.report_timing = j.value("report_timing", spec.report_timing);

    if (j.contains("seeds"))
      spec.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    else
      spec.seeds = {1, 2, 3, 4, 5};

    if (j.contains("algorithms"))
      spec.algorithms = j.at("algorithms").get<std::vector<std::string>>();
    else
      spec.algorithms = {"linearization"};
    for (const auto& a : spec.algorithms)
      if (a != "linearization" && a != "logistic" && a != "knn_baseline")
        fail(ErrorKind::ConfigInvalid, "unknown algorithm '" + a + "'");

    if (j.contains("linearization")) {
      const auto& lj = j.at("linearization");
      spec.lin.config = parse_train_config(lj, spec.lin.config);
      if (lj.contains("k_grid"))
        spec.lin.k_grid = lj.at("k_grid").get<std::vector<std::size_t>>();
      spec.lin.tune_fraction = lj.value("tune_fraction", spec.lin.tune_fraction);
      if (!(spec.lin.tune_fraction > 0.0 && spec.lin.tune_fraction < 1.0))
        fail(ErrorKind::ConfigInvalid, "tune_fraction must lie in (0,1)");
    }
    if (j.contains("logistic")) {
      const auto& gj = j.at("logistic");
      spec.logistic.lr = gj.value("lr", spec.logistic.lr);
      spec.logistic.iters = gj.value("iters", spec.logistic.iters);
      spec.logistic.l2 = gj.value("l2", spec.logistic.l2);
    }
    if (j.contains("knn_baseline"))
      spec.knn.k = j.at("knn_baseline").value("k", spec.knn.k);

    for (const auto& dj : j.value("datasets", json::array())) {
      BenchDataset ds;
      ds.id = dj.at("id").get<std::string>();
      ds.task = parse_task(dj.value("task", "binary"));
      if (dj.contains("synthetic"))
        ds.synthetic = parse_synthetic(dj.at("synthetic"));
      else if (dj.contains("path"))
        ds.path = dj.at("path").get<std::string>();
      else
        fail(ErrorKind::ConfigInvalid, "dataset '" + ds.id + "' needs a path or synthetic spec");
      if (dj.contains("subsample")) ds.subsample = dj.at("subsample").get<std::size_t>();
      if (dj.contains("train_fraction"))
        ds.train_fraction = dj.at("train_fraction").get<double>();
      if (dj.contains("algorithms")) {
        ds.algorithms = dj.at("algorithms").get<std::vector<std::string>>();
        for (const auto& a : ds.algorithms)
          if (a != "linearization" && a != "logistic" && a != "knn_baseline")
            fail(ErrorKind::ConfigInvalid, "unknown algorithm '" + a + "'");
      }
      ds.published = dj.value("published", std::string{});
      if (ds.task == Task::Multiclass)
        fail(ErrorKind::ConfigInvalid, "benchmark handles binary and regression datasets");
      spec.datasets.push_back(std::move(ds));
    }

    if (!(spec.train_fraction >= 0.0 && spec.train_fraction <= 1.0))
      fail(ErrorKind::ConfigInvalid, "train_fraction must lie in [0,1]");
  } catch (const json::exception& e) {
    fail(ErrorKind::ConfigInvalid, std::string("bad benchmark spec: ") + e.what());
  }
  return spec;
}

BenchSpec load_bench_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::DatasetNotFound, path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorKind::ConfigInvalid, std::string("bad benchmark spec: ") + e.what());
  }
  auto spec = parse_bench_spec(j);
  // Relative dataset paths resolve against the spec file's directory.
  auto base = std::filesystem::path(path).parent_path();
  for (auto& ds : spec.datasets)
    if (!ds.path.empty() && std::filesystem::path(ds.path).is_relative())
      ds.path = (base / ds.path).string();
  return spec;
}

namespace {

struct RunOutcome {
  Metrics metrics;
  double wall_ms = 0.0;
};

RunOutcome run_one(const BenchSpec& spec, const BenchDataset& ds, const std::string& algorithm,
                   const Dataset& train, const Dataset& test) {
  auto t0 = std::chrono::steady_clock::now();

  std::vector<double> predictions;
  predictions.reserve(test.size());
  if (algorithm == "linearization") {
    TrainConfig cfg = spec.lin.config;
    Model model;
    if (!spec.lin.k_grid.empty()) {
      auto [sub, val] = split_dataset(train, 1.0 - spec.lin.tune_fraction, cfg.seed);
      cfg.k = tune_k(sub, val, spec.lin.k_grid, cfg);
    }
    model = ds.task == Task::Binary ? train_binary(train, cfg) : train_regression(train, cfg);
    for (const auto& ex : test.examples) predictions.push_back(predict(model, ex.features));
  } else if (algorithm == "logistic") {
    if (ds.task != Task::Binary)
      fail(ErrorKind::ConfigInvalid, "logistic baseline needs a binary dataset");
    auto model = logistic_train(train, spec.logistic.lr, spec.logistic.iters, spec.logistic.l2,
                                spec.lin.config.seed);
    for (const auto& ex : test.examples)
      predictions.push_back(double(logistic_predict(model, ex.features)));
  } else {  // knn_baseline
    if (ds.task != Task::Binary)
      fail(ErrorKind::ConfigInvalid, "knn baseline needs a binary dataset");
    for (const auto& ex : test.examples)
      predictions.push_back(double(knn_baseline_predict(train, ex.features, spec.knn.k)));
  }

  std::vector<double> truths;
  truths.reserve(test.size());
  for (const auto& ex : test.examples) truths.push_back(ex.target);

  RunOutcome out;
  out.metrics = evaluate(predictions, truths, ds.task);
  out.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace

BenchReport run_benchmark(const BenchSpec& spec) {
  BenchReport report;

  for (const auto& ds : spec.datasets) {
    std::optional<Dataset> file_data;
    if (!ds.synthetic) file_data = parse_libsvm_file(ds.path, ds.task);
    double fraction = ds.train_fraction.value_or(spec.train_fraction);
    const auto& algorithms = ds.algorithms.empty() ? spec.algorithms : ds.algorithms;

    for (const auto& algorithm : algorithms) {
      std::vector<double> scores;
      for (std::uint64_t seed : spec.seeds) {
        Dataset data = ds.synthetic
                           ? generate_synthetic(ds.synthetic->fn, ds.synthetic->n,
                                                ds.synthetic->lo, ds.synthetic->hi,
                                                ds.synthetic->mode, seed)
                           : *file_data;
        if (ds.subsample) data = subsample_dataset(data, *ds.subsample, seed);
        auto [train, test] = split_dataset(data, fraction, seed);

        BenchSpec seeded = spec;
        seeded.lin.config.seed = seed;
        auto outcome = run_one(seeded, ds, algorithm, train, test);

        BenchRow row;
        row.dataset_id = ds.id;
        row.algorithm = algorithm;
        row.task = ds.task;
        row.seed = seed;
        row.train_fraction = fraction;
        row.train_size = train.size();
        row.test_size = test.size();
        row.metrics = outcome.metrics;
        row.wall_ms = outcome.wall_ms;
        row.published = ds.published;
        scores.push_back(ds.task == Task::Regression ? outcome.metrics.rmse
                                                     : outcome.metrics.accuracy);
        report.rows.push_back(std::move(row));
      }

      if (!scores.empty()) {
        BenchSummary s;
        s.dataset_id = ds.id;
        s.algorithm = algorithm;
        s.metric = ds.task == Task::Regression ? "rmse" : "accuracy";
        s.mean = 0.0;
        for (double v : scores) s.mean += v;
        s.mean /= double(scores.size());
        s.min = *std::min_element(scores.begin(), scores.end());
        s.max = *std::max_element(scores.begin(), scores.end());
        s.published = ds.published;
        report.summaries.push_back(std::move(s));
      }
    }
  }
  return report;
}

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string row_result(const BenchRow& r) {
  if (r.task == Task::Regression)
    return "rmse " + fixed(r.metrics.rmse, 4) + " mae " + fixed(r.metrics.mae, 4);
  return accuracy_cell(r.metrics);
}

void render_table(std::ostringstream& out, const std::vector<std::vector<std::string>>& cells) {
  if (cells.empty()) return;
  std::vector<std::size_t> widths(cells[0].size(), 0);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
  for (const auto& row : cells) {
    out << "  ";
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << row[c];
      if (c + 1 < row.size()) out << std::string(widths[c] - row[c].size() + 2, ' ');
    }
    out << '\n';
  }
}

}  // namespace

std::string render_report(const BenchReport& report, bool timing) {
  std::ostringstream out;
  if (report.rows.empty()) {
    out << "benchmark: no rows\n";
    return out.str();
  }

  out << "runs:\n";
  std::vector<std::vector<std::string>> cells;
  {
    std::vector<std::string> header = {"dataset", "algorithm", "seed",
                                       "split",   "train",     "test",
                                       "result"};
    if (timing) header.push_back("time_ms");
    cells.push_back(std::move(header));
  }
  for (const auto& r : report.rows) {
    std::vector<std::string> row = {
        r.dataset_id,         r.algorithm,
        std::to_string(r.seed), fixed(r.train_fraction, 2),
        std::to_string(r.train_size), std::to_string(r.test_size),
        row_result(r)};
    if (timing) row.push_back(fixed(r.wall_ms, 1));
    cells.push_back(std::move(row));
  }
  render_table(out, cells);

  out << "summary (mean/min/max over seeds):\n";
  cells.clear();
  cells.push_back({"dataset", "algorithm", "metric", "mean", "min", "max", "published"});
  for (const auto& s : report.summaries)
    cells.push_back({s.dataset_id, s.algorithm, s.metric, fixed(s.mean, 4), fixed(s.min, 4),
                     fixed(s.max, 4), s.published.empty() ? "-" : s.published});
  render_table(out, cells);
  return out.str();
}

nlohmann::json report_to_json(const BenchReport& report, bool timing) {
  json j;
  j["rows"] = json::array();
  for (const auto& r : report.rows) {
    json row;
    row["dataset"] = r.dataset_id;
    row["algorithm"] = r.algorithm;
    row["seed"] = r.seed;
    row["train_fraction"] = r.train_fraction;
    row["train_size"] = r.train_size;
    row["test_size"] = r.test_size;
    row["n"] = r.metrics.n;
    row["correct"] = r.metrics.correct;
    row["accuracy"] = r.metrics.accuracy;
    row["rmse"] = r.metrics.rmse;
    row["mae"] = r.metrics.mae;
    if (!r.published.empty()) row["published"] = r.published;
    if (timing) row["wall_ms"] = r.wall_ms;
    j["rows"].push_back(std::move(row));
  }
  j["summaries"] = json::array();
  for (const auto& s : report.summaries) {
    json sj;
    sj["dataset"] = s.dataset_id;
    sj["algorithm"] = s.algorithm;
    sj["metric"] = s.metric;
    sj["mean"] = s.mean;
    sj["min"] = s.min;
    sj["max"] = s.max;
    if (!s.published.empty()) sj["published"] = s.published;
    j["summaries"].push_back(std::move(sj));
  }
  return j;
}

}  // namespace linml
