#include <doctest.h>

#include <cmath>
#include <string>

#include "linml/bench.hpp"
#include "linml/error.hpp"

using namespace linml;

namespace {

nlohmann::json synthetic_spec_json() {
  return nlohmann::json::parse(R"json({
    "seeds": [1, 2],
    "algorithms": ["linearization", "logistic", "knn_baseline"],
    "report_timing": false,
    "linearization": {"k": 3},
    "logistic": {"lr": 0.1, "iters": 50},
    "knn_baseline": {"k": 3},
    "datasets": [
      {"id": "sqrt-bin",
       "task": "binary",
       "synthetic": {"fn": "sqrt", "n": 300, "range": [0, 100], "mode": "binarized_at_median"},
       "published": "90% (3147/3507)"}
    ]
  })json");
}

}  // namespace

TEST_SUITE("bench") {

TEST_CASE("empty dataset list gives an empty report") {
  auto spec = parse_bench_spec(nlohmann::json::parse(R"({"datasets": []})"));
  auto report = run_benchmark(spec);
  CHECK(report.rows.empty());
  CHECK(report.summaries.empty());
}

TEST_CASE("spec defaults") {
  auto spec = parse_bench_spec(nlohmann::json::parse(R"({"datasets": []})"));
  CHECK(spec.seeds == std::vector<std::uint64_t>{1, 2, 3, 4, 5});
  CHECK(spec.train_fraction == 0.64);
  CHECK(spec.algorithms == std::vector<std::string>{"linearization"});
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(parse_bench_spec(nlohmann::json::parse(
                      R"({"algorithms": ["nonsense"], "datasets": []})")),
                  Error);
  CHECK_THROWS_AS(parse_bench_spec(nlohmann::json::parse(
                      R"({"datasets": [{"id": "x"}]})")),
                  Error);
  CHECK_THROWS_AS(parse_bench_spec(nlohmann::json::parse(
                      R"({"train_fraction": 1.5, "datasets": []})")),
                  Error);
  try {
    auto spec = parse_bench_spec(nlohmann::json::parse(
        R"({"datasets": [{"id": "missing", "task": "binary", "path": "/does/not/exist"}]})"));
    run_benchmark(spec);
    FAIL_CHECK("missing dataset accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DatasetNotFound);
  }
}

TEST_CASE("rows cover every dataset x algorithm x seed") {
  auto spec = parse_bench_spec(synthetic_spec_json());
  auto report = run_benchmark(spec);
  REQUIRE(report.rows.size() == 3 * 2);  // 3 algorithms x 2 seeds
  REQUIRE(report.summaries.size() == 3);

  // spec order: algorithm-major, then seeds
  CHECK(report.rows[0].algorithm == "linearization");
  CHECK(report.rows[0].seed == 1);
  CHECK(report.rows[1].algorithm == "linearization");
  CHECK(report.rows[1].seed == 2);
  CHECK(report.rows[2].algorithm == "logistic");

  for (const auto& row : report.rows) {
    CHECK(row.metrics.correct <= row.metrics.n);
    CHECK(row.metrics.n == row.test_size);
    CHECK(row.train_size + row.test_size == 300);
    CHECK(row.published == "90% (3147/3507)");
  }
  for (const auto& s : report.summaries) {
    CHECK(s.metric == "accuracy");
    CHECK(s.min <= s.mean);
    CHECK(s.mean <= s.max);
  }
}

TEST_CASE("identical specs give byte-identical reports") {
  auto spec = parse_bench_spec(synthetic_spec_json());
  auto a = run_benchmark(spec);
  auto b = run_benchmark(spec);
  CHECK(render_report(a, spec.report_timing) == render_report(b, spec.report_timing));
  CHECK(report_to_json(a, spec.report_timing).dump(2) ==
        report_to_json(b, spec.report_timing).dump(2));
}

TEST_CASE("printed percentages round correctly") {
  auto spec = parse_bench_spec(synthetic_spec_json());
  auto report = run_benchmark(spec);
  auto text = render_report(report, false);
  for (const auto& row : report.rows) {
    auto pct = std::llround(100.0 * double(row.metrics.correct) / double(row.metrics.n));
    auto cell = std::to_string(pct) + "% (" + std::to_string(row.metrics.correct) + "/" +
                std::to_string(row.metrics.n) + ")";
    CHECK(text.find(cell) != std::string::npos);
  }
}

TEST_CASE("regression datasets report rmse") {
  auto spec = parse_bench_spec(nlohmann::json::parse(R"({
    "seeds": [1],
    "algorithms": ["linearization"],
    "report_timing": false,
    "linearization": {"k": 5},
    "datasets": [
      {"id": "sqrt-reg",
       "task": "regression",
       "synthetic": {"fn": "sqrt", "n": 300, "range": [0, 100], "mode": "regression"}}
    ]
  })"));
  auto report = run_benchmark(spec);
  REQUIRE(report.summaries.size() == 1);
  CHECK(report.summaries[0].metric == "rmse");
  CHECK(report.rows[0].metrics.rmse > 0.0);
  CHECK(render_report(report, false).find("rmse") != std::string::npos);
}

}  // TEST_SUITE
