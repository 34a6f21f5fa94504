#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "linml/baselines.hpp"
#include "linml/error.hpp"
#include "linml/util.hpp"

using namespace linml;

namespace {

Dataset separable_toy() {
  Dataset d;
  d.task = Task::Binary;
  d.n_features = 1;
  d.label_map = LabelMap{0.0, 1.0};
  for (int i = 1; i <= 20; ++i) {
    d.examples.push_back({SparseVector{{{1, -double(i)}}}, 0.0});
    d.examples.push_back({SparseVector{{{1, double(i)}}}, 1.0});
  }
  return d;
}

// Exhaustive oracle: stable-sort every training point by (distance, position)
// and majority-vote the first k labels, ties to 0.
int knn_oracle(const Dataset& train, const SparseVector& x, std::size_t k) {
  std::vector<std::pair<double, std::size_t>> all;
  for (std::size_t i = 0; i < train.size(); ++i)
    all.push_back({std::sqrt(squared_distance(train.examples[i].features, x)), i});
  std::stable_sort(all.begin(), all.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t ones = 0;
  for (std::size_t t = 0; t < k; ++t)
    if (train.examples[all[t].second].target == 1.0) ++ones;
  return ones * 2 > k ? 1 : 0;
}

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("logistic: separable toy reaches full training accuracy") {
  auto d = separable_toy();
  auto m = logistic_train(d, 0.5, 400, 0.0, 0);
  std::size_t correct = 0;
  for (const auto& ex : d.examples)
    if (double(logistic_predict(m, ex.features)) == ex.target) ++correct;
  CHECK(correct == d.size());
}

TEST_CASE("logistic: argument guards") {
  auto d = separable_toy();
  CHECK_THROWS_AS(logistic_train(d, 0.5, 0, 0.0, 0), Error);
  CHECK_THROWS_AS(logistic_train(d, 0.0, 10, 0.0, 0), Error);
  Dataset empty;
  empty.task = Task::Binary;
  CHECK_THROWS_AS(logistic_train(empty, 0.5, 10, 0.0, 0), Error);
}

TEST_CASE("logistic: zero score predicts 0, signs decide otherwise") {
  LogisticModel m;
  m.weights = {0.0};
  CHECK(logistic_predict(m, SparseVector{{{1, 3.0}}}) == 0);

  m.weights = {1.0};
  CHECK(logistic_predict(m, SparseVector{{{1, 3.0}}}) == 1);
  CHECK(logistic_predict(m, SparseVector{{{1, -3.0}}}) == 0);
}

TEST_CASE("logistic: symmetric data keeps the bias near zero") {
  auto d = separable_toy();  // labels balanced, features mirrored
  auto m = logistic_train(d, 0.1, 50, 0.0, 0);
  CHECK(std::fabs(m.bias) < 1e-9);
}

TEST_CASE("logistic: loss is non-increasing at a small learning rate") {
  Rng rng(42);
  Dataset d;
  d.task = Task::Binary;
  d.n_features = 3;
  d.label_map = LabelMap{0.0, 1.0};
  for (int i = 0; i < 40; ++i) {
    SparseVector x{{{1, rng.uniform(-2, 2)}, {2, rng.uniform(-2, 2)}, {3, rng.uniform(-2, 2)}}};
    d.examples.push_back({x, double(rng.below(2))});
  }
  double prev = logistic_loss(LogisticModel{.bias = 0, .weights = {0, 0, 0}}, d);
  for (std::size_t t = 1; t <= 40; ++t) {
    double cur = logistic_loss(logistic_train(d, 1e-3, t, 0.0, 0), d);
    CHECK(cur <= prev + 1e-12);
    prev = cur;
  }
}

TEST_CASE("logistic: rescaled weights never change a prediction") {
  auto d = separable_toy();
  auto m = logistic_train(d, 0.5, 100, 1e-4, 0);
  auto scaled = m;
  for (double c : {0.5, 3.0, 1e6}) {
    scaled.bias = m.bias * c;
    scaled.weights = m.weights;
    for (auto& w : scaled.weights) w *= c;
    for (const auto& ex : d.examples)
      CHECK(logistic_predict(scaled, ex.features) == logistic_predict(m, ex.features));
  }
}

TEST_CASE("knn baseline: exact hit and global majority") {
  auto d = separable_toy();
  CHECK(knn_baseline_predict(d, d.examples[0].features, 1) == 0);
  CHECK(knn_baseline_predict(d, d.examples[1].features, 1) == 1);

  // 60/40 label split: k = n votes the majority
  Dataset skewed;
  skewed.task = Task::Binary;
  skewed.n_features = 1;
  for (int i = 0; i < 6; ++i) skewed.examples.push_back({SparseVector{{{1, double(i)}}}, 1.0});
  for (int i = 6; i < 10; ++i) skewed.examples.push_back({SparseVector{{{1, double(i)}}}, 0.0});
  CHECK(knn_baseline_predict(skewed, SparseVector{{{1, 100.0}}}, skewed.size()) == 1);

  // an exact vote tie answers 0
  CHECK(knn_baseline_predict(skewed, SparseVector{{{1, 5.5}}}, 2) == 0);
}

TEST_CASE("knn baseline: oversized k") {
  auto d = separable_toy();
  try {
    knn_baseline_predict(d, d.examples[0].features, d.size() + 1);
    FAIL_CHECK("oversized k accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::KTooLarge);
  }
}

TEST_CASE("knn baseline: matches the exhaustive oracle") {
  Rng rng(1003);
  for (int trial = 0; trial < 60; ++trial) {
    Dataset d;
    d.task = Task::Binary;
    d.n_features = 3;
    std::size_t n = 30;
    for (std::size_t i = 0; i < n; ++i) {
      SparseVector x;
      for (std::uint32_t j = 1; j <= 3; ++j)
        if (rng.below(4) != 0) x.entries.push_back({j, rng.uniform(-3.0, 3.0)});
      d.examples.push_back({x, double(rng.below(2))});
    }
    SparseVector q{{{1, rng.uniform(-3.0, 3.0)}, {3, rng.uniform(-3.0, 3.0)}}};
    std::size_t k = 1 + rng.below(n);
    CHECK(knn_baseline_predict(d, q, k) == knn_oracle(d, q, k));
  }
}

}  // TEST_SUITE
