#include "linml/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "linml/error.hpp"

namespace linml {

namespace {

double raw_score(const LogisticModel& m, const SparseVector& x) {
  double z = m.bias;
  for (const auto& e : x.entries) {
    if (e.index > m.weights.size())
      fail(ErrorKind::IndexOutOfRange,
           "feature index " + std::to_string(e.index) + " exceeds dimension " +
               std::to_string(m.weights.size()));
    z += m.weights[e.index - 1] * e.value;
  }
  return z;
}

// log(1 + e^z) without overflow
double log1p_exp(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

double logistic_loss(const LogisticModel& m, const Dataset& d) {
  double loss = 0.0;
  for (const auto& ex : d.examples)
    loss += log1p_exp(raw_score(m, ex.features)) - ex.target * raw_score(m, ex.features);
  loss /= double(d.size());
  double reg = 0.0;
  for (double w : m.weights) reg += w * w;
  return loss + 0.5 * m.l2 * reg;
}

LogisticModel logistic_train(const Dataset& d, double lr, std::size_t iters, double l2,
                             std::uint64_t seed) {
  (void)seed;  // zero initialization; kept for interface symmetry
  if (d.task != Task::Binary)
    fail(ErrorKind::ConfigInvalid, "logistic_train needs a binary dataset");
  if (d.empty()) fail(ErrorKind::Empty, "no training data");
  if (!(lr > 0.0)) fail(ErrorKind::ConfigInvalid, "lr must be > 0");
  if (iters < 1) fail(ErrorKind::ConfigInvalid, "iters must be >= 1");

  LogisticModel m;
  m.weights.assign(d.n_features, 0.0);
  m.lr = lr;
  m.iters = iters;
  m.l2 = l2;

  const double n = double(d.size());
  std::vector<double> grad(d.n_features);
  for (std::size_t it = 0; it < iters; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_bias = 0.0;
    for (const auto& ex : d.examples) {
      double err = sigmoid(raw_score(m, ex.features)) - ex.target;
      for (const auto& e : ex.features.entries) grad[e.index - 1] += err * e.value;
      grad_bias += err;
    }
    for (std::size_t j = 0; j < m.weights.size(); ++j)
      m.weights[j] -= lr * (grad[j] / n + l2 * m.weights[j]);
    m.bias -= lr * grad_bias / n;

    if (!std::isfinite(logistic_loss(m, d)))
      fail(ErrorKind::NonFiniteLoss,
           "loss diverged at iteration " + std::to_string(it + 1) + "; lower the learning rate");
  }
  return m;
}

int logistic_predict(const LogisticModel& m, const SparseVector& x) {
  return raw_score(m, x) > 0.0 ? 1 : 0;
}

int knn_baseline_predict(const Dataset& train, const SparseVector& x, std::size_t k) {
  if (k < 1 || k > train.size())
    fail(ErrorKind::KTooLarge, "k=" + std::to_string(k) + " with " +
                                   std::to_string(train.size()) + " training points");

  std::vector<std::pair<double, std::size_t>> dist(train.size());
  for (std::size_t i = 0; i < train.size(); ++i)
    dist[i] = {squared_distance(train.examples[i].features, x), i};
  std::partial_sort(dist.begin(), dist.begin() + k, dist.end());

  std::size_t ones = 0;
  for (std::size_t t = 0; t < k; ++t)
    if (train.examples[dist[t].second].target == 1.0) ++ones;
  return 2 * ones > k ? 1 : 0;  // a tie votes 0
}

}  // namespace linml
