#pragma once

#include <cstdint>
#include <vector>

#include "linml/dataset.hpp"

namespace linml {

struct LogisticModel {
  double bias = 0.0;
  std::vector<double> weights;
  // hyperparameter echo
  double lr = 0.0;
  std::size_t iters = 0;
  double l2 = 0.0;
};

// Full-batch gradient descent on L2-regularized mean log-loss from zero
// initialization (the bias is unpenalized). Raises NonFiniteLoss if the loss
// stops being finite, which signals a too-large learning rate.
LogisticModel logistic_train(const Dataset& d, double lr, std::size_t iters, double l2,
                             std::uint64_t seed);

// Mean log-loss plus (l2/2) * ||weights||^2 on d.
double logistic_loss(const LogisticModel& m, const Dataset& d);

// 1 iff w'x + bias > 0 (i.e. sigmoid > 0.5).
int logistic_predict(const LogisticModel& m, const SparseVector& x);

// Majority label among the k nearest training points by Euclidean distance
// in feature space; a vote tie returns 0. Distance ties resolve by earlier
// training position.
int knn_baseline_predict(const Dataset& train, const SparseVector& x, std::size_t k);

}  // namespace linml
