#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "linml/dataset.hpp"
#include "linml/projection.hpp"

namespace linml {

struct TrainConfig {
  std::size_t k = 5;
  double inc = 0.05;    // pseudo-label step size
  double eps = 1e-3;    // tolerance below which q and p count as agreeing
  std::size_t max_iters = 100;
  double ridge_lambda = 1e-6;
  std::uint64_t seed = 0;
  ConsensusVariant consensus = ConsensusVariant::Mean;
  bool leave_self_out = true;  // exclude a point from its own neighborhood while learning

  void validate() const;  // throws ConfigInvalid
};

// Per-training-point surrogate targets for binary classification. Class 0
// points live in (0, 0.5), class 1 points in (0.5, 1].
struct PseudoLabelState {
  std::vector<double> p;
  std::vector<int> classes;  // 0/1, aligned with p
};

struct Model {
  Projection projection;
  NeighborIndex index;  // training projections paired with final targets
  std::size_t k = 1;
  Task task = Task::Regression;
  TrainConfig config;
  std::optional<LabelMap> label_map;  // Binary only
};

// Ridge least-squares fit of the projection against the given targets via the
// normal equations; the bias is never penalized. ridge_lambda == 0 on a
// rank-deficient design raises SingularSystem.
Projection fit_projection(const Dataset& d, std::span<const double> targets,
                          double ridge_lambda);

// Margin keeping initial pseudo-labels strictly inside their class range.
inline constexpr double kPseudoLabelMargin = 1e-3;

PseudoLabelState init_pseudo_labels(std::span<const int> classes, std::uint64_t seed);

struct LearnStepResult {
  PseudoLabelState state;
  std::size_t changed = 0;
};

// One synchronous refinement pass: every q_i is the consensus of point i's k
// nearest projected neighbors under the previous state's pseudo-labels (the
// point itself excluded when leave_self_out). Each p_i then either stays (q
// within eps), adopts a q lying strictly inside its class range, or moves
// one `inc` step toward q when the step keeps it inside the range. A
// consensus at or beyond the range boundaries never overwrites p directly;
// it can only pull p by steps.
LearnStepResult learn_step(std::span<const double> projections, const PseudoLabelState& state,
                           const TrainConfig& cfg);

struct LearnResult {
  PseudoLabelState state;
  bool converged = false;
  std::size_t iterations = 0;
};

// Iterates learn_step until no pseudo-label moves (converged) or max_iters
// passes have run.
LearnResult learn(std::span<const double> projections, PseudoLabelState state,
                  const TrainConfig& cfg);

Model train_regression(const Dataset& d, const TrainConfig& cfg);
Model train_binary(const Dataset& d, const TrainConfig& cfg);

// Raw consensus value at x's projection; the Binary decision threshold is
// applied by predict().
double predict_score(const Model& m, const SparseVector& x);

// Regression: the consensus value. Binary: 1 if the consensus exceeds 0.5,
// else 0 (a consensus of exactly 0.5 outputs 0).
double predict(const Model& m, const SparseVector& x);

// Trains one model per candidate k on `train`, scores each on `val`
// (accuracy for Binary, negative RMSE for Regression) and returns the best;
// ties go to the smaller k.
std::size_t tune_k(const Dataset& train, const Dataset& val, std::span<const std::size_t> grid,
                   const TrainConfig& cfg);

}  // namespace linml
