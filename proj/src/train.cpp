#include "linml/train.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "linml/error.hpp"
#include "linml/util.hpp"

namespace linml {

void TrainConfig::validate() const {
  if (k < 1) fail(ErrorKind::ConfigInvalid, "k must be >= 1");
  if (!(inc > 0.0 && inc < 0.5)) fail(ErrorKind::ConfigInvalid, "inc must lie in (0, 0.5)");
  if (!(eps > 0.0)) fail(ErrorKind::ConfigInvalid, "eps must be > 0");
  if (max_iters < 1) fail(ErrorKind::ConfigInvalid, "max_iters must be >= 1");
  if (!(ridge_lambda >= 0.0)) fail(ErrorKind::ConfigInvalid, "ridge_lambda must be >= 0");
}

namespace {

// Gaussian elimination with partial pivoting on the (m x m) system a*w = b,
// in place. The normal matrix is positive definite whenever lambda > 0, so a
// vanishing pivot can only mean a rank-deficient unregularized system.
std::vector<double> solve_dense(std::vector<std::vector<double>>& a, std::vector<double>& b) {
  const std::size_t m = b.size();
  double scale = 0.0;
  for (const auto& row : a)
    for (double v : row) scale = std::max(scale, std::fabs(v));
  const double tol = 1e-12 * std::max(scale, 1.0);

  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    if (std::fabs(a[pivot][col]) <= tol)
      fail(ErrorKind::SingularSystem, "rank-deficient normal equations (lambda = 0?)");
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      std::swap(b[pivot], b[col]);
    }
    for (std::size_t r = col + 1; r < m; ++r) {
      double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < m; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }

  std::vector<double> w(m);
  for (std::size_t i = m; i-- > 0;) {
    double sum = b[i];
    for (std::size_t c = i + 1; c < m; ++c) sum -= a[i][c] * w[c];
    w[i] = sum / a[i][i];
  }
  return w;
}

std::vector<double> project_all(const Projection& p, const Dataset& d) {
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = project(p, d.examples[i].features);
  return out;
}

std::vector<int> classes_of(const Dataset& d) {
  std::vector<int> classes(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) classes[i] = d.examples[i].target > 0.5 ? 1 : 0;
  return classes;
}

}  // namespace

Projection fit_projection(const Dataset& d, std::span<const double> targets,
                          double ridge_lambda) {
  if (targets.size() != d.size())
    fail(ErrorKind::LengthMismatch, std::to_string(targets.size()) + " targets for " +
                                        std::to_string(d.size()) + " examples");
  if (d.empty()) fail(ErrorKind::Empty, "cannot fit a projection on no data");

  // Normal equations over the design matrix augmented with a leading
  // 1-column for the bias; only the weights are penalized.
  const std::size_t m = d.n_features + 1;
  std::vector<std::vector<double>> a(m, std::vector<double>(m, 0.0));
  std::vector<double> b(m, 0.0);
  std::vector<std::pair<std::size_t, double>> cols;
  for (std::size_t i = 0; i < d.size(); ++i) {
    cols.clear();
    cols.emplace_back(0, 1.0);
    for (const auto& e : d.examples[i].features.entries) {
      if (e.index > d.n_features)
        fail(ErrorKind::IndexOutOfRange, "feature index " + std::to_string(e.index) +
                                             " exceeds n_features " +
                                             std::to_string(d.n_features));
      cols.emplace_back(e.index, e.value);
    }
    for (const auto& [c1, v1] : cols) {
      for (const auto& [c2, v2] : cols) a[c1][c2] += v1 * v2;
      b[c1] += v1 * targets[i];
    }
  }
  for (std::size_t j = 1; j < m; ++j) a[j][j] += ridge_lambda;

  auto w = solve_dense(a, b);
  Projection p;
  p.bias = w[0];
  p.weights.assign(w.begin() + 1, w.end());
  return p;
}

PseudoLabelState init_pseudo_labels(std::span<const int> classes, std::uint64_t seed) {
  if (classes.empty()) fail(ErrorKind::Empty, "no classes to initialize");
  PseudoLabelState st;
  st.classes.assign(classes.begin(), classes.end());
  st.p.resize(classes.size());
  Rng rng(seed);
  const double m = kPseudoLabelMargin;
  for (std::size_t i = 0; i < classes.size(); ++i)
    st.p[i] = classes[i] == 0 ? rng.uniform(m, 0.5 - m) : rng.uniform(0.5 + m, 1.0 - m);
  return st;
}

LearnStepResult learn_step(std::span<const double> projections, const PseudoLabelState& state,
                           const TrainConfig& cfg) {
  const std::size_t n = projections.size();
  if (state.p.size() != n || state.classes.size() != n)
    fail(ErrorKind::LengthMismatch, "state size does not match projections");
  if (n == 0) fail(ErrorKind::Empty, "no training points");
  const std::size_t needed = cfg.k + (cfg.leave_self_out ? 1 : 0);
  if (n < needed)
    fail(ErrorKind::KTooLarge,
         "k=" + std::to_string(cfg.k) + " needs " + std::to_string(needed) + " points, have " +
             std::to_string(n));

  auto index = build_index(projections, state.p);

  LearnStepResult result{state, 0};
  for (std::size_t i = 0; i < n; ++i) {
    auto neighbors = index.k_nearest(
        projections[i], cfg.k,
        cfg.leave_self_out ? std::optional<std::size_t>(i) : std::nullopt);
    double q = consensus(projections[i], neighbors, cfg.consensus);

    const double p = state.p[i];
    const int c = state.classes[i];
    double next = p;
    if (std::fabs(q - p) <= cfg.eps) {
      // agreement: keep
    } else if ((c == 0 && q > 0.0 && q < 0.5) || (c == 1 && q > 0.5 && q <= 1.0)) {
      // adopt a consensus lying strictly inside the class range; anything
      // else can only pull p by steps
      next = q;
    } else if (q - p > cfg.eps &&
               ((c == 0 && p + cfg.inc < 0.5) || (c == 1 && p + cfg.inc <= 1.0))) {
      next = p + cfg.inc;
    } else if (p - q > cfg.eps &&
               ((c == 0 && p - cfg.inc >= 0.0) || (c == 1 && p - cfg.inc >= 0.5))) {
      next = p - cfg.inc;
    }
    if (std::fabs(next - p) > 1e-12) ++result.changed;
    result.state.p[i] = next;
  }
  return result;
}

LearnResult learn(std::span<const double> projections, PseudoLabelState state,
                  const TrainConfig& cfg) {
  for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
    auto step = learn_step(projections, state, cfg);
    state = std::move(step.state);
    if (step.changed == 0) return {std::move(state), true, iter};
  }
  return {std::move(state), false, cfg.max_iters};
}

Model train_regression(const Dataset& d, const TrainConfig& cfg) {
  cfg.validate();
  if (d.task != Task::Regression)
    fail(ErrorKind::ConfigInvalid, "train_regression needs a regression dataset");
  if (d.size() < cfg.k)
    fail(ErrorKind::KTooLarge, "k=" + std::to_string(cfg.k) + " with only " +
                                   std::to_string(d.size()) + " examples");

  std::vector<double> targets(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) targets[i] = d.examples[i].target;

  Model m;
  m.projection = fit_projection(d, targets, cfg.ridge_lambda);
  auto projected = project_all(m.projection, d);
  m.index = build_index(projected, targets);
  m.k = cfg.k;
  m.task = Task::Regression;
  m.config = cfg;
  return m;
}

Model train_binary(const Dataset& d, const TrainConfig& cfg) {
  cfg.validate();
  if (d.task != Task::Binary)
    fail(ErrorKind::ConfigInvalid, "train_binary needs a binary dataset");
  if (d.size() < cfg.k + 1)
    fail(ErrorKind::KTooLarge, "k=" + std::to_string(cfg.k) + " needs at least " +
                                   std::to_string(cfg.k + 1) + " examples, have " +
                                   std::to_string(d.size()));

  auto state = init_pseudo_labels(classes_of(d), cfg.seed);

  // The projection is fit once, against the initial pseudo-labels, and held
  // fixed while the labels are refined.
  Model m;
  m.projection = fit_projection(d, state.p, cfg.ridge_lambda);
  auto projected = project_all(m.projection, d);
  auto learned = learn(projected, std::move(state), cfg);
  m.index = build_index(projected, learned.state.p);
  m.k = cfg.k;
  m.task = Task::Binary;
  m.config = cfg;
  m.label_map = d.label_map;
  return m;
}

double predict_score(const Model& m, const SparseVector& x) {
  double y = project(m.projection, x);
  auto neighbors = m.index.k_nearest(y, m.k);
  return consensus(y, neighbors, m.config.consensus);
}

double predict(const Model& m, const SparseVector& x) {
  double score = predict_score(m, x);
  if (m.task == Task::Binary) return score > 0.5 ? 1.0 : 0.0;
  return score;
}

std::size_t tune_k(const Dataset& train, const Dataset& val, std::span<const std::size_t> grid,
                   const TrainConfig& cfg) {
  if (grid.empty()) fail(ErrorKind::EmptyGrid, "no k candidates");
  if (train.task == Task::Multiclass)
    fail(ErrorKind::ConfigInvalid, "tune_k handles binary and regression tasks");
  if (val.empty()) fail(ErrorKind::Empty, "empty validation set");

  bool binary = train.task == Task::Binary;
  std::size_t best_k = 0;
  double best_score = 0.0;
  bool first = true;
  for (std::size_t k : grid) {
    TrainConfig c = cfg;
    c.k = k;
    Model m = binary ? train_binary(train, c) : train_regression(train, c);
    double score;
    if (binary) {
      std::size_t correct = 0;
      for (const auto& ex : val.examples)
        if (predict(m, ex.features) == ex.target) ++correct;
      score = double(correct) / double(val.size());
    } else {
      double se = 0.0;
      for (const auto& ex : val.examples) {
        double r = predict(m, ex.features) - ex.target;
        se += r * r;
      }
      score = -std::sqrt(se / double(val.size()));
    }
    if (first || score > best_score || (score == best_score && k < best_k)) {
      best_k = k;
      best_score = score;
      first = false;
    }
  }
  return best_k;
}

}  // namespace linml
