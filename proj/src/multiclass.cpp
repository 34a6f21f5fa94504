#include "linml/multiclass.hpp"

#include <algorithm>
#include <cmath>

#include "linml/error.hpp"

namespace linml {

OvrModel train_ovr(const Dataset& d, const TrainConfig& cfg) {
  if (d.task != Task::Multiclass)
    fail(ErrorKind::ConfigInvalid, "train_ovr needs a multiclass dataset");
  if (d.empty()) fail(ErrorKind::Empty, "no training data");

  std::vector<int> classes;
  for (const auto& ex : d.examples) {
    int c = static_cast<int>(std::llround(ex.target));
    if (std::find(classes.begin(), classes.end(), c) == classes.end()) classes.push_back(c);
  }
  std::sort(classes.begin(), classes.end());

  OvrModel m;
  m.classes = classes;
  m.models.reserve(classes.size());
  for (std::size_t j = 0; j < classes.size(); ++j) {
    Dataset rest;
    rest.task = Task::Binary;
    rest.n_features = d.n_features;
    rest.label_map = LabelMap{0.0, 1.0};
    rest.examples.reserve(d.size());
    for (const auto& ex : d.examples)
      rest.examples.push_back(
          {ex.features, std::llround(ex.target) == classes[j] ? 1.0 : 0.0});

    TrainConfig per_class = cfg;
    per_class.seed = cfg.seed + j;
    m.models.push_back(train_binary(rest, per_class));
  }
  return m;
}

std::vector<double> ovr_scores(const OvrModel& m, const SparseVector& x) {
  std::vector<double> scores(m.models.size());
  for (std::size_t j = 0; j < m.models.size(); ++j) scores[j] = predict_score(m.models[j], x);
  return scores;
}

int predict_ovr(const OvrModel& m, const SparseVector& x) {
  if (m.models.empty() || m.models.size() != m.classes.size())
    fail(ErrorKind::Empty, "ovr model has no per-class models");
  auto scores = ovr_scores(m, x);
  int best_class = m.classes[0];
  double best_score = scores[0];
  for (std::size_t j = 1; j < scores.size(); ++j) {
    if (scores[j] > best_score ||
        (scores[j] == best_score && m.classes[j] < best_class)) {
      best_score = scores[j];
      best_class = m.classes[j];
    }
  }
  return best_class;
}

}  // namespace linml
