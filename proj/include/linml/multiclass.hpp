#pragma once

#include <vector>

#include "linml/train.hpp"

namespace linml {

// One binary model per class, trained class-vs-rest.
struct OvrModel {
  std::vector<int> classes;   // ascending class ids
  std::vector<Model> models;  // aligned with classes
};

// Relabels the data to 1{target == c} for each class c and trains a binary
// model per class; the per-class seed is cfg.seed + the class position.
OvrModel train_ovr(const Dataset& d, const TrainConfig& cfg);

// Raw consensus score of each per-class model, aligned with m.classes.
std::vector<double> ovr_scores(const OvrModel& m, const SparseVector& x);

// Class whose model yields the largest raw score; ties go to the smallest
// class id.
int predict_ovr(const OvrModel& m, const SparseVector& x);

}  // namespace linml
