#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>

#include "linml/dataset.hpp"

namespace linml {

struct Metrics {
  std::size_t n = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
  // confusion[truth][prediction], filled for Binary
  std::array<std::array<std::size_t, 2>, 2> confusion{};
  double rmse = 0.0;  // Regression
  double mae = 0.0;   // Regression
};

Metrics evaluate(std::span<const double> predictions, std::span<const double> truths, Task task);

// "97% (241/248)" with the percentage rounded to the nearest integer.
std::string accuracy_cell(const Metrics& m);

}  // namespace linml
