#include "linml/metrics.hpp"

#include <cmath>
#include <string>

#include "linml/error.hpp"

namespace linml {

Metrics evaluate(std::span<const double> predictions, std::span<const double> truths, Task task) {
  if (predictions.size() != truths.size())
    fail(ErrorKind::LengthMismatch, std::to_string(predictions.size()) + " predictions vs " +
                                        std::to_string(truths.size()) + " truths");
  if (predictions.empty()) fail(ErrorKind::Empty, "nothing to evaluate");

  Metrics m;
  m.n = predictions.size();
  if (task == Task::Regression) {
    double se = 0.0;
    double ae = 0.0;
    for (std::size_t i = 0; i < m.n; ++i) {
      double r = predictions[i] - truths[i];
      se += r * r;
      ae += std::fabs(r);
    }
    m.rmse = std::sqrt(se / double(m.n));
    m.mae = ae / double(m.n);
    return m;
  }

  for (std::size_t i = 0; i < m.n; ++i) {
    if (predictions[i] == truths[i]) ++m.correct;
    if (task == Task::Binary) {
      auto t = truths[i] == 1.0 ? 1 : 0;
      auto p = predictions[i] == 1.0 ? 1 : 0;
      ++m.confusion[t][p];
    }
  }
  m.accuracy = double(m.correct) / double(m.n);
  return m;
}

std::string accuracy_cell(const Metrics& m) {
  auto pct = static_cast<long long>(std::llround(100.0 * double(m.correct) / double(m.n)));
  return std::to_string(pct) + "% (" + std::to_string(m.correct) + "/" + std::to_string(m.n) +
         ")";
}

}  // namespace linml
