#include "linml/sparse.hpp"

namespace linml {

double squared_distance(const SparseVector& a, const SparseVector& b) {
  double sum = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  const auto& ea = a.entries;
  const auto& eb = b.entries;
  while (i < ea.size() || j < eb.size()) {
    double d;
    if (j == eb.size() || (i < ea.size() && ea[i].index < eb[j].index)) {
      d = ea[i].value;
      ++i;
    } else if (i == ea.size() || eb[j].index < ea[i].index) {
      d = eb[j].value;
      ++j;
    } else {
      d = ea[i].value - eb[j].value;
      ++i;
      ++j;
    }
    sum += d * d;
  }
  return sum;
}

}  // namespace linml
