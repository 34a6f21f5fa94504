#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace linml {

// One stored coordinate of a sparse feature vector. Indices are 1-based as in
// the LIBSVM text format.
struct FeatureEntry {
  std::uint32_t index = 0;
  double value = 0.0;

  bool operator==(const FeatureEntry&) const = default;
};

// Sparse feature vector; indices strictly ascending, values finite.
struct SparseVector {
  std::vector<FeatureEntry> entries;

  bool operator==(const SparseVector&) const = default;
};

// Squared Euclidean distance between two sparse vectors (absent coordinates
// are zero).
double squared_distance(const SparseVector& a, const SparseVector& b);

}  // namespace linml
