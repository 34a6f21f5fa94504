#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linml/sparse.hpp"

namespace linml {

enum class Task { Regression, Binary, Multiclass };

const char* task_name(Task t);
std::optional<Task> task_from_name(const std::string& name);

struct Example {
  SparseVector features;
  double target = 0.0;

  bool operator==(const Example&) const = default;
};

// For Binary data: which raw file labels were normalized to 0 and to 1.
struct LabelMap {
  std::optional<double> raw_zero;
  std::optional<double> raw_one;
};

struct Dataset {
  std::vector<Example> examples;
  std::size_t n_features = 0;  // max feature index seen
  Task task = Task::Regression;
  std::optional<LabelMap> label_map;  // present for Binary

  std::size_t size() const { return examples.size(); }
  bool empty() const { return examples.empty(); }
};

// LIBSVM text format: one example per line,
//   <label> <index>:<value> <index>:<value> ...
// with 1-based strictly ascending indices. '#' starts a comment running to
// end of line; blank lines are skipped.
//
// Binary labels are normalized to {0,1}: with two distinct raw labels, a
// label <= 0 (or failing that, the one whose printed form sorts first) maps
// to 0 and the other to 1; the mapping is recorded in the dataset. A file
// with a single distinct label maps it to 0 when <= 0, else to 1. More than
// two distinct labels is an error. Multiclass labels must be non-negative
// integers and are kept as-is.
Dataset parse_libsvm(std::istream& in, Task task);
Dataset parse_libsvm(const std::string& text, Task task);
Dataset parse_libsvm_file(const std::string& path, Task task);

void write_libsvm(const Dataset& d, std::ostream& out);
std::string write_libsvm_string(const Dataset& d);
void write_libsvm_file(const Dataset& d, const std::string& path);

// Seeded shuffled partition; |train| = round(train_fraction * |d|). The two
// halves keep the parent's task, label map and n_features.
std::pair<Dataset, Dataset> split_dataset(const Dataset& d, double train_fraction,
                                          std::uint64_t seed);

// Seeded subsample of min(n, |d|) rows without replacement.
Dataset subsample_dataset(const Dataset& d, std::size_t n, std::uint64_t seed);

enum class SyntheticFn { Sqrt, Exp };
enum class SyntheticMode { Regression, BinarizedAtMedian };

// n single-feature examples with x uniform in [x_lo, x_hi]. Regression mode
// stores f(x) as the target; BinarizedAtMedian labels each point 1 when f(x)
// exceeds the median of the generated f values, else 0.
Dataset generate_synthetic(SyntheticFn fn, std::size_t n, double x_lo, double x_hi,
                           SyntheticMode mode, std::uint64_t seed);

}  // namespace linml
