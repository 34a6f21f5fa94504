#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linml/sparse.hpp"

namespace linml {

// Multilinear map x -> bias + <weights, x>; weights[i] multiplies feature
// index i+1.
struct Projection {
  double bias = 0.0;
  std::vector<double> weights;
};

double project(const Projection& p, const SparseVector& x);

struct Neighbor {
  double projected = 0.0;
  double target = 0.0;

  bool operator==(const Neighbor&) const = default;
};

// Training points laid out on the projected line, queryable by nearest
// absolute difference. Immutable once built; concurrent queries are safe.
class NeighborIndex {
public:
  struct Entry {
    double projected;
    double target;
    std::size_t ordinal;  // insertion position; identity for exclusion
  };

  NeighborIndex() = default;

  std::size_t size() const { return entries_.size(); }
  std::span<const Entry> entries() const { return entries_; }

  // The k entries minimizing |projected - query|. Equidistant candidates
  // resolve toward the smaller projected value, then earlier insertion.
  // `exclude` removes one entry (named by insertion ordinal) from
  // consideration. Result is ordered nearest first.
  std::vector<Neighbor> k_nearest(double query, std::size_t k,
                                  std::optional<std::size_t> exclude = std::nullopt) const;

  friend NeighborIndex build_index(std::span<const double> projected,
                                   std::span<const double> targets);

private:
  std::vector<Entry> entries_;  // sorted by projected value, insertion-stable
};

NeighborIndex build_index(std::span<const double> projected, std::span<const double> targets);

enum class ConsensusVariant { Mean, Median };

const char* consensus_name(ConsensusVariant v);
std::optional<ConsensusVariant> consensus_from_name(const std::string& name);

// Neighbors whose projected value sits within this band around zero are left
// out of the ratio; if the band swallows every neighbor the estimate falls
// back to the plain mean of the targets.
inline constexpr double kConsensusDivisionEps = 1e-12;

// Ratio consensus over the neighbors: query * target / projected, averaged
// (Mean) or taken as the median of the per-neighbor ratios (Median; an even
// count averages the two middle ratios).
double consensus(double query, std::span<const Neighbor> neighbors, ConsensusVariant variant,
                 double division_eps = kConsensusDivisionEps);

}  // namespace linml
