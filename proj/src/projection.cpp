#include "linml/projection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "linml/error.hpp"

namespace linml {

double project(const Projection& p, const SparseVector& x) {
  double sum = p.bias;
  for (const auto& e : x.entries) {
    if (e.index > p.weights.size())
      fail(ErrorKind::IndexOutOfRange,
           "feature index " + std::to_string(e.index) + " exceeds dimension " +
               std::to_string(p.weights.size()));
    sum += p.weights[e.index - 1] * e.value;
  }
  return sum;
}

const char* consensus_name(ConsensusVariant v) {
  return v == ConsensusVariant::Mean ? "mean" : "median";
}

std::optional<ConsensusVariant> consensus_from_name(const std::string& name) {
  if (name == "mean") return ConsensusVariant::Mean;
  if (name == "median") return ConsensusVariant::Median;
  return std::nullopt;
}

NeighborIndex build_index(std::span<const double> projected, std::span<const double> targets) {
  if (projected.size() != targets.size())
    fail(ErrorKind::LengthMismatch, std::to_string(projected.size()) + " projections vs " +
                                        std::to_string(targets.size()) + " targets");
  if (projected.empty()) fail(ErrorKind::Empty, "cannot build an empty index");

  NeighborIndex idx;
  idx.entries_.reserve(projected.size());
  for (std::size_t i = 0; i < projected.size(); ++i)
    idx.entries_.push_back({projected[i], targets[i], i});
  std::stable_sort(idx.entries_.begin(), idx.entries_.end(),
                   [](const auto& a, const auto& b) { return a.projected < b.projected; });
  return idx;
}

std::vector<Neighbor> NeighborIndex::k_nearest(double query, std::size_t k,
                                               std::optional<std::size_t> exclude) const {
  const std::size_t n = entries_.size();
  std::size_t available = n;
  if (exclude && *exclude < n) --available;
  if (k < 1 || k > available)
    fail(ErrorKind::KTooLarge, "k=" + std::to_string(k) + " with " + std::to_string(available) +
                                   " entries available");

  std::vector<Neighbor> out;
  out.reserve(k);

  // Appends entries [from, to) in array order (ascending ordinal within equal
  // projected values) until k neighbors are collected.
  auto take = [&](std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to && out.size() < k; ++i) {
      if (exclude && entries_[i].ordinal == *exclude) continue;
      out.push_back({entries_[i].projected, entries_[i].target});
    }
  };

  // Binary-search seed, then expand over runs of equal projected values.
  // Comparing whole runs keeps equidistant duplicates in insertion order.
  auto first_ge = std::lower_bound(
      entries_.begin(), entries_.end(), query,
      [](const Entry& e, double q) { return e.projected < q; });
  std::size_t left = static_cast<std::size_t>(first_ge - entries_.begin());  // entries [0,left) < query
  std::size_t right = left;                                                  // entries [right,n) >= query

  while (out.size() < k && (left > 0 || right < n)) {
    bool pick_left;
    if (left == 0) {
      pick_left = false;
    } else if (right == n) {
      pick_left = true;
    } else {
      double dist_left = query - entries_[left - 1].projected;
      double dist_right = entries_[right].projected - query;
      pick_left = dist_left <= dist_right;  // tie goes to the smaller projected value
    }

    if (pick_left) {
      double v = entries_[left - 1].projected;
      std::size_t start = left;
      while (start > 0 && entries_[start - 1].projected == v) --start;
      take(start, left);
      left = start;
    } else {
      double v = entries_[right].projected;
      std::size_t stop = right;
      while (stop < n && entries_[stop].projected == v) ++stop;
      take(right, stop);
      right = stop;
    }
  }
  return out;
}

double consensus(double query, std::span<const Neighbor> neighbors, ConsensusVariant variant,
                 double division_eps) {
  if (neighbors.empty()) fail(ErrorKind::EmptyNeighbors, "consensus needs at least one neighbor");

  std::vector<double> ratios;
  ratios.reserve(neighbors.size());
  for (const auto& nb : neighbors)
    if (std::fabs(nb.projected) > division_eps)
      ratios.push_back(query * nb.target / nb.projected);

  if (ratios.empty()) {
    double sum = 0.0;
    for (const auto& nb : neighbors) sum += nb.target;
    return sum / double(neighbors.size());
  }

  if (variant == ConsensusVariant::Mean) {
    double sum = 0.0;
    for (double r : ratios) sum += r;
    return sum / double(ratios.size());
  }

  std::sort(ratios.begin(), ratios.end());
  std::size_t m = ratios.size();
  return (m % 2 == 1) ? ratios[m / 2] : 0.5 * (ratios[m / 2 - 1] + ratios[m / 2]);
}

}  // namespace linml
