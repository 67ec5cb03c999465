#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kmodes/dataset.hpp"
#include "kmodes/measures.hpp"

namespace kmodes {

/// A partition of the dataset rows into k clusters with their modes.
/// `assignment` is the single source of truth; member lists are derived on
/// demand so the two can never disagree.
struct Clustering {
  std::size_t k = 0;
  std::vector<std::int32_t> assignment;  // row index -> cluster index
  std::vector<Point> modes;              // one per cluster

  std::vector<std::vector<std::size_t>> members() const;
  std::vector<std::size_t> cluster_sizes() const;
};

inline Cost clustering_cost(const Dataset& ds, const Clustering& c) {
  return clustering_cost(ds, c.assignment, c.modes);
}

/// Outcome of one k-modes run.
struct FitResult {
  Clustering clustering;
  Cost initial_cost = 0;
  Cost final_cost = 0;
  int n_iterations = 0;
  bool reached_max_iterations = false;
  /// Distance and mode-update ties hit during the run. Tie-break rules are
  /// deterministic but unstated by most published results, so runs with
  /// ties are the ones whose numbers can legitimately differ between
  /// implementations.
  std::int64_t tie_events = 0;
  double elapsed_seconds = 0.0;
  std::optional<std::uint64_t> seed;  // stamped by callers, not by fit
  std::string init_label;
};

}  // namespace kmodes
