#pragma once

#include <span>
#include <stdexcept>

#include "kmodes/clustering.hpp"

namespace kmodes {

/// Raised when the initial assignment pass leaves some cluster with no
/// members. Only reachable through pathological ties; never repaired
/// silently.
class DegenerateInitialisation : public std::runtime_error {
 public:
  DegenerateInitialisation(std::size_t cluster, const std::string& what)
      : std::runtime_error(what), cluster_(cluster) {}
  std::size_t cluster() const { return cluster_; }

 private:
  std::size_t cluster_;
};

struct FitOptions {
  int max_iterations = 100;
};

/// Index of the mode closest to x; ties go to the lowest cluster index.
std::size_t select_closest(std::span<const Code> x, std::span<const Point> modes);

/// First phase of a run: route every row, in dataset order, to the cluster
/// whose initial mode is closest (modes held fixed while routing), then
/// recompute each cluster's mode once from its members. The given modes
/// must be distinct dataset rows, which guarantees each one's own row
/// lands in its own cluster.
Clustering initial_assignment(const Dataset& ds, std::span<const Point> initial_modes);

/// One refinement pass in dataset order. A row whose closest mode differs
/// from its current cluster is moved and both affected modes are updated
/// immediately; a move that would empty its source cluster is skipped for
/// the pass. Returns the number of rows moved.
std::size_t iterate(const Dataset& ds, Clustering& clustering);

/// Full run: initial assignment, then refinement passes until a pass moves
/// nothing or max_iterations is hit. n_iterations counts refinement passes,
/// so a run that is already stable reports 1. `initial_cost` is the cost
/// immediately after the assignment phase; elapsed time covers the whole
/// call.
FitResult fit(const Dataset& ds, std::span<const Point> initial_modes,
              const FitOptions& options = {});

}  // namespace kmodes
