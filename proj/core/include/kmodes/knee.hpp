#pragma once

#include <utility>
#include <vector>

#include "kmodes/engine.hpp"
#include "kmodes/init.hpp"

namespace kmodes {

/// (k, final cost) samples with strictly increasing k. At least two points.
struct CostCurve {
  std::vector<std::pair<int, double>> points;

  explicit CostCurve(std::vector<std::pair<int, double>> pts);
};

struct KneeResult {
  int k = 0;
  /// Set when no knee is defined (flat or two-point curve); k is then the
  /// smallest k of the curve.
  bool degenerate = false;
};

/// Inclusive candidate range [2, floor(sqrt(N))] for the cluster count.
/// Throws for N < 9, where the range would collapse; pick k explicitly
/// instead.
std::pair<int, int> k_bounds(std::size_t n_rows);

/// Final cost of a run per k over the inclusive range. The deterministic
/// cao method runs once per k; stochastic methods take the best (lowest)
/// final cost of `reps` seeded runs.
CostCurve build_cost_curve(const Dataset& ds, std::pair<int, int> k_range,
                           const InitMethod& method, int reps = 1,
                           const FitOptions& options = {});

/// Knee of a decreasing convex cost curve: min-max normalise both axes,
/// invert the y axis to get a concave increasing curve, and locate the
/// maximum of the difference curve y - x under the sensitivity-1 threshold
/// rule. No smoothing is applied.
KneeResult knee(const CostCurve& curve);

}  // namespace kmodes
