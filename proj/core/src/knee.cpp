#include "kmodes/knee.hpp"

#include <cmath>
#include <stdexcept>

namespace kmodes {

CostCurve::CostCurve(std::vector<std::pair<int, double>> pts) : points(std::move(pts)) {
  if (points.size() < 2) {
    throw std::invalid_argument("cost curve needs at least two points");
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].first <= points[i - 1].first) {
      throw std::invalid_argument("cost curve k values must be strictly increasing");
    }
  }
}

std::pair<int, int> k_bounds(std::size_t n_rows) {
  if (n_rows < 9) {
    throw std::invalid_argument(
        "dataset too small for a candidate range; choose k explicitly");
  }
  auto root = static_cast<std::size_t>(std::sqrt(static_cast<double>(n_rows)));
  while ((root + 1) * (root + 1) <= n_rows) ++root;
  while (root * root > n_rows) --root;
  return {2, static_cast<int>(root)};
}

CostCurve build_cost_curve(const Dataset& ds, std::pair<int, int> k_range,
                           const InitMethod& method, int reps,
                           const FitOptions& options) {
  if (k_range.first < 1 || k_range.second < k_range.first) {
    throw std::invalid_argument("invalid k range");
  }
  if (reps < 1) throw std::invalid_argument("reps must be at least 1");

  std::vector<std::pair<int, double>> points;
  points.reserve(static_cast<std::size_t>(k_range.second - k_range.first + 1));
  for (int k = k_range.first; k <= k_range.second; ++k) {
    Cost best = 0;
    if (method.deterministic()) {
      best = fit(ds, cao_init(ds, static_cast<std::size_t>(k)), options).final_cost;
    } else {
      const std::uint64_t base = method.seed.value_or(0);
      for (int r = 0; r < reps; ++r) {
        InitMethod rep = method;
        rep.seed = base + static_cast<std::uint64_t>(r);
        const Cost c =
            fit(ds, initial_modes(ds, static_cast<std::size_t>(k), rep), options)
                .final_cost;
        if (r == 0 || c < best) best = c;
      }
    }
    points.emplace_back(k, static_cast<double>(best));
  }
  return CostCurve(std::move(points));
}

KneeResult knee(const CostCurve& curve) {
  const std::size_t n = curve.points.size();
  const int k_min = curve.points.front().first;

  double y_lo = curve.points[0].second, y_hi = y_lo;
  for (const auto& [k, y] : curve.points) {
    y_lo = std::min(y_lo, y);
    y_hi = std::max(y_hi, y);
  }
  if (n == 2 || y_hi == y_lo) return {k_min, true};

  const double x_lo = static_cast<double>(curve.points.front().first);
  const double x_hi = static_cast<double>(curve.points.back().first);

  // Concave-increasing transform of a decreasing convex curve, then the
  // difference against the diagonal.
  std::vector<double> xn(n), diff(n);
  for (std::size_t i = 0; i < n; ++i) {
    xn[i] = (static_cast<double>(curve.points[i].first) - x_lo) / (x_hi - x_lo);
    const double yn = (curve.points[i].second - y_lo) / (y_hi - y_lo);
    diff[i] = (1.0 - yn) - xn[i];
  }

  double spacing = 0.0;
  for (std::size_t i = 1; i < n; ++i) spacing += xn[i] - xn[i - 1];
  spacing /= static_cast<double>(n - 1);
  const double sensitivity = 1.0;

  // First local maximum of the difference curve whose threshold is crossed
  // before the next one; the global maximum if none is.
  std::size_t candidate = static_cast<std::size_t>(-1);
  double threshold = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const bool local_max =
        i + 1 < n && diff[i] > diff[i - 1] && diff[i] >= diff[i + 1];
    if (local_max) {
      candidate = i;
      threshold = diff[i] - sensitivity * spacing;
    } else if (candidate != static_cast<std::size_t>(-1) && diff[i] < threshold) {
      return {curve.points[candidate].first, false};
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (diff[i] > diff[best]) best = i;
  }
  return {curve.points[best].first, false};
}

}  // namespace kmodes
