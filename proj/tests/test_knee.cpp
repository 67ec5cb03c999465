#include <doctest.h>

#include <cmath>
#include <random>

#include "kmodes/knee.hpp"
#include "support/test_support.hpp"

using namespace kmodes;

namespace {

CostCurve curve_of(const std::vector<std::pair<int, double>>& pts) {
  return CostCurve(pts);
}

// Direct evaluation of the normalised difference curve, as a cross-check.
int argmax_difference(const CostCurve& c) {
  const double x_lo = c.points.front().first;
  const double x_hi = c.points.back().first;
  double y_lo = c.points[0].second, y_hi = y_lo;
  for (const auto& [k, y] : c.points) {
    y_lo = std::min(y_lo, y);
    y_hi = std::max(y_hi, y);
  }
  int best_k = c.points[0].first;
  double best = -1e300;
  for (const auto& [k, y] : c.points) {
    const double xn = (k - x_lo) / (x_hi - x_lo);
    const double d = (1.0 - (y - y_lo) / (y_hi - y_lo)) - xn;
    if (d > best) {
      best = d;
      best_k = k;
    }
  }
  return best_k;
}

}  // namespace

TEST_CASE("k_bounds follows the square root rule") {
  CHECK(k_bounds(683) == std::pair<int, int>{2, 26});
  CHECK(k_bounds(12960) == std::pair<int, int>{2, 113});
  CHECK(k_bounds(100) == std::pair<int, int>{2, 10});
  CHECK(k_bounds(9) == std::pair<int, int>{2, 3});
  CHECK_THROWS_AS(k_bounds(8), std::invalid_argument);
}

TEST_CASE("cost curves validate their points") {
  CHECK_THROWS_AS(curve_of({{2, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(curve_of({{2, 1.0}, {2, 0.5}}), std::invalid_argument);
  CHECK_NOTHROW(curve_of({{2, 1.0}, {5, 0.5}}));
}

TEST_CASE("knee of a steep-then-flat curve sits at the bend") {
  std::vector<std::pair<int, double>> pts;
  for (int k = 2; k <= 12; ++k) {
    pts.emplace_back(k, k <= 8 ? (8 - k) * 50.0 : 0.0);
  }
  const auto result = knee(curve_of(pts));
  CHECK(result.k == 8);
  CHECK_FALSE(result.degenerate);
}

TEST_CASE("degenerate curves fall back to the smallest k with a warning") {
  const auto two_points = knee(curve_of({{2, 10.0}, {3, 5.0}}));
  CHECK(two_points.k == 2);
  CHECK(two_points.degenerate);

  const auto flat = knee(curve_of({{2, 4.0}, {3, 4.0}, {4, 4.0}}));
  CHECK(flat.k == 2);
  CHECK(flat.degenerate);
}

TEST_CASE("knee of 1/k matches direct evaluation of the difference curve") {
  std::vector<std::pair<int, double>> pts;
  for (int k = 2; k <= 26; ++k) pts.emplace_back(k, 1.0 / k);
  const CostCurve curve(pts);
  const auto result = knee(curve);
  CHECK_FALSE(result.degenerate);
  CHECK(result.k == argmax_difference(curve));
}

TEST_CASE("knee is invariant to positive affine cost rescaling") {
  std::mt19937 gen(555);
  std::uniform_real_distribution<double> scale(0.1, 50.0);
  std::uniform_real_distribution<double> shift(-100.0, 100.0);
  for (int trial = 0; trial < 50; ++trial) {
    // Random decreasing convex-ish curve.
    std::vector<std::pair<int, double>> pts;
    double y = 1000.0 + static_cast<double>(gen() % 500);
    double drop = 300.0 + static_cast<double>(gen() % 200);
    for (int k = 2; k <= 20; ++k) {
      pts.emplace_back(k, y);
      y -= drop;
      drop *= 0.5 + 0.4 * (static_cast<double>(gen() % 100) / 100.0);
    }
    const auto base = knee(curve_of(pts));
    CHECK(base.k >= 2);
    CHECK(base.k <= 20);

    const double a = scale(gen);
    const double b = shift(gen);
    auto rescaled = pts;
    for (auto& [k, cost] : rescaled) cost = a * cost + b;
    const auto again = knee(curve_of(rescaled));
    CHECK(again.k == base.k);
    CHECK(again.degenerate == base.degenerate);
  }
}

TEST_CASE("build_cost_curve reaches zero at k = N and is deterministic for cao") {
  std::mt19937 gen(8);
  const auto ds = testsupport::random_dataset(gen, 12, 2, 3);
  const auto n = static_cast<int>(ds.distinct_row_count());
  REQUIRE(n >= 3);

  const InitMethod cao{InitKind::cao, {}};
  const auto curve = build_cost_curve(ds, {2, n}, cao);
  CHECK(curve.points.size() == static_cast<std::size_t>(n - 1));
  for (const auto& [k, cost] : curve.points) {
    CHECK(cost >= 0.0);
    CHECK(cost == std::floor(cost));  // integer-valued by construction
  }
  // With one mode per distinct value every row sits on its mode.
  CHECK(curve.points.back().second == 0.0);

  const auto again = build_cost_curve(ds, {2, n}, cao);
  CHECK(again.points == curve.points);
}

TEST_CASE("build_cost_curve takes the best of reps for stochastic methods") {
  std::mt19937 gen(9);
  const auto ds = testsupport::random_dataset(gen, 14, 2, 3);
  const InitMethod matching{InitKind::matching, 7};
  const auto curve = build_cost_curve(ds, {2, 4}, matching, 5);
  REQUIRE(curve.points.size() == 3);
  for (int i = 0; i < 3; ++i) {
    const int k = curve.points[i].first;
    Cost best = 0;
    for (int r = 0; r < 5; ++r) {
      const auto modes = matching_init(ds, static_cast<std::size_t>(k),
                                       7 + static_cast<std::uint64_t>(r));
      const Cost c = fit(ds, modes).final_cost;
      if (r == 0 || c < best) best = c;
    }
    CHECK(curve.points[i].second == static_cast<double>(best));
  }
}
