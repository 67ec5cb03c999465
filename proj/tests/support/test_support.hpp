#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "kmodes/dataset.hpp"
#include "kmodes/measures.hpp"

namespace testsupport {

/// Dataset from an explicit code matrix. Attribute sizes are inferred as
/// max code + 1, so every code up to the per-column maximum must occur.
inline kmodes::Dataset make_dataset(const std::vector<std::vector<int>>& rows) {
  const std::size_t m = rows.front().size();
  std::vector<std::vector<std::string>> categories(m);
  for (std::size_t j = 0; j < m; ++j) {
    int max_code = 0;
    for (const auto& r : rows) max_code = std::max(max_code, r[j]);
    for (int s = 0; s <= max_code; ++s) categories[j].push_back(std::to_string(s));
  }
  std::vector<kmodes::Point> points;
  points.reserve(rows.size());
  for (const auto& r : rows) {
    points.emplace_back(r.begin(), r.end());
  }
  return kmodes::Dataset(kmodes::AttributeSpace(std::move(categories)),
                         std::move(points));
}

/// Random code matrix in which every category of every column occurs at
/// least once (first d_j rows cycle through the codes).
inline std::vector<std::vector<int>> random_rows(std::mt19937& gen, std::size_t n,
                                                 std::size_t m, int max_categories) {
  std::uniform_int_distribution<int> dist_d(1, max_categories);
  std::vector<int> sizes(m);
  for (auto& d : sizes) d = dist_d(gen);
  std::vector<std::vector<int>> rows(n, std::vector<int>(m));
  for (std::size_t j = 0; j < m; ++j) {
    std::uniform_int_distribution<int> dist(0, sizes[j] - 1);
    for (std::size_t i = 0; i < n; ++i) {
      rows[i][j] = i < static_cast<std::size_t>(sizes[j])
                       ? static_cast<int>(i)  // guarantee every code occurs
                       : dist(gen);
    }
  }
  // Shuffle so the guarantee rows are not always first.
  std::shuffle(rows.begin(), rows.end(), gen);
  return rows;
}

inline kmodes::Dataset random_dataset(std::mt19937& gen, std::size_t n, std::size_t m,
                                      int max_categories) {
  return make_dataset(random_rows(gen, std::max(n, static_cast<std::size_t>(max_categories)),
                                  m, max_categories));
}

/// As random_dataset, regenerating until at least `min_distinct` distinct
/// row values exist (tiny spaces can collapse onto a handful of rows).
inline kmodes::Dataset random_dataset_with_distinct(std::mt19937& gen, std::size_t n,
                                                    std::size_t m, int max_categories,
                                                    std::size_t min_distinct) {
  for (;;) {
    auto ds = random_dataset(gen, n, m, max_categories);
    if (ds.distinct_row_count() >= min_distinct) return ds;
  }
}

// ---------------------------------------------------------------------------
// Independent oracles. These recompute everything from definitions, without
// touching the incremental machinery they are used to check.
// ---------------------------------------------------------------------------

/// Literal per-position indicator sum.
inline int oracle_dissimilarity(std::span<const kmodes::Code> a,
                                std::span<const kmodes::Code> b) {
  int d = 0;
  for (std::size_t j = 0; j < a.size(); ++j) d += (a[j] == b[j]) ? 0 : 1;
  return d;
}

/// Density through the alternative identity 1 - D(X, x_i) / (m N).
inline double oracle_density_alt(const kmodes::Dataset& ds, std::size_t i) {
  kmodes::Cost total = 0;
  for (std::size_t t = 0; t < ds.n_rows(); ++t) {
    total += oracle_dissimilarity(ds.row(i), ds.row(t));
  }
  const double mn = static_cast<double>(ds.n_attributes()) *
                    static_cast<double>(ds.n_rows());
  return 1.0 - static_cast<double>(total) / mn;
}

/// Cost as the literal triple sum over the binary partition matrix.
inline kmodes::Cost oracle_cost(const kmodes::Dataset& ds,
                                std::span<const std::int32_t> assignment,
                                std::span<const kmodes::Point> modes) {
  kmodes::Cost total = 0;
  for (std::size_t l = 0; l < modes.size(); ++l) {
    for (std::size_t i = 0; i < ds.n_rows(); ++i) {
      const int w = assignment[i] == static_cast<std::int32_t>(l) ? 1 : 0;
      for (std::size_t j = 0; j < ds.n_attributes(); ++j) {
        total += w * (ds.row(i)[j] == modes[l][j] ? 0 : 1);
      }
    }
  }
  return total;
}

/// Minimum of D(members, z) over the entire attribute space by exhaustive
/// enumeration. Keep the space tiny.
inline kmodes::Cost oracle_min_summed_dissimilarity(
    const kmodes::Dataset& ds, std::span<const std::size_t> members) {
  const std::size_t m = ds.n_attributes();
  kmodes::Point z(m, 0);
  kmodes::Cost best = -1;
  for (;;) {
    kmodes::Cost d = 0;
    for (std::size_t i : members) d += oracle_dissimilarity(ds.row(i), z);
    if (best < 0 || d < best) best = d;
    // Odometer over the product space.
    std::size_t j = 0;
    while (j < m) {
      if (static_cast<std::size_t>(++z[j]) < ds.space().size(j)) break;
      z[j] = 0;
      ++j;
    }
    if (j == m) break;
  }
  return best;
}

}  // namespace testsupport
