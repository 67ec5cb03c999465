#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "kmodes/dataset.hpp"
#include "kmodes/engine.hpp"

namespace kmodes {

/// Head-to-head score of the cao and matching initialisers on one dataset
/// at k = 3: fitness = c_cao - c_match, negative when matching found the
/// cheaper clustering.
struct FitnessReport {
  Cost c_cao = 0;
  Cost c_match = 0;
  Cost fitness = 0;
  int reps_used = 0;
  int k = 3;
};

/// c_cao is the final cost of the single deterministic cao run; c_match the
/// minimum final cost over `reps` seeded matching runs (seed + 0 .. seed +
/// reps - 1).
FitnessReport fitness(const Dataset& ds, int reps, std::uint64_t seed,
                      const FitOptions& options = {});

/// Uniform independent categorical entries; the attribute space is induced
/// from the sampled data, so declared categories that never appear are
/// dropped.
Dataset sample_random_dataset(std::size_t n_rows,
                              std::span<const std::size_t> attribute_sizes,
                              std::uint64_t seed);

struct PcaResult {
  std::vector<double> scores;    // one per row, mean 0
  std::vector<double> loading;   // unit length, largest-magnitude entry positive
  double eigenvalue = 0.0;
  /// Set when the data has no variance at all; scores are all zero.
  bool degenerate = false;
};

/// Projection of the integer-coded rows onto the leading eigenvector of the
/// sample covariance matrix, computed by power iteration (relative
/// tolerance 1e-10, at most 10000 iterations) on mean-centred columns.
PcaResult first_principal_component(const Dataset& ds);

/// Spread and shape summary of a score vector. Moments are population
/// ratios (skewness m3 / m2^(3/2), excess kurtosis m4 / m2^2 - 3) except
/// the variance, which uses the n-1 denominator. Quantiles interpolate
/// linearly.
struct ComponentSummary {
  double variance = 0;
  double skewness = 0;
  double kurtosis = 0;
  double iqr = 0;
  double lower_decile = 0;
  double upper_decile = 0;
};

ComponentSummary summarize_component(std::span<const double> scores);

void write_component_summary_csv(const std::filesystem::path& path,
                                 const ComponentSummary& summary);

}  // namespace kmodes
