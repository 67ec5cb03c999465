#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "kmodes/clustering.hpp"
#include "kmodes/engine.hpp"
#include "kmodes/init.hpp"

namespace kmodes {

/// One k-modes run's metrics, as a row of the records file.
struct RunRecord {
  std::string dataset_label;
  std::string init_label;
  int k = 0;
  std::optional<std::uint64_t> seed;
  Cost initial_cost = 0;
  Cost final_cost = 0;
  int n_iterations = 0;
  double elapsed_seconds = 0.0;
};

/// Mean and sample standard deviation of each metric for one initialiser.
struct SummaryRow {
  std::string init_label;
  std::size_t n_runs = 0;
  double initial_cost_mean = 0, initial_cost_std = 0;
  double final_cost_mean = 0, final_cost_std = 0;
  double n_iterations_mean = 0, n_iterations_std = 0;
  double elapsed_seconds_mean = 0, elapsed_seconds_std = 0;
};

/// Seeded repetition experiment. Repetition r of a stochastic initialiser
/// uses seed base_seed + r; the deterministic cao method runs once and its
/// record is replicated so that every metric has zero variance.
std::vector<RunRecord> run_experiment(const Dataset& ds,
                                      const std::string& dataset_label, int k,
                                      const InitMethod& method, int reps,
                                      std::uint64_t base_seed,
                                      const FitOptions& options = {});

/// One SummaryRow per init label, in first-appearance order. Standard
/// deviations use the n-1 denominator and are 0 for a single run.
std::vector<SummaryRow> summarize(std::span<const RunRecord> records);

/// Steps of the empirical CDF: sorted unique values with the fraction of
/// observations less than or equal to each. The final fraction is exactly 1.
std::vector<std::pair<double, double>> ecdf(std::vector<double> values);

void write_records_csv(const std::filesystem::path& path,
                       std::span<const RunRecord> records);
void write_summary_csv(const std::filesystem::path& path,
                       std::span<const SummaryRow> rows);
/// Two-column (plus init label) plot-ready ECDF files of initial or final
/// costs, one block per init label.
void write_ecdf_csv(const std::filesystem::path& path,
                    std::span<const RunRecord> records, bool final_costs);
void write_scatter_csv(const std::filesystem::path& path,
                       std::span<const RunRecord> records);

/// Paper-style "mean (std)" table for the terminal.
std::string format_summary_table(std::span<const SummaryRow> rows);

}  // namespace kmodes
