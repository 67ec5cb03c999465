#include "kmodes/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "kmodes/init.hpp"
#include "kmodes/rng.hpp"

namespace kmodes {

FitnessReport fitness(const Dataset& ds, int reps, std::uint64_t seed,
                      const FitOptions& options) {
  if (reps < 1) throw std::invalid_argument("reps must be at least 1");
  constexpr std::size_t k = 3;
  if (ds.distinct_row_count() < k) {
    throw std::invalid_argument("fitness needs at least 3 distinct rows");
  }

  FitnessReport report;
  report.reps_used = reps;
  report.k = static_cast<int>(k);
  report.c_cao = fit(ds, cao_init(ds, k), options).final_cost;

  Cost best = 0;
  for (int r = 0; r < reps; ++r) {
    const auto modes = matching_init(ds, k, seed + static_cast<std::uint64_t>(r));
    const Cost c = fit(ds, modes, options).final_cost;
    if (r == 0 || c < best) best = c;
  }
  report.c_match = best;
  report.fitness = report.c_cao - report.c_match;
  return report;
}

Dataset sample_random_dataset(std::size_t n_rows,
                              std::span<const std::size_t> attribute_sizes,
                              std::uint64_t seed) {
  if (n_rows < 1) throw std::invalid_argument("need at least one row");
  if (attribute_sizes.empty()) throw std::invalid_argument("need at least one attribute");
  for (std::size_t d : attribute_sizes) {
    if (d < 1) throw std::invalid_argument("attribute sizes must be positive");
  }
  Rng rng = Rng::stream(seed, "random-dataset");
  std::vector<std::vector<std::string>> rows(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) {
    rows[i].reserve(attribute_sizes.size());
    for (std::size_t d : attribute_sizes) {
      rows[i].push_back("c" + std::to_string(rng.below(d)));
    }
  }
  // First-appearance coding induces the space, dropping unseen categories.
  return dataset_from_labels(rows);
}

PcaResult first_principal_component(const Dataset& ds) {
  const std::size_t n = ds.n_rows();
  const std::size_t m = ds.n_attributes();
  if (n < 2) throw std::invalid_argument("PCA needs at least two rows");

  std::vector<double> mean(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = ds.row(i);
    for (std::size_t j = 0; j < m; ++j) mean[j] += static_cast<double>(r[j]);
  }
  for (double& v : mean) v /= static_cast<double>(n);

  // Sample covariance of the centred integer codes.
  std::vector<double> cov(m * m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = ds.row(i);
    for (std::size_t a = 0; a < m; ++a) {
      const double da = static_cast<double>(r[a]) - mean[a];
      for (std::size_t b = a; b < m; ++b) {
        cov[a * m + b] += da * (static_cast<double>(r[b]) - mean[b]);
      }
    }
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      cov[a * m + b] /= static_cast<double>(n - 1);
      cov[b * m + a] = cov[a * m + b];
    }
  }

  PcaResult result;
  double trace = 0.0;
  for (std::size_t a = 0; a < m; ++a) trace += cov[a * m + a];
  if (trace <= 0.0) {
    result.scores.assign(n, 0.0);
    result.loading.assign(m, 0.0);
    result.degenerate = true;
    return result;
  }

  // Power iteration with a deterministic start vector; the small linear
  // ramp breaks symmetric starts that could be orthogonal to the leading
  // eigenvector.
  std::vector<double> v(m), next(m);
  for (std::size_t j = 0; j < m; ++j) v[j] = 1.0 + 1e-3 * static_cast<double>(j);
  auto normalise = [&](std::vector<double>& u) {
    double norm = 0.0;
    for (double x : u) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : u) x /= norm;
    return norm;
  };
  normalise(v);

  double eigenvalue = 0.0;
  constexpr int kMaxIterations = 10000;
  constexpr double kTolerance = 1e-10;
  for (int it = 0; it < kMaxIterations; ++it) {
    for (std::size_t a = 0; a < m; ++a) {
      double s = 0.0;
      for (std::size_t b = 0; b < m; ++b) s += cov[a * m + b] * v[b];
      next[a] = s;
    }
    const double norm = normalise(next);
    // Align to avoid sign flapping between iterations.
    double dot = 0.0;
    for (std::size_t j = 0; j < m; ++j) dot += next[j] * v[j];
    if (dot < 0.0) {
      for (double& x : next) x = -x;
    }
    double delta = 0.0;
    for (std::size_t j = 0; j < m; ++j) delta = std::max(delta, std::abs(next[j] - v[j]));
    v.swap(next);
    eigenvalue = norm;
    if (delta <= kTolerance) break;
  }

  std::size_t lead = 0;
  for (std::size_t j = 1; j < m; ++j) {
    if (std::abs(v[j]) > std::abs(v[lead])) lead = j;
  }
  if (v[lead] < 0.0) {
    for (double& x : v) x = -x;
  }

  result.loading = v;
  result.eigenvalue = eigenvalue;
  result.scores.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = ds.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      s += (static_cast<double>(r[j]) - mean[j]) * v[j];
    }
    result.scores[i] = s;
  }
  return result;
}

namespace {

// Linear-interpolation quantile of a sorted vector (the same convention as
// numpy's default).
double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - std::floor(h);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

ComponentSummary summarize_component(std::span<const double> scores) {
  if (scores.size() < 2) {
    throw std::invalid_argument("component summary needs at least two scores");
  }
  const auto n = static_cast<double>(scores.size());
  double mean = 0.0;
  for (double s : scores) mean += s;
  mean /= n;

  double m2 = 0.0, m3 = 0.0, m4 = 0.0, ss = 0.0;
  for (double s : scores) {
    const double d = s - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
    ss += d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;

  ComponentSummary out;
  out.variance = ss / (n - 1.0);
  if (m2 > 0.0) {
    out.skewness = m3 / std::pow(m2, 1.5);
    out.kurtosis = m4 / (m2 * m2) - 3.0;
  }
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  out.lower_decile = quantile_sorted(sorted, 0.10);
  out.upper_decile = quantile_sorted(sorted, 0.90);
  out.iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  return out;
}

void write_component_summary_csv(const std::filesystem::path& path,
                                 const ComponentSummary& summary) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "# moments: population ratios (skewness m3/m2^1.5, excess kurtosis "
         "m4/m2^2 - 3); variance n-1; quantiles: linear interpolation\n";
  out << "variance,skewness,kurtosis,iqr,lower_decile,upper_decile\n";
  char line[256];
  std::snprintf(line, sizeof(line), "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                summary.variance, summary.skewness, summary.kurtosis, summary.iqr,
                summary.lower_decile, summary.upper_decile);
  out << line;
}

}  // namespace kmodes
