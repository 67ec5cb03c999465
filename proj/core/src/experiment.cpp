#include "kmodes/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace kmodes {

namespace {

std::string fmt(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

struct Accumulator {
  std::vector<double> values;
  void push(double v) { values.push_back(v); }
  double mean() const {
    double s = 0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
  }
  double stddev() const {
    if (values.size() < 2) return 0.0;
    const double m = mean();
    double s = 0;
    for (double v : values) s += (v - m) * (v - m);
    return std::sqrt(s / static_cast<double>(values.size() - 1));
  }
};

}  // namespace

std::vector<RunRecord> run_experiment(const Dataset& ds,
                                      const std::string& dataset_label, int k,
                                      const InitMethod& method, int reps,
                                      std::uint64_t base_seed,
                                      const FitOptions& options) {
  if (reps < 1) throw std::invalid_argument("reps must be at least 1");
  if (k < 1) throw std::invalid_argument("k must be at least 1");

  std::vector<RunRecord> records;
  records.reserve(static_cast<std::size_t>(reps));

  auto record_of = [&](const FitResult& fr, std::optional<std::uint64_t> seed) {
    RunRecord rec;
    rec.dataset_label = dataset_label;
    rec.init_label = method.label();
    rec.k = k;
    rec.seed = seed;
    rec.initial_cost = fr.initial_cost;
    rec.final_cost = fr.final_cost;
    rec.n_iterations = fr.n_iterations;
    rec.elapsed_seconds = fr.elapsed_seconds;
    return rec;
  };

  if (method.deterministic()) {
    const auto modes = cao_init(ds, static_cast<std::size_t>(k));
    const auto fr = fit(ds, modes, options);
    const RunRecord rec = record_of(fr, std::nullopt);
    records.assign(static_cast<std::size_t>(reps), rec);
    return records;
  }

  for (int r = 0; r < reps; ++r) {
    InitMethod rep = method;
    rep.seed = base_seed + static_cast<std::uint64_t>(r);
    const auto modes = initial_modes(ds, static_cast<std::size_t>(k), rep);
    const auto fr = fit(ds, modes, options);
    records.push_back(record_of(fr, rep.seed));
  }
  return records;
}

std::vector<SummaryRow> summarize(std::span<const RunRecord> records) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");

  std::vector<std::string> order;
  struct Group {
    Accumulator initial, final_, iters, secs;
  };
  std::unordered_map<std::string, Group> groups;
  for (const RunRecord& r : records) {
    auto [it, inserted] = groups.try_emplace(r.init_label);
    if (inserted) order.push_back(r.init_label);
    it->second.initial.push(static_cast<double>(r.initial_cost));
    it->second.final_.push(static_cast<double>(r.final_cost));
    it->second.iters.push(static_cast<double>(r.n_iterations));
    it->second.secs.push(r.elapsed_seconds);
  }

  std::vector<SummaryRow> rows;
  rows.reserve(order.size());
  for (const std::string& label : order) {
    const Group& g = groups.at(label);
    SummaryRow row;
    row.init_label = label;
    row.n_runs = g.initial.values.size();
    row.initial_cost_mean = g.initial.mean();
    row.initial_cost_std = g.initial.stddev();
    row.final_cost_mean = g.final_.mean();
    row.final_cost_std = g.final_.stddev();
    row.n_iterations_mean = g.iters.mean();
    row.n_iterations_std = g.iters.stddev();
    row.elapsed_seconds_mean = g.secs.mean();
    row.elapsed_seconds_std = g.secs.stddev();
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::pair<double, double>> ecdf(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("ecdf: no values");
  std::sort(values.begin(), values.end());
  const auto n = static_cast<double>(values.size());
  std::vector<std::pair<double, double>> steps;
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    steps.emplace_back(values[i], static_cast<double>(j) / n);
    i = j;
  }
  steps.back().second = 1.0;  // exact, not n/n rounding
  return steps;
}

void write_records_csv(const std::filesystem::path& path,
                       std::span<const RunRecord> records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "dataset,init,k,seed,initial_cost,final_cost,n_iterations,elapsed_seconds\n";
  for (const RunRecord& r : records) {
    out << r.dataset_label << ',' << r.init_label << ',' << r.k << ',';
    if (r.seed) out << *r.seed;
    out << ',' << r.initial_cost << ',' << r.final_cost << ',' << r.n_iterations
        << ',' << fmt(r.elapsed_seconds, "%.3f") << "\n";
  }
}

void write_summary_csv(const std::filesystem::path& path,
                       std::span<const SummaryRow> rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "init,n_runs,initial_cost_mean,initial_cost_std,final_cost_mean,"
         "final_cost_std,n_iterations_mean,n_iterations_std,"
         "elapsed_seconds_mean,elapsed_seconds_std\n";
  for (const SummaryRow& r : rows) {
    out << r.init_label << ',' << r.n_runs << ',' << fmt(r.initial_cost_mean, "%.3f")
        << ',' << fmt(r.initial_cost_std, "%.3f") << ',' << fmt(r.final_cost_mean, "%.3f")
        << ',' << fmt(r.final_cost_std, "%.3f") << ',' << fmt(r.n_iterations_mean, "%.3f")
        << ',' << fmt(r.n_iterations_std, "%.3f") << ','
        << fmt(r.elapsed_seconds_mean, "%.3f") << ','
        << fmt(r.elapsed_seconds_std, "%.3f") << "\n";
  }
}

void write_ecdf_csv(const std::filesystem::path& path,
                    std::span<const RunRecord> records, bool final_costs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "init,cost,fraction\n";

  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<double>> per_init;
  for (const RunRecord& r : records) {
    auto [it, inserted] = per_init.try_emplace(r.init_label);
    if (inserted) order.push_back(r.init_label);
    it->second.push_back(
        static_cast<double>(final_costs ? r.final_cost : r.initial_cost));
  }
  for (const std::string& label : order) {
    for (const auto& [value, fraction] : ecdf(per_init.at(label))) {
      out << label << ',' << fmt(value, "%.6g") << ',' << fmt(fraction, "%.10g")
          << "\n";
    }
  }
}

void write_scatter_csv(const std::filesystem::path& path,
                       std::span<const RunRecord> records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "init,initial_cost,final_cost\n";
  for (const RunRecord& r : records) {
    out << r.init_label << ',' << r.initial_cost << ',' << r.final_cost << "\n";
  }
}

std::string format_summary_table(std::span<const SummaryRow> rows) {
  std::ostringstream out;
  auto cell = [](double mean, double sd) {
    return fmt(mean, "%.2f") + " (" + fmt(sd, "%.3f") + ")";
  };
  out << "init        initial cost          final cost            iterations"
         "      time (s)\n";
  for (const SummaryRow& r : rows) {
    char line[256];
    std::snprintf(line, sizeof(line), "%-10s  %-20s  %-20s  %-14s  %s\n",
                  r.init_label.c_str(),
                  cell(r.initial_cost_mean, r.initial_cost_std).c_str(),
                  cell(r.final_cost_mean, r.final_cost_std).c_str(),
                  cell(r.n_iterations_mean, r.n_iterations_std).c_str(),
                  cell(r.elapsed_seconds_mean, r.elapsed_seconds_std).c_str());
    out << line;
  }
  return out.str();
}

}  // namespace kmodes
