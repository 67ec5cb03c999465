#include "kmodes/measures.hpp"

#include <stdexcept>
#include <string>

namespace kmodes {

int dissimilarity(std::span<const Code> a, std::span<const Code> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dissimilarity: points of different length");
  }
  int d = 0;
  for (std::size_t j = 0; j < a.size(); ++j) d += (a[j] != b[j]);
  return d;
}

Cost summed_dissimilarity(std::span<const Point> rows, std::span<const Code> z) {
  Cost total = 0;
  for (const Point& r : rows) total += dissimilarity(r, z);
  return total;
}

Cost summed_dissimilarity(const Dataset& ds, std::span<const std::size_t> rows,
                          std::span<const Code> z) {
  Cost total = 0;
  for (std::size_t i : rows) total += dissimilarity(ds.row(i), z);
  return total;
}

Cost summed_dissimilarity(const Dataset& ds, std::span<const Code> z) {
  Cost total = 0;
  for (std::size_t i = 0; i < ds.n_rows(); ++i) total += dissimilarity(ds.row(i), z);
  return total;
}

std::span<const std::int64_t> frequencies(const Dataset& ds, std::size_t j) {
  return ds.category_counts(j);  // range-checked there
}

double density(const Dataset& ds, std::size_t i) {
  if (i >= ds.n_rows()) throw std::out_of_range("density: row index out of range");
  const auto r = ds.row(i);
  const double n = static_cast<double>(ds.n_rows());
  double sum = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    sum += static_cast<double>(ds.category_counts(j)[static_cast<std::size_t>(r[j])]) / n;
  }
  return sum / static_cast<double>(r.size());
}

std::vector<double> densities(const Dataset& ds) {
  std::vector<double> out(ds.n_rows());
  for (std::size_t i = 0; i < ds.n_rows(); ++i) out[i] = density(ds, i);
  return out;
}

Cost clustering_cost(const Dataset& ds, std::span<const std::int32_t> assignment,
                     std::span<const Point> modes) {
  if (assignment.size() != ds.n_rows()) {
    throw std::invalid_argument("cost: assignment length does not match dataset");
  }
  Cost total = 0;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const std::int32_t l = assignment[i];
    if (l < 0 || static_cast<std::size_t>(l) >= modes.size()) {
      throw std::invalid_argument("cost: row " + std::to_string(i) +
                                  " is not assigned to a cluster");
    }
    total += dissimilarity(ds.row(i), modes[static_cast<std::size_t>(l)]);
  }
  return total;
}

namespace {

// Shared core: counts[j][code] for the member rows, then the per-attribute
// maximal category with the incumbent-keeping tie rule.
Point mode_from_counts(const std::vector<std::vector<std::int64_t>>& counts,
                       const Point* current) {
  const std::size_t m = counts.size();
  Point mode(m);
  for (std::size_t j = 0; j < m; ++j) {
    const auto& col = counts[j];
    std::int64_t best = -1;
    Code best_code = 0;
    for (std::size_t s = 0; s < col.size(); ++s) {
      if (col[s] > best) {
        best = col[s];
        best_code = static_cast<Code>(s);
      }
    }
    if (current != nullptr) {
      const Code cur = (*current)[j];
      if (col[static_cast<std::size_t>(cur)] == best) best_code = cur;
    }
    mode[j] = best_code;
  }
  return mode;
}

}  // namespace

Point mode_of(const Dataset& ds, std::span<const std::size_t> members,
              const Point* current) {
  if (members.empty()) {
    throw std::invalid_argument("mode_of: the mode of an empty cluster is undefined");
  }
  const std::size_t m = ds.n_attributes();
  std::vector<std::vector<std::int64_t>> counts(m);
  for (std::size_t j = 0; j < m; ++j) counts[j].assign(ds.space().size(j), 0);
  for (std::size_t i : members) {
    const auto r = ds.row(i);
    for (std::size_t j = 0; j < m; ++j) ++counts[j][static_cast<std::size_t>(r[j])];
  }
  return mode_from_counts(counts, current);
}

Point mode_of(std::span<const Point> rows, const AttributeSpace& space,
              const Point* current) {
  if (rows.empty()) {
    throw std::invalid_argument("mode_of: the mode of an empty cluster is undefined");
  }
  const std::size_t m = space.n_attributes();
  std::vector<std::vector<std::int64_t>> counts(m);
  for (std::size_t j = 0; j < m; ++j) counts[j].assign(space.size(j), 0);
  for (const Point& r : rows) {
    if (r.size() != m) throw std::invalid_argument("mode_of: row of wrong length");
    for (std::size_t j = 0; j < m; ++j) ++counts[j][static_cast<std::size_t>(r[j])];
  }
  return mode_from_counts(counts, current);
}

}  // namespace kmodes
