#include "kmodes/engine.hpp"

#include <chrono>
#include <unordered_set>

namespace kmodes {

namespace {

// Per-run working state: cluster sizes, modes, and per-cluster category
// counts stored flat with one offset per attribute. Insertions and removals
// are O(m) apart from the removal rescan, which is O(d_j) for the affected
// attribute.
class EngineState {
 public:
  EngineState(const Dataset& ds, std::vector<Point> modes)
      : ds_(ds), k_(modes.size()), m_(ds.n_attributes()), modes_(std::move(modes)) {
    offsets_.resize(m_ + 1, 0);
    for (std::size_t j = 0; j < m_; ++j) offsets_[j + 1] = offsets_[j] + ds_.space().size(j);
    freq_.assign(k_, std::vector<std::int64_t>(offsets_[m_], 0));
    sizes_.assign(k_, 0);
    assignment_.assign(ds_.n_rows(), -1);
  }

  std::size_t k() const { return k_; }
  const std::vector<Point>& modes() const { return modes_; }
  const std::vector<std::size_t>& sizes() const { return sizes_; }
  std::vector<std::int32_t>& assignment() { return assignment_; }
  std::int64_t tie_events() const { return ties_; }

  std::size_t closest(std::span<const Code> x) {
    std::size_t best = 0;
    int best_d = dissimilarity(x, modes_[0]);
    int at_best = 1;
    for (std::size_t l = 1; l < k_; ++l) {
      const int d = dissimilarity(x, modes_[l]);
      if (d < best_d) {
        best_d = d;
        best = l;
        at_best = 1;
      } else if (d == best_d) {
        ++at_best;
      }
    }
    if (at_best > 1) ++ties_;
    return best;
  }

  void insert(std::size_t i, std::size_t l) {
    const auto r = ds_.row(i);
    auto& f = freq_[l];
    auto& mode = modes_[l];
    for (std::size_t j = 0; j < m_; ++j) {
      const std::int64_t c = ++f[offsets_[j] + static_cast<std::size_t>(r[j])];
      // Strictly beating the incumbent is the only way to take over: the
      // incumbent stays while it remains among the maximal categories.
      if (r[j] != mode[j]) {
        const std::int64_t incumbent = f[offsets_[j] + static_cast<std::size_t>(mode[j])];
        if (c > incumbent) {
          mode[j] = r[j];
        } else if (c == incumbent) {
          ++ties_;  // incumbent kept over an equal-frequency challenger
        }
      }
    }
    ++sizes_[l];
    assignment_[i] = static_cast<std::int32_t>(l);
  }

  void remove(std::size_t i, std::size_t l) {
    const auto r = ds_.row(i);
    auto& f = freq_[l];
    auto& mode = modes_[l];
    --sizes_[l];
    for (std::size_t j = 0; j < m_; ++j) {
      --f[offsets_[j] + static_cast<std::size_t>(r[j])];
      if (r[j] != mode[j]) continue;  // mode count intact, still maximal
      // The mode's own count shrank; rescan the attribute. Keep the
      // incumbent when still maximal, otherwise take the lowest maximal
      // code.
      const std::size_t base = offsets_[j];
      const std::size_t d = offsets_[j + 1] - base;
      std::int64_t best = -1;
      int at_best = 0;
      Code best_code = 0;
      for (std::size_t s = 0; s < d; ++s) {
        if (f[base + s] > best) {
          best = f[base + s];
          best_code = static_cast<Code>(s);
          at_best = 1;
        } else if (f[base + s] == best) {
          ++at_best;
        }
      }
      if (at_best > 1) ++ties_;
      if (f[base + static_cast<std::size_t>(mode[j])] < best) mode[j] = best_code;
    }
  }

  // First phase: routes every row in dataset order against the fixed
  // initial modes, then recomputes each cluster's mode once from its
  // members. Keeping the modes fixed while routing means each initial
  // mode's own row always lands in its own cluster.
  void assign_all() {
    for (std::size_t i = 0; i < ds_.n_rows(); ++i) {
      const std::size_t l = closest(ds_.row(i));
      const auto r = ds_.row(i);
      auto& f = freq_[l];
      for (std::size_t j = 0; j < m_; ++j) ++f[offsets_[j] + static_cast<std::size_t>(r[j])];
      ++sizes_[l];
      assignment_[i] = static_cast<std::int32_t>(l);
    }
    for (std::size_t l = 0; l < k_; ++l) {
      if (sizes_[l] > 0) recompute_mode(l);
    }
  }

  // Attribute-wise maximal category; the incumbent survives while it stays
  // among the maximal ones, otherwise the lowest maximal code wins.
  void recompute_mode(std::size_t l) {
    auto& f = freq_[l];
    auto& mode = modes_[l];
    for (std::size_t j = 0; j < m_; ++j) {
      const std::size_t base = offsets_[j];
      const std::size_t d = offsets_[j + 1] - base;
      std::int64_t best = -1;
      int at_best = 0;
      Code best_code = 0;
      for (std::size_t s = 0; s < d; ++s) {
        if (f[base + s] > best) {
          best = f[base + s];
          best_code = static_cast<Code>(s);
          at_best = 1;
        } else if (f[base + s] == best) {
          ++at_best;
        }
      }
      if (at_best > 1) ++ties_;
      if (f[base + static_cast<std::size_t>(mode[j])] < best) mode[j] = best_code;
    }
  }

  std::size_t refinement_pass() {
    std::size_t moved = 0;
    for (std::size_t i = 0; i < ds_.n_rows(); ++i) {
      const auto l = static_cast<std::size_t>(assignment_[i]);
      const std::size_t target = closest(ds_.row(i));
      if (target == l) continue;
      if (sizes_[l] == 1) continue;  // never empty a cluster mid-run
      remove(i, l);
      insert(i, target);
      ++moved;
    }
    return moved;
  }

  Cost assigned_cost() const {
    Cost total = 0;
    for (std::size_t i = 0; i < ds_.n_rows(); ++i) {
      total += dissimilarity(ds_.row(i), modes_[static_cast<std::size_t>(assignment_[i])]);
    }
    return total;
  }

  // Rebuilds counts from an existing assignment; modes are taken as given.
  void adopt(const Clustering& c) {
    assignment_ = c.assignment;
    for (std::size_t i = 0; i < ds_.n_rows(); ++i) {
      const auto l = static_cast<std::size_t>(assignment_[i]);
      const auto r = ds_.row(i);
      auto& f = freq_[l];
      for (std::size_t j = 0; j < m_; ++j) ++f[offsets_[j] + static_cast<std::size_t>(r[j])];
      ++sizes_[l];
    }
  }

  Clustering to_clustering() const {
    Clustering c;
    c.k = k_;
    c.assignment = assignment_;
    c.modes = modes_;
    return c;
  }

 private:
  const Dataset& ds_;
  std::size_t k_;
  std::size_t m_;
  std::vector<Point> modes_;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<std::int64_t>> freq_;
  std::vector<std::size_t> sizes_;
  std::vector<std::int32_t> assignment_;
  std::int64_t ties_ = 0;
};

struct PointHash {
  std::size_t operator()(const Point& p) const {
    std::size_t h = 14695981039346656037ull;
    for (Code c : p) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(c));
      h *= 1099511628211ull;
    }
    return h;
  }
};

void validate_initial_modes(const Dataset& ds, std::span<const Point> modes) {
  if (modes.empty()) throw std::invalid_argument("k must be at least 1");
  if (modes.size() > ds.n_rows()) {
    throw std::invalid_argument("k exceeds the number of rows");
  }
  std::unordered_set<Point, PointHash> seen;
  for (const Point& z : modes) {
    if (ds.find_row(z) == Dataset::npos) {
      throw std::invalid_argument("initial mode is not a dataset row");
    }
    if (!seen.insert(z).second) {
      throw std::invalid_argument("duplicate initial modes");
    }
  }
}

void validate_clustering(const Dataset& ds, const Clustering& c) {
  if (c.k == 0 || c.modes.size() != c.k) {
    throw std::invalid_argument("clustering with inconsistent k");
  }
  if (c.assignment.size() != ds.n_rows()) {
    throw std::invalid_argument("clustering assignment does not match dataset");
  }
  for (const Point& z : c.modes) {
    if (!ds.space().contains(z)) {
      throw std::invalid_argument("mode is not a point of the attribute space");
    }
  }
  std::vector<std::size_t> sizes(c.k, 0);
  for (std::int32_t l : c.assignment) {
    if (l < 0 || static_cast<std::size_t>(l) >= c.k) {
      throw std::invalid_argument("row assigned outside [0, k)");
    }
    ++sizes[static_cast<std::size_t>(l)];
  }
  for (std::size_t l = 0; l < c.k; ++l) {
    if (sizes[l] == 0) throw std::invalid_argument("clustering has an empty cluster");
  }
}

}  // namespace

std::size_t select_closest(std::span<const Code> x, std::span<const Point> modes) {
  if (modes.empty()) throw std::invalid_argument("select_closest: no modes");
  std::size_t best = 0;
  int best_d = dissimilarity(x, modes[0]);
  for (std::size_t l = 1; l < modes.size(); ++l) {
    const int d = dissimilarity(x, modes[l]);
    if (d < best_d) {
      best_d = d;
      best = l;
    }
  }
  return best;
}

Clustering initial_assignment(const Dataset& ds, std::span<const Point> initial_modes) {
  validate_initial_modes(ds, initial_modes);
  EngineState state(ds, {initial_modes.begin(), initial_modes.end()});
  state.assign_all();
  for (std::size_t l = 0; l < state.k(); ++l) {
    if (state.sizes()[l] == 0) {
      throw DegenerateInitialisation(
          l, "initial assignment left cluster " + std::to_string(l) + " empty");
    }
  }
  return state.to_clustering();
}

std::size_t iterate(const Dataset& ds, Clustering& clustering) {
  validate_clustering(ds, clustering);
  EngineState state(ds, clustering.modes);
  state.adopt(clustering);
  const std::size_t moved = state.refinement_pass();
  clustering = state.to_clustering();
  return moved;
}

FitResult fit(const Dataset& ds, std::span<const Point> initial_modes,
              const FitOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (options.max_iterations < 1) {
    throw std::invalid_argument("max_iterations must be positive");
  }
  validate_initial_modes(ds, initial_modes);

  EngineState state(ds, {initial_modes.begin(), initial_modes.end()});
  state.assign_all();
  for (std::size_t l = 0; l < state.k(); ++l) {
    if (state.sizes()[l] == 0) {
      throw DegenerateInitialisation(
          l, "initial assignment left cluster " + std::to_string(l) + " empty");
    }
  }

  FitResult result;
  result.initial_cost = state.assigned_cost();

  std::size_t moved = 0;
  do {
    moved = state.refinement_pass();
    ++result.n_iterations;
  } while (moved > 0 && result.n_iterations < options.max_iterations);
  result.reached_max_iterations = moved > 0;

  result.final_cost = state.assigned_cost();
  result.tie_events = state.tie_events();
  result.clustering = state.to_clustering();
  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<std::vector<std::size_t>> Clustering::members() const {
  std::vector<std::vector<std::size_t>> out(k);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    out[static_cast<std::size_t>(assignment[i])].push_back(i);
  }
  return out;
}

std::vector<std::size_t> Clustering::cluster_sizes() const {
  std::vector<std::size_t> sizes(k, 0);
  for (std::int32_t l : assignment) ++sizes[static_cast<std::size_t>(l)];
  return sizes;
}

}  // namespace kmodes
