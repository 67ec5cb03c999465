#include "kmodes/init.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "kmodes/hr.hpp"
#include "kmodes/measures.hpp"
#include "kmodes/rng.hpp"

namespace kmodes {

const char* to_label(InitKind kind) {
  switch (kind) {
    case InitKind::random: return "random";
    case InitKind::huang: return "huang";
    case InitKind::cao: return "cao";
    case InitKind::matching: return "matching";
  }
  return "?";
}

std::optional<InitKind> init_kind_from_label(const std::string& label) {
  if (label == "random") return InitKind::random;
  if (label == "huang") return InitKind::huang;
  if (label == "cao") return InitKind::cao;
  if (label == "matching") return InitKind::matching;
  return std::nullopt;
}

namespace {

void require_k_selectable(const Dataset& ds, std::size_t k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (k > ds.distinct_row_count()) {
    throw std::invalid_argument("k exceeds the number of distinct rows (" +
                                std::to_string(ds.distinct_row_count()) + ")");
  }
}

std::vector<Point> sample_potential_modes_with(const Dataset& ds, std::size_t k,
                                               Rng& rng) {
  const std::size_t m = ds.n_attributes();
  std::vector<Point> out;
  out.reserve(k);
  for (std::size_t l = 0; l < k; ++l) {
    Point z(m);
    for (std::size_t j = 0; j < m; ++j) {
      z[j] = static_cast<Code>(rng.weighted(ds.category_counts(j)));
    }
    out.push_back(std::move(z));
  }
  return out;
}

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

}  // namespace

std::vector<Point> random_init(const Dataset& ds, std::size_t k, std::uint64_t seed) {
  require_k_selectable(ds, k);
  Rng rng = Rng::stream(seed, "random");

  std::vector<std::size_t> pool(ds.n_rows());
  std::iota(pool.begin(), pool.end(), 0);
  std::unordered_set<Point, PointHash> chosen;
  std::vector<Point> modes;
  modes.reserve(k);
  // Uniform draws without replacement; rows that duplicate an already
  // chosen value are discarded so the modes are value-distinct.
  while (modes.size() < k) {
    const std::size_t pick = rng.below(pool.size());
    const std::size_t i = pool[pick];
    pool[pick] = pool.back();
    pool.pop_back();
    Point p = ds.row_point(i);
    if (chosen.insert(p).second) modes.push_back(std::move(p));
  }
  return modes;
}

std::vector<Point> sample_potential_modes(const Dataset& ds, std::size_t k,
                                          std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  Rng rng = Rng::stream(seed, "potential-modes");
  return sample_potential_modes_with(ds, k, rng);
}

std::vector<Point> huang_init(const Dataset& ds, std::size_t k, std::uint64_t seed) {
  require_k_selectable(ds, k);
  Rng rng = Rng::stream(seed, "huang");
  return huang_init(ds, sample_potential_modes_with(ds, k, rng));
}

std::vector<Point> huang_init(const Dataset& ds, std::span<const Point> potential_modes) {
  const std::size_t k = potential_modes.size();
  require_k_selectable(ds, k);

  // Candidates are the distinct row values via their first occurrence, so
  // excluding a chosen row excludes its value.
  std::vector<char> taken(ds.n_rows(), 0);
  std::vector<Point> modes;
  modes.reserve(k);
  for (const Point& z : potential_modes) {
    std::size_t best = Dataset::npos;
    int best_d = 0;
    for (std::size_t i : ds.distinct_row_indices()) {
      if (taken[i]) continue;
      const int d = dissimilarity(ds.row(i), z);
      if (best == Dataset::npos || d < best_d) {
        best = i;
        best_d = d;
      }
    }
    assert(best != Dataset::npos);  // guaranteed by require_k_selectable
    taken[best] = 1;
    modes.push_back(ds.row_point(best));
  }
  return modes;
}

std::vector<Point> cao_init(const Dataset& ds, std::size_t k) {
  require_k_selectable(ds, k);
  const std::vector<double> dens = densities(ds);
  const std::size_t n = ds.n_rows();

  std::size_t first = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (dens[i] > dens[first]) first = i;
  }
  std::vector<Point> modes;
  modes.reserve(k);
  modes.push_back(ds.row_point(first));

  // score[i] = min over chosen modes of dens[i] * d(row i, mode); a row
  // duplicating a chosen mode scores 0 and is therefore never picked while
  // a distinct candidate remains.
  std::vector<double> score(n);
  std::vector<char> taken(n, 0);
  taken[first] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    score[i] = dens[i] * dissimilarity(ds.row(i), modes[0]);
  }
  while (modes.size() < k) {
    std::size_t best = Dataset::npos;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      if (best == Dataset::npos || score[i] > score[best]) best = i;
    }
    taken[best] = 1;
    modes.push_back(ds.row_point(best));
    const Point& added = modes.back();
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      const double s = dens[i] * dissimilarity(ds.row(i), added);
      if (s < score[i]) score[i] = s;
    }
  }
  return modes;
}

std::vector<Point> matching_init(const Dataset& ds, std::size_t k, std::uint64_t seed) {
  require_k_selectable(ds, k);
  Rng rng = Rng::stream(seed, "matching");
  return matching_init(ds, sample_potential_modes_with(ds, k, rng));
}

std::vector<Point> matching_init(const Dataset& ds, std::span<const Point> potential_modes) {
  const std::size_t k = potential_modes.size();
  require_k_selectable(ds, k);
  const std::span<const Point> residents = potential_modes;

  // Candidate hospitals are the distinct row values, represented by their
  // first occurrence; duplicates of one point would otherwise compete as
  // separate hospitals.
  const auto candidates = ds.distinct_row_indices();

  // f(r): the k rows least dissimilar to the resident, ascending, ties by
  // row index.
  std::vector<std::vector<int>> prefs(k);
  std::vector<std::vector<int>> pref_dissim(k);
  std::vector<std::pair<int, std::size_t>> order(candidates.size());
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      order[c] = {dissimilarity(ds.row(candidates[c]), residents[r]), candidates[c]};
    }
    const std::size_t cut = std::min<std::size_t>(k, order.size());
    std::partial_sort(order.begin(), order.begin() + cut, order.end());
    for (std::size_t c = 0; c < cut; ++c) {
      prefs[r].push_back(static_cast<int>(order[c].second));
      pref_dissim[r].push_back(order[c].first);
    }
  }

  // Hospitals: the union of all listed rows with capacity one. g(h) ranks
  // exactly the residents that listed h by ascending dissimilarity to the
  // row. Dissimilarity ties compare the resident tuples themselves before
  // the sample position, which keeps the returned mode set invariant under
  // permutation of the potential modes.
  std::vector<int> hospital_ids;
  std::unordered_map<int, std::vector<std::pair<int, int>>> rankers;  // h -> (d, r)
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t pos = 0; pos < prefs[r].size(); ++pos) {
      const int h = prefs[r][pos];
      auto [it, inserted] = rankers.emplace(h, std::vector<std::pair<int, int>>{});
      if (inserted) hospital_ids.push_back(h);
      it->second.emplace_back(pref_dissim[r][pos], static_cast<int>(r));
    }
  }
  std::sort(hospital_ids.begin(), hospital_ids.end());

  std::vector<int> resident_ids(k);
  std::iota(resident_ids.begin(), resident_ids.end(), 0);
  std::vector<int> capacities(hospital_ids.size(), 1);
  std::vector<std::vector<int>> g;
  g.reserve(hospital_ids.size());
  for (int h : hospital_ids) {
    auto& list = rankers.at(h);
    std::sort(list.begin(), list.end(), [&](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      const Point& pa = residents[static_cast<std::size_t>(a.second)];
      const Point& pb = residents[static_cast<std::size_t>(b.second)];
      if (pa != pb) return pa < pb;
      return a.second < b.second;
    });
    std::vector<int> ranked;
    ranked.reserve(list.size());
    for (const auto& [d, r] : list) ranked.push_back(r);
    g.push_back(std::move(ranked));
  }

  const hr::Game<int, int> game(resident_ids, hospital_ids, capacities, prefs, g);
  const auto matching = hr::solve(game);
  if (!hr::blocking_pairs(game, matching).empty()) {
    throw std::logic_error("matching_init: solver produced an unstable matching");
  }

  // With k residents, unit capacities and k hospitals per list, total
  // rejection is impossible; every resident ends matched.
  std::vector<Point> modes;
  modes.reserve(k);
  for (std::size_t r = 0; r < k; ++r) {
    const auto h = matching.assigned[r];
    if (!h) throw std::logic_error("matching_init: unmatched resident");
    modes.push_back(ds.row_point(static_cast<std::size_t>(game.hospitals()[*h])));
  }
  return modes;
}

std::vector<Point> initial_modes(const Dataset& ds, std::size_t k,
                                 const InitMethod& method) {
  if (method.kind == InitKind::cao) return cao_init(ds, k);
  if (!method.seed) {
    throw std::invalid_argument(std::string(to_label(method.kind)) +
                                " initialisation requires a seed");
  }
  switch (method.kind) {
    case InitKind::random: return random_init(ds, k, *method.seed);
    case InitKind::huang: return huang_init(ds, k, *method.seed);
    case InitKind::matching: return matching_init(ds, k, *method.seed);
    case InitKind::cao: break;
  }
  throw std::logic_error("unreachable init kind");
}

}  // namespace kmodes
