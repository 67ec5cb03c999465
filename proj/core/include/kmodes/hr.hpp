#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace kmodes::hr {

/// A hospital-resident game. Residents rank a non-empty subset of the
/// hospitals; each hospital ranks exactly the residents that ranked it and
/// has a positive capacity. Hospitals ranked by nobody are removed at
/// construction. Invalid preference structure throws std::invalid_argument.
///
/// The class is generic over opaque id types (anything hashable and
/// equality-comparable); all internal work happens on dense indices.
template <typename RId, typename HId>
class Game {
 public:
  Game(std::vector<RId> residents, std::vector<HId> hospitals,
       std::vector<int> capacities,                // parallel to hospitals
       std::vector<std::vector<HId>> resident_prefs,  // f, parallel to residents
       std::vector<std::vector<RId>> hospital_prefs)  // g, parallel to hospitals
      : residents_(std::move(residents)) {
    if (hospitals.size() != capacities.size() ||
        hospitals.size() != hospital_prefs.size() ||
        residents_.size() != resident_prefs.size()) {
      throw std::invalid_argument("hr: mismatched construction arrays");
    }
    std::unordered_map<RId, int> rindex;
    for (std::size_t i = 0; i < residents_.size(); ++i) {
      if (!rindex.emplace(residents_[i], static_cast<int>(i)).second) {
        throw std::invalid_argument("hr: duplicate resident id");
      }
    }
    std::unordered_map<HId, int> hindex_all;
    for (std::size_t i = 0; i < hospitals.size(); ++i) {
      if (!hindex_all.emplace(hospitals[i], static_cast<int>(i)).second) {
        throw std::invalid_argument("hr: duplicate hospital id");
      }
    }

    // f: non-empty, duplicate-free, over known hospitals.
    f_.resize(residents_.size());
    std::vector<std::vector<int>> rankers(hospitals.size());
    for (std::size_t r = 0; r < residents_.size(); ++r) {
      if (resident_prefs[r].empty()) {
        throw std::invalid_argument("hr: empty resident preference list");
      }
      std::set<int> seen;
      for (const HId& h : resident_prefs[r]) {
        auto it = hindex_all.find(h);
        if (it == hindex_all.end()) {
          throw std::invalid_argument("hr: resident ranks unknown hospital");
        }
        if (!seen.insert(it->second).second) {
          throw std::invalid_argument("hr: duplicate hospital in preference list");
        }
        f_[r].push_back(it->second);
        rankers[it->second].push_back(static_cast<int>(r));
      }
    }

    // g: a permutation of each hospital's rankers. Unranked hospitals are
    // dropped (their g must therefore be empty).
    std::vector<int> remap(hospitals.size(), -1);
    for (std::size_t h = 0; h < hospitals.size(); ++h) {
      std::set<int> expected(rankers[h].begin(), rankers[h].end());
      std::set<int> given;
      for (const RId& r : hospital_prefs[h]) {
        auto it = rindex.find(r);
        if (it == rindex.end()) {
          throw std::invalid_argument("hr: hospital ranks unknown resident");
        }
        if (!given.insert(it->second).second) {
          throw std::invalid_argument("hr: duplicate resident in preference list");
        }
      }
      if (given != expected) {
        throw std::invalid_argument(
            "hr: hospital must rank all and only the residents that ranked it");
      }
      if (rankers[h].empty()) continue;  // removed from the game
      if (capacities[h] <= 0) {
        throw std::invalid_argument("hr: non-positive capacity");
      }
      remap[h] = static_cast<int>(hospitals_.size());
      hospitals_.push_back(hospitals[h]);
      capacity_.push_back(capacities[h]);
      g_.emplace_back();
      for (const RId& r : hospital_prefs[h]) g_.back().push_back(rindex.at(r));
    }
    for (auto& prefs : f_) {
      for (int& h : prefs) h = remap[h];  // kept hospitals only; f entries all kept
    }
  }

  std::size_t n_residents() const { return residents_.size(); }
  std::size_t n_hospitals() const { return hospitals_.size(); }
  const std::vector<RId>& residents() const { return residents_; }
  const std::vector<HId>& hospitals() const { return hospitals_; }
  int capacity(std::size_t h) const { return capacity_[h]; }
  /// f(r) / g(h) as dense indices, in preference order.
  const std::vector<int>& resident_prefs(std::size_t r) const { return f_[r]; }
  const std::vector<int>& hospital_prefs(std::size_t h) const { return g_[h]; }

 private:
  std::vector<RId> residents_;
  std::vector<HId> hospitals_;
  std::vector<int> capacity_;
  std::vector<std::vector<int>> f_;
  std::vector<std::vector<int>> g_;
};

/// A (partial) assignment of residents to hospitals.
template <typename RId, typename HId>
struct Matching {
  /// Parallel to Game::residents(); nullopt means unmatched.
  std::vector<std::optional<int>> assigned;

  std::optional<HId> hospital_of(const Game<RId, HId>& game, const RId& r) const {
    for (std::size_t i = 0; i < game.residents().size(); ++i) {
      if (game.residents()[i] == r) {
        if (!assigned[i]) return std::nullopt;
        return game.hospitals()[*assigned[i]];
      }
    }
    throw std::invalid_argument("hr: unknown resident id");
  }

  std::vector<std::pair<RId, HId>> pairs(const Game<RId, HId>& game) const {
    std::vector<std::pair<RId, HId>> out;
    for (std::size_t r = 0; r < assigned.size(); ++r) {
      if (assigned[r]) out.emplace_back(game.residents()[r], game.hospitals()[*assigned[r]]);
    }
    return out;
  }

  std::size_t n_matched() const {
    std::size_t n = 0;
    for (const auto& a : assigned) n += a.has_value();
    return n;
  }
};

namespace detail {

template <typename RId, typename HId>
std::vector<std::vector<int>> rank_of_hospital(const Game<RId, HId>& game) {
  std::vector<std::vector<int>> rank(game.n_residents(),
                                     std::vector<int>(game.n_hospitals(), -1));
  for (std::size_t r = 0; r < game.n_residents(); ++r) {
    const auto& f = game.resident_prefs(r);
    for (std::size_t pos = 0; pos < f.size(); ++pos) rank[r][f[pos]] = static_cast<int>(pos);
  }
  return rank;
}

template <typename RId, typename HId>
std::vector<std::vector<int>> rank_of_resident(const Game<RId, HId>& game) {
  std::vector<std::vector<int>> rank(game.n_hospitals(),
                                     std::vector<int>(game.n_residents(), -1));
  for (std::size_t h = 0; h < game.n_hospitals(); ++h) {
    const auto& g = game.hospital_prefs(h);
    for (std::size_t pos = 0; pos < g.size(); ++pos) rank[h][g[pos]] = static_cast<int>(pos);
  }
  return rank;
}

}  // namespace detail

/// Resident-optimal deferred acceptance with the full-hospital successor
/// deletion step. Free residents are processed lowest index first (the
/// outcome is order-independent; the fixed order keeps traces
/// reproducible). The game itself is never mutated.
template <typename RId, typename HId>
Matching<RId, HId> solve(const Game<RId, HId>& game) {
  const std::size_t R = game.n_residents();
  const auto h_rank = detail::rank_of_resident(game);  // [h][r] -> position

  // Working copies; DeletePair marks entries dead instead of erasing.
  std::vector<std::vector<int>> f(R);
  for (std::size_t r = 0; r < R; ++r) f[r] = game.resident_prefs(r);
  std::vector<std::vector<char>> dead(R);
  for (std::size_t r = 0; r < R; ++r) dead[r].assign(f[r].size(), 0);
  std::vector<std::size_t> head(R, 0);  // first live entry of f[r]

  std::vector<std::optional<int>> assigned(R);
  std::vector<std::vector<int>> holds(game.n_hospitals());  // residents, kept sorted by g-rank

  std::set<std::size_t> free;
  for (std::size_t r = 0; r < R; ++r) free.insert(r);

  auto advance = [&](std::size_t r) {
    while (head[r] < f[r].size() && dead[r][head[r]]) ++head[r];
  };
  auto delete_pair = [&](std::size_t r, int h) {
    const auto& prefs = f[r];
    for (std::size_t pos = 0; pos < prefs.size(); ++pos) {
      if (prefs[pos] == h) {
        dead[r][pos] = 1;
        break;
      }
    }
  };

  while (!free.empty()) {
    const std::size_t r = *free.begin();
    advance(r);
    if (head[r] >= f[r].size()) {
      free.erase(free.begin());  // exhausted; stays unmatched
      continue;
    }
    const int h = f[r][head[r]];
    free.erase(free.begin());

    // MatchPair
    auto& held = holds[h];
    held.insert(std::upper_bound(held.begin(), held.end(), static_cast<int>(r),
                                 [&](int a, int b) { return h_rank[h][a] < h_rank[h][b]; }),
                static_cast<int>(r));
    assigned[r] = h;

    if (static_cast<int>(held.size()) > game.capacity(h)) {
      // UnmatchPair with the worst held resident.
      const int worst = held.back();
      held.pop_back();
      assigned[worst].reset();
      delete_pair(static_cast<std::size_t>(worst), h);
      free.insert(static_cast<std::size_t>(worst));
    }
    if (static_cast<int>(held.size()) == game.capacity(h)) {
      // DeletePair for every successor of the worst held resident.
      const int worst_rank = h_rank[h][held.back()];
      const auto& g = game.hospital_prefs(h);
      for (std::size_t pos = static_cast<std::size_t>(worst_rank) + 1; pos < g.size(); ++pos) {
        delete_pair(static_cast<std::size_t>(g[pos]), h);
      }
    }
  }

  Matching<RId, HId> m;
  m.assigned = std::move(assigned);
  return m;
}

/// True when the matching satisfies the validity conditions: matched
/// residents are matched within f(r), hospitals hold only their rankers,
/// and no hospital exceeds its capacity.
template <typename RId, typename HId>
bool is_valid(const Game<RId, HId>& game, const Matching<RId, HId>& m) {
  if (m.assigned.size() != game.n_residents()) return false;
  std::vector<int> load(game.n_hospitals(), 0);
  const auto h_rank = detail::rank_of_resident(game);
  for (std::size_t r = 0; r < m.assigned.size(); ++r) {
    if (!m.assigned[r]) continue;
    const int h = *m.assigned[r];
    if (h < 0 || static_cast<std::size_t>(h) >= game.n_hospitals()) return false;
    const auto& f = game.resident_prefs(r);
    if (std::find(f.begin(), f.end(), h) == f.end()) return false;
    if (h_rank[h][r] < 0) return false;
    ++load[h];
  }
  for (std::size_t h = 0; h < game.n_hospitals(); ++h) {
    if (load[h] > game.capacity(h)) return false;
  }
  return true;
}

/// Every pair (r, h) that blocks the matching: mutual preference, r
/// unmatched or preferring h, and h under-subscribed or preferring r to one
/// of its assignees. Empty result means stable. Throws on an invalid
/// matching, since stability is only defined for valid ones.
template <typename RId, typename HId>
std::vector<std::pair<RId, HId>> blocking_pairs(const Game<RId, HId>& game,
                                                const Matching<RId, HId>& m) {
  if (!is_valid(game, m)) {
    throw std::invalid_argument("hr: stability audit on an invalid matching");
  }
  const auto r_rank = detail::rank_of_hospital(game);  // [r][h]
  const auto h_rank = detail::rank_of_resident(game);  // [h][r]

  std::vector<std::vector<int>> holds(game.n_hospitals());
  for (std::size_t r = 0; r < m.assigned.size(); ++r) {
    if (m.assigned[r]) holds[*m.assigned[r]].push_back(static_cast<int>(r));
  }

  std::vector<std::pair<RId, HId>> blocking;
  for (std::size_t r = 0; r < game.n_residents(); ++r) {
    for (int h : game.resident_prefs(r)) {
      const bool r_wants =
          !m.assigned[r] || r_rank[r][h] < r_rank[r][*m.assigned[r]];
      if (!r_wants) continue;
      bool h_wants = static_cast<int>(holds[h].size()) < game.capacity(h);
      if (!h_wants) {
        for (int other : holds[h]) {
          if (h_rank[h][static_cast<int>(r)] < h_rank[h][other]) {
            h_wants = true;
            break;
          }
        }
      }
      if (h_wants) blocking.emplace_back(game.residents()[r], game.hospitals()[h]);
    }
  }
  return blocking;
}

/// Exhaustive enumeration of all stable matchings, for use as a test
/// oracle. Guarded to tiny instances.
template <typename RId, typename HId>
std::vector<Matching<RId, HId>> enumerate_stable(const Game<RId, HId>& game) {
  if (game.n_residents() * game.n_hospitals() > 25) {
    throw std::invalid_argument("hr: enumerate_stable limited to |R|*|H| <= 25");
  }
  std::vector<Matching<RId, HId>> stable;
  Matching<RId, HId> m;
  m.assigned.assign(game.n_residents(), std::nullopt);
  std::vector<int> load(game.n_hospitals(), 0);

  auto recurse = [&](auto&& self, std::size_t r) -> void {
    if (r == game.n_residents()) {
      if (blocking_pairs(game, m).empty()) stable.push_back(m);
      return;
    }
    m.assigned[r].reset();
    self(self, r + 1);
    for (int h : game.resident_prefs(r)) {
      if (load[h] == game.capacity(h)) continue;
      ++load[h];
      m.assigned[r] = h;
      self(self, r + 1);
      m.assigned[r].reset();
      --load[h];
    }
  };
  recurse(recurse, 0);
  return stable;
}

}  // namespace kmodes::hr
