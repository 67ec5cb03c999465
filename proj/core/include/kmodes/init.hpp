#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kmodes/dataset.hpp"

namespace kmodes {

enum class InitKind { random, huang, cao, matching };

const char* to_label(InitKind kind);
std::optional<InitKind> init_kind_from_label(const std::string& label);

/// An initialisation choice. cao ignores the seed (it is deterministic);
/// the other three are fully determined by (dataset, k, seed).
struct InitMethod {
  InitKind kind = InitKind::cao;
  std::optional<std::uint64_t> seed;

  std::string label() const { return to_label(kind); }
  bool deterministic() const { return kind == InitKind::cao; }
};

/// k value-distinct dataset rows sampled uniformly without replacement.
std::vector<Point> random_init(const Dataset& ds, std::size_t k, std::uint64_t seed);

/// k points of the attribute space with each coordinate drawn independently
/// by relative category frequency.
std::vector<Point> sample_potential_modes(const Dataset& ds, std::size_t k,
                                          std::uint64_t seed);

/// Frequency-based seeding: sample k potential modes, then greedily replace
/// each, in sampled order, with the nearest not-yet-chosen dataset row.
/// The result depends on that iteration order.
std::vector<Point> huang_init(const Dataset& ds, std::size_t k, std::uint64_t seed);

/// The replacement stage alone, for an explicit potential-mode set.
std::vector<Point> huang_init(const Dataset& ds, std::span<const Point> potential_modes);

/// Density-based deterministic seeding: the densest row first, then rows
/// maximising min over chosen modes of density(row) * d(row, mode).
std::vector<Point> cao_init(const Dataset& ds, std::size_t k);

/// Matching-based seeding: potential modes become residents of a
/// hospital-resident game whose hospitals are their k nearest dataset rows
/// (capacity one), solved resident-optimally. Each resident's matched row
/// becomes an initial mode, which makes the replacement step invariant to
/// the order residents are processed in.
std::vector<Point> matching_init(const Dataset& ds, std::size_t k, std::uint64_t seed);

/// The game stage alone, for an explicit potential-mode set. The returned
/// mode set is invariant under permutation of the potential modes.
std::vector<Point> matching_init(const Dataset& ds, std::span<const Point> potential_modes);

/// Dispatch on method.kind. Stochastic methods require method.seed.
std::vector<Point> initial_modes(const Dataset& ds, std::size_t k,
                                 const InitMethod& method);

}  // namespace kmodes
