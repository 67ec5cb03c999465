#pragma once

#include <optional>
#include <span>

#include "kmodes/dataset.hpp"

namespace kmodes {

/// Number of attribute positions where a and b differ (simple matching
/// distance). Throws std::invalid_argument on length mismatch.
int dissimilarity(std::span<const Code> a, std::span<const Code> b);

/// D(rows, z): summed dissimilarity of the given points to z. Empty input
/// returns 0.
Cost summed_dissimilarity(std::span<const Point> rows, std::span<const Code> z);

/// D over dataset rows selected by index.
Cost summed_dissimilarity(const Dataset& ds, std::span<const std::size_t> rows,
                          std::span<const Code> z);

/// D(X, z) over the whole dataset.
Cost summed_dissimilarity(const Dataset& ds, std::span<const Code> z);

/// Occurrence count per category code of attribute j. Throws
/// std::out_of_range for an invalid attribute index.
std::span<const std::int64_t> frequencies(const Dataset& ds, std::size_t j);

/// Average density of row i: the mean relative frequency of its attribute
/// values across the dataset. Always in [0, 1].
double density(const Dataset& ds, std::size_t i);

/// Densities of all rows in one pass over the precomputed frequency tables.
std::vector<double> densities(const Dataset& ds);

/// Summed within-cluster dissimilarity of an assignment against its modes.
/// assignment[i] must be a valid index into modes for every row.
Cost clustering_cost(const Dataset& ds, std::span<const std::int32_t> assignment,
                     std::span<const Point> modes);

/// A point of the attribute space minimising D(members, ·): per attribute,
/// a category of maximal in-cluster frequency. When `current` is given and
/// its category is still among the maximal ones for an attribute it is
/// kept; otherwise the lowest maximal code is chosen. Throws on empty
/// members.
Point mode_of(const Dataset& ds, std::span<const std::size_t> members,
              const Point* current = nullptr);

/// As above for free-standing points in an explicit space.
Point mode_of(std::span<const Point> rows, const AttributeSpace& space,
              const Point* current = nullptr);

}  // namespace kmodes
