#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace kmodes {

/// Integer code of a category within its attribute (0 .. d_j - 1).
using Code = std::int32_t;

/// One categorical point: an m-tuple of attribute codes.
using Point = std::vector<Code>;

/// Dissimilarity totals and clustering costs.
using Cost = std::int64_t;

/// The product space of categorical attributes. Each attribute carries an
/// ordered list of distinct labels; a label's position in that list is its
/// integer code, so decoding then encoding is the identity.
class AttributeSpace {
 public:
  explicit AttributeSpace(std::vector<std::vector<std::string>> categories);

  std::size_t n_attributes() const { return categories_.size(); }
  std::size_t size(std::size_t j) const { return categories_[j].size(); }

  const std::vector<std::string>& categories(std::size_t j) const {
    return categories_[j];
  }
  const std::string& label(std::size_t j, Code code) const;
  Code code_of(std::size_t j, const std::string& label) const;

  /// True when `p` has one in-range code per attribute.
  bool contains(std::span<const Code> p) const;

 private:
  std::vector<std::vector<std::string>> categories_;
  std::vector<std::unordered_map<std::string, Code>> lookup_;
};

/// An immutable categorical dataset: N rows of m attribute codes, plus the
/// attribute space they live in and the source row indices they came from
/// (so rows remain traceable after missing-value filtering).
///
/// Per-attribute category counts and the distinct-row index are computed
/// once at construction; all read accessors are safe to share across
/// threads.
class Dataset {
 public:
  Dataset(AttributeSpace space, std::vector<Point> rows,
          std::vector<std::int64_t> row_ids = {});

  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_attributes() const { return m_; }
  const AttributeSpace& space() const { return space_; }

  std::span<const Code> row(std::size_t i) const {
    return {cells_.data() + i * m_, m_};
  }
  Point row_point(std::size_t i) const {
    auto r = row(i);
    return Point(r.begin(), r.end());
  }
  std::int64_t row_id(std::size_t i) const { return row_ids_[i]; }

  /// Occurrence count of every category of attribute j (sums to n_rows()).
  std::span<const std::int64_t> category_counts(std::size_t j) const;

  /// Number of value-distinct rows.
  std::size_t distinct_row_count() const { return distinct_first_.size(); }

  /// First-occurrence index of every distinct row value, ascending.
  std::span<const std::size_t> distinct_row_indices() const {
    return distinct_first_;
  }

  /// Index of the first row equal to `p`, or npos if `p` is not a row.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t find_row(std::span<const Code> p) const;

 private:
  struct PointHash {
    std::size_t operator()(const Point& p) const;
  };

  AttributeSpace space_;
  std::size_t n_rows_ = 0;
  std::size_t m_ = 0;
  std::vector<Code> cells_;  // row-major
  std::vector<std::int64_t> row_ids_;
  std::vector<std::vector<std::int64_t>> counts_;
  std::unordered_map<Point, std::size_t, PointHash> first_index_;
  std::vector<std::size_t> distinct_first_;
};

/// Builds a Dataset from raw label rows, assigning integer codes in
/// first-appearance order. The attribute space is induced from the data,
/// so every category of the result occurs in at least one row.
Dataset dataset_from_labels(const std::vector<std::vector<std::string>>& rows,
                            std::vector<std::int64_t> row_ids = {});

}  // namespace kmodes
