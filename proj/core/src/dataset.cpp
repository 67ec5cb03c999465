#include "kmodes/dataset.hpp"

#include <set>
#include <stdexcept>

namespace kmodes {

AttributeSpace::AttributeSpace(std::vector<std::vector<std::string>> categories)
    : categories_(std::move(categories)) {
  if (categories_.empty()) {
    throw std::invalid_argument("attribute space needs at least one attribute");
  }
  lookup_.resize(categories_.size());
  for (std::size_t j = 0; j < categories_.size(); ++j) {
    if (categories_[j].empty()) {
      throw std::invalid_argument("attribute with no categories");
    }
    for (std::size_t s = 0; s < categories_[j].size(); ++s) {
      if (!lookup_[j].emplace(categories_[j][s], static_cast<Code>(s)).second) {
        throw std::invalid_argument("duplicate category label within an attribute");
      }
    }
  }
}

const std::string& AttributeSpace::label(std::size_t j, Code code) const {
  return categories_.at(j).at(static_cast<std::size_t>(code));
}

Code AttributeSpace::code_of(std::size_t j, const std::string& label) const {
  const auto& map = lookup_.at(j);
  auto it = map.find(label);
  if (it == map.end()) {
    throw std::invalid_argument("unknown category label: " + label);
  }
  return it->second;
}

bool AttributeSpace::contains(std::span<const Code> p) const {
  if (p.size() != categories_.size()) return false;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] < 0 || static_cast<std::size_t>(p[j]) >= categories_[j].size()) return false;
  }
  return true;
}

std::size_t Dataset::PointHash::operator()(const Point& p) const {
  std::size_t h = 14695981039346656037ull;
  for (Code c : p) {
    h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(c));
    h *= 1099511628211ull;
  }
  return h;
}

Dataset::Dataset(AttributeSpace space, std::vector<Point> rows,
                 std::vector<std::int64_t> row_ids)
    : space_(std::move(space)) {
  if (rows.empty()) throw std::invalid_argument("dataset needs at least one row");
  m_ = space_.n_attributes();
  n_rows_ = rows.size();
  if (row_ids.empty()) {
    row_ids_.resize(n_rows_);
    for (std::size_t i = 0; i < n_rows_; ++i) row_ids_[i] = static_cast<std::int64_t>(i);
  } else {
    if (row_ids.size() != n_rows_) {
      throw std::invalid_argument("row_ids length does not match row count");
    }
    row_ids_ = std::move(row_ids);
  }

  cells_.reserve(n_rows_ * m_);
  counts_.resize(m_);
  for (std::size_t j = 0; j < m_; ++j) counts_[j].assign(space_.size(j), 0);

  for (std::size_t i = 0; i < n_rows_; ++i) {
    const Point& r = rows[i];
    if (!space_.contains(r)) {
      throw std::invalid_argument("row " + std::to_string(i) +
                                  " is not a point of the attribute space");
    }
    for (std::size_t j = 0; j < m_; ++j) ++counts_[j][static_cast<std::size_t>(r[j])];
    cells_.insert(cells_.end(), r.begin(), r.end());
  }

  // The space is induced from observed data: a category nobody uses is a
  // construction error, not a representable state.
  for (std::size_t j = 0; j < m_; ++j) {
    for (std::size_t s = 0; s < counts_[j].size(); ++s) {
      if (counts_[j][s] == 0) {
        throw std::invalid_argument("category '" + space_.label(j, static_cast<Code>(s)) +
                                    "' of attribute " + std::to_string(j) +
                                    " occurs in no row");
      }
    }
  }

  first_index_.reserve(n_rows_);
  for (std::size_t i = 0; i < n_rows_; ++i) {
    auto [it, inserted] = first_index_.emplace(rows[i], i);
    if (inserted) distinct_first_.push_back(i);
  }
}

std::span<const std::int64_t> Dataset::category_counts(std::size_t j) const {
  if (j >= m_) throw std::out_of_range("attribute index out of range");
  return counts_[j];
}

std::size_t Dataset::find_row(std::span<const Code> p) const {
  auto it = first_index_.find(Point(p.begin(), p.end()));
  return it == first_index_.end() ? npos : it->second;
}

Dataset dataset_from_labels(const std::vector<std::vector<std::string>>& rows,
                            std::vector<std::int64_t> row_ids) {
  if (rows.empty()) throw std::invalid_argument("dataset needs at least one row");
  const std::size_t m = rows.front().size();

  std::vector<std::vector<std::string>> categories(m);
  std::vector<std::unordered_map<std::string, Code>> seen(m);
  std::vector<Point> coded;
  coded.reserve(rows.size());

  for (const auto& row : rows) {
    if (row.size() != m) {
      throw std::invalid_argument("ragged rows: expected " + std::to_string(m) +
                                  " cells");
    }
    Point p(m);
    for (std::size_t j = 0; j < m; ++j) {
      auto [it, inserted] =
          seen[j].emplace(row[j], static_cast<Code>(categories[j].size()));
      if (inserted) categories[j].push_back(row[j]);
      p[j] = it->second;
    }
    coded.push_back(std::move(p));
  }
  return Dataset(AttributeSpace(std::move(categories)), std::move(coded),
                 std::move(row_ids));
}

}  // namespace kmodes
