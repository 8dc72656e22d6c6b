#pragma once

// Hypermatrix storage and index algebra.
//
// Values are stored in lexicographic multi-index order with the last axis
// varying fastest. Every index that crosses this API (multi-index entries,
// linear positions, axis ids) is 1-based; the 0-based offsets used in the
// storage are computed here and nowhere else.

#include <cstddef>
#include <span>
#include <vector>

#include "kpdkit/matrix.hpp"

namespace kpdkit {

class Shape {
 public:
  Shape() = default;
  /// Throws DomainError for an empty dims list or a zero dimension.
  explicit Shape(std::vector<std::size_t> dims);
  Shape(std::initializer_list<std::size_t> dims)
      : Shape(std::vector<std::size_t>(dims)) {}

  std::size_t order() const noexcept { return dims_.size(); }
  std::size_t total() const noexcept { return total_; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  /// Dimension of the 1-based `axis`.
  std::size_t dim(std::size_t axis) const;

  /// Row-major strides, 0-based by axis: stride[d-1] == 1.
  std::vector<std::size_t> strides() const;

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 0;
};

/// 1-based multi-index (i_1, ..., i_d).
struct MultiIndex {
  std::vector<std::size_t> entries;

  std::size_t size() const noexcept { return entries.size(); }
  std::size_t operator[](std::size_t s) const { return entries[s]; }
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

class Hypermatrix {
 public:
  Hypermatrix() = default;
  /// Throws DomainError unless values.size() == shape.total().
  Hypermatrix(Shape shape, std::vector<double> values);
  static Hypermatrix zeros(Shape shape);

  const Shape& shape() const noexcept { return shape_; }
  std::span<const double> values() const noexcept { return values_; }

  double at(const MultiIndex& mi) const;
  void set(const MultiIndex& mi, double value);

 private:
  Shape shape_;
  std::vector<double> values_;
};

struct HeadInfo {
  std::size_t position = 0;  // 1-based
  double value = 0.0;
};

/// k = (i_1-1) n_2...n_d + ... + (i_{d-1}-1) n_d + i_d.
std::size_t linear_index(const Shape& shape, const MultiIndex& mi);

/// Inverse of linear_index, by repeated division from the last axis.
MultiIndex multi_index(const Shape& shape, std::size_t k);

std::vector<double> vectorize(const Hypermatrix& h);

/// Rows are indexed lexicographically by `row_axes`, columns by `col_axes`
/// (1-based axis ids). The concatenation must be a permutation of [1, d].
Matrix matricize(const Hypermatrix& h, std::span<const std::size_t> row_axes,
                 std::span<const std::size_t> col_axes);

/// V_r: rows concatenated top to bottom.
std::vector<double> row_stack(const Matrix& m);
/// V_c: columns concatenated left to right.
std::vector<double> col_stack(const Matrix& m);

/// First nonzero entry. Throws DomainError on the zero vector.
HeadInfo head(std::span<const double> v);

/// Per-axis head indices of a rank-one vector whose head is at `e`.
MultiIndex head_factors(const Shape& shape, std::size_t e);

namespace detail {
// 0-based storage offset of a 0-based multi-index; no range checks.
std::size_t offset(const std::vector<std::size_t>& strides,
                   std::span<const std::size_t> zero_based);
}  // namespace detail

}  // namespace kpdkit
