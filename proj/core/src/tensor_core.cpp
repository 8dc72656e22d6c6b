#include "kpdkit/tensor_core.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "kpdkit/errors.hpp"

namespace kpdkit {

Shape::Shape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw DomainError("shape needs at least one axis");
  total_ = 1;
  for (std::size_t s = 0; s < dims_.size(); ++s) {
    if (dims_[s] == 0)
      throw DomainError("axis " + std::to_string(s + 1) + " has dimension 0");
    total_ *= dims_[s];
  }
}

std::size_t Shape::dim(std::size_t axis) const {
  if (axis < 1 || axis > dims_.size())
    throw DomainError("axis " + std::to_string(axis) + " outside [1, " +
                      std::to_string(dims_.size()) + "]");
  return dims_[axis - 1];
}

std::vector<std::size_t> Shape::strides() const {
  std::vector<std::size_t> st(dims_.size(), 1);
  for (std::size_t s = dims_.size(); s-- > 1;) st[s - 1] = st[s] * dims_[s];
  return st;
}

Hypermatrix::Hypermatrix(Shape shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  if (values_.size() != shape_.total())
    throw DomainError("hypermatrix needs " + std::to_string(shape_.total()) +
                      " values, got " + std::to_string(values_.size()));
}

Hypermatrix Hypermatrix::zeros(Shape shape) {
  const std::size_t n = shape.total();
  return Hypermatrix(std::move(shape), std::vector<double>(n, 0.0));
}

double Hypermatrix::at(const MultiIndex& mi) const {
  return values_[linear_index(shape_, mi) - 1];
}

void Hypermatrix::set(const MultiIndex& mi, double value) {
  values_[linear_index(shape_, mi) - 1] = value;
}

std::size_t linear_index(const Shape& shape, const MultiIndex& mi) {
  if (mi.size() != shape.order())
    throw DomainError("multi-index has " + std::to_string(mi.size()) + " entries, shape has " +
                      std::to_string(shape.order()) + " axes");
  std::size_t k = 0;
  for (std::size_t s = 0; s < shape.order(); ++s) {
    const std::size_t i = mi[s];
    const std::size_t n = shape.dims()[s];
    if (i < 1 || i > n)
      throw DomainError("index " + std::to_string(i) + " on axis " + std::to_string(s + 1) +
                        " outside [1, " + std::to_string(n) + "]");
    k = k * n + (i - 1);
  }
  return k + 1;
}

MultiIndex multi_index(const Shape& shape, std::size_t k) {
  if (k < 1 || k > shape.total())
    throw DomainError("linear index " + std::to_string(k) + " outside [1, " +
                      std::to_string(shape.total()) + "]");
  const auto& dims = shape.dims();
  MultiIndex mi{std::vector<std::size_t>(dims.size())};
  std::size_t rest = k - 1;
  for (std::size_t s = dims.size(); s-- > 1;) {
    mi.entries[s] = rest % dims[s] + 1;
    rest /= dims[s];
  }
  mi.entries[0] = rest + 1;
  return mi;
}

std::vector<double> vectorize(const Hypermatrix& h) {
  return {h.values().begin(), h.values().end()};
}

namespace detail {
std::size_t offset(const std::vector<std::size_t>& strides,
                   std::span<const std::size_t> zero_based) {
  std::size_t off = 0;
  for (std::size_t s = 0; s < zero_based.size(); ++s) off += zero_based[s] * strides[s];
  return off;
}
}  // namespace detail

Matrix matricize(const Hypermatrix& h, std::span<const std::size_t> row_axes,
                 std::span<const std::size_t> col_axes) {
  const Shape& shape = h.shape();
  const std::size_t d = shape.order();
  std::vector<std::size_t> axes(row_axes.begin(), row_axes.end());
  axes.insert(axes.end(), col_axes.begin(), col_axes.end());
  std::vector<bool> seen(d, false);
  if (axes.size() != d) throw DomainError("row and column axes must partition all axes");
  for (std::size_t a : axes) {
    if (a < 1 || a > d || seen[a - 1])
      throw DomainError("row and column axes must partition all axes");
    seen[a - 1] = true;
  }

  std::size_t rows = 1, cols = 1;
  for (std::size_t a : row_axes) rows *= shape.dims()[a - 1];
  for (std::size_t a : col_axes) cols *= shape.dims()[a - 1];

  // Walk the output in order while tracking the source offset through an
  // odometer over `axes`.
  const auto strides = shape.strides();
  std::vector<std::size_t> counter(d, 0);
  Matrix m(rows, cols);
  std::size_t src = 0;
  for (std::size_t out = 0; out < rows * cols; ++out) {
    m.values()[out] = h.values()[src];
    for (std::size_t p = d; p-- > 0;) {
      const std::size_t ax = axes[p] - 1;
      if (++counter[p] < shape.dims()[ax]) {
        src += strides[ax];
        break;
      }
      src -= (counter[p] - 1) * strides[ax];
      counter[p] = 0;
    }
  }
  return m;
}

std::vector<double> row_stack(const Matrix& m) {
  return {m.values().begin(), m.values().end()};
}

std::vector<double> col_stack(const Matrix& m) { return row_stack(m.transpose()); }

HeadInfo head(std::span<const double> v) {
  const auto it = std::find_if(v.begin(), v.end(), [](double x) { return x != 0.0; });
  if (it == v.end()) throw DomainError("zero vector has no head");
  return {static_cast<std::size_t>(it - v.begin()) + 1, *it};
}

MultiIndex head_factors(const Shape& shape, std::size_t e) { return multi_index(shape, e); }

}  // namespace kpdkit
