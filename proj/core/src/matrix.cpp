#include "kpdkit/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kpdkit/errors.hpp"

namespace kpdkit {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) {
    throw DomainError("matrix " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                      " needs " + std::to_string(rows_ * cols_) + " values, got " +
                      std::to_string(values_.size()));
  }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  values_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DomainError("ragged matrix initializer");
    values_.insert(values_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::column(std::span<const double> v) {
  return Matrix(v.size(), 1, std::vector<double>(v.begin(), v.end()));
}

Matrix Matrix::row(std::span<const double> v) {
  return Matrix(1, v.size(), std::vector<double>(v.begin(), v.end()));
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::frobenius_norm() const { return kpdkit::frobenius_norm(values_); }

namespace {
void require_same_dims(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DomainError(std::string("dimension mismatch in matrix ") + op);
}
}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_dims(a, b, "sum");
  Matrix c = a;
  for (std::size_t k = 0; k < c.size(); ++k) c.values()[k] += b.values()[k];
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_dims(a, b, "difference");
  Matrix c = a;
  for (std::size_t k = 0; k < c.size(); ++k) c.values()[k] -= b.values()[k];
  return c;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix c = a;
  for (double& x : c.values()) x *= s;
  return c;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DomainError("matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                      std::to_string(b.rows()) + " differ");
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

double frobenius_norm(std::span<const double> v) {
  // Summing squares in ascending magnitude makes the result independent of
  // entry order, so any permutation of v has a bit-identical norm.
  std::vector<double> sq(v.size());
  std::transform(v.begin(), v.end(), sq.begin(), [](double x) { return x * x; });
  std::sort(sq.begin(), sq.end());
  double sum = 0.0;
  for (double x : sq) sum += x;
  return std::sqrt(sum);
}

}  // namespace kpdkit
