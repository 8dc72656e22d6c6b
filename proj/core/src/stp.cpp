#include "kpdkit/stp.hpp"

#include <numeric>
#include <string>

#include "kpdkit/errors.hpp"

namespace kpdkit {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return c;
}

std::vector<double> kron(std::span<const double> x, std::span<const double> y) {
  std::vector<double> out(x.size() * y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out[i * y.size() + j] = x[i] * y[j];
  return out;
}

std::vector<double> kron(std::span<const std::vector<double>> factors) {
  std::vector<double> out{1.0};
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

Matrix stp(const Matrix& a, const Matrix& b) {
  const std::size_t t = std::lcm(a.cols(), b.rows());
  if (t == a.cols() && t == b.rows()) return matmul(a, b);
  return matmul(kron(a, Matrix::identity(t / a.cols())), kron(b, Matrix::identity(t / b.rows())));
}

namespace {
void require_bijection(const std::vector<std::size_t>& v, const char* what) {
  std::vector<bool> seen(v.size(), false);
  for (std::size_t x : v) {
    if (x < 1 || x > v.size() || seen[x - 1])
      throw DomainError(std::string(what) + " is not a bijection on [1, " +
                        std::to_string(v.size()) + "]");
    seen[x - 1] = true;
  }
}
}  // namespace

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
  require_bijection(images_, "permutation");
}

Permutation Permutation::identity(std::size_t d) {
  std::vector<std::size_t> im(d);
  std::iota(im.begin(), im.end(), std::size_t{1});
  return Permutation(std::move(im));
}

Permutation Permutation::after(const Permutation& tau) const {
  if (tau.size() != size()) throw DomainError("composing permutations of different sizes");
  std::vector<std::size_t> im(size());
  for (std::size_t k = 0; k < size(); ++k) im[k] = images_[tau.images_[k] - 1];
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> im(size());
  for (std::size_t k = 0; k < size(); ++k) im[images_[k] - 1] = k + 1;
  return Permutation(std::move(im));
}

Shape Permutation::apply(const Shape& shape) const {
  if (shape.order() != size())
    throw DomainError("permutation of " + std::to_string(size()) + " axes applied to a shape with " +
                      std::to_string(shape.order()));
  std::vector<std::size_t> dims(size());
  for (std::size_t k = 0; k < size(); ++k) dims[k] = shape.dims()[images_[k] - 1];
  return Shape(std::move(dims));
}

PermutationMap::PermutationMap(std::vector<std::size_t> dest) : dest_(std::move(dest)) {
  require_bijection(dest_, "permutation map");
}

PermutationMap PermutationMap::identity(std::size_t n) {
  std::vector<std::size_t> d(n);
  std::iota(d.begin(), d.end(), std::size_t{1});
  return PermutationMap(std::move(d));
}

PermutationMap PermutationMap::inverse() const {
  std::vector<std::size_t> inv(size());
  for (std::size_t p = 0; p < size(); ++p) inv[dest_[p] - 1] = p + 1;
  return PermutationMap(std::move(inv));
}

PermutationMap PermutationMap::after(const PermutationMap& first) const {
  if (first.size() != size()) throw DomainError("composing permutation maps of different sizes");
  std::vector<std::size_t> d(size());
  for (std::size_t p = 0; p < size(); ++p) d[p] = dest_[first.dest_[p] - 1];
  return PermutationMap(std::move(d));
}

Matrix PermutationMap::dense() const {
  Matrix w(size(), size());
  for (std::size_t p = 0; p < size(); ++p) w(dest_[p] - 1, p) = 1.0;
  return w;
}

PermutationMap perm_map(const Shape& shape, const Permutation& sigma) {
  const Shape target = sigma.apply(shape);
  const std::size_t d = shape.order();
  // Source axis σ(k) lands at slot k of the target, so it moves with the
  // target's k-th stride.
  const auto target_strides = target.strides();
  std::vector<std::size_t> stride_of_source(d);
  for (std::size_t k = 0; k < d; ++k) stride_of_source[sigma.images()[k] - 1] = target_strides[k];

  std::vector<std::size_t> dest(shape.total());
  std::vector<std::size_t> counter(d, 0);
  std::size_t off = 0;
  for (std::size_t p = 0; p < dest.size(); ++p) {
    dest[p] = off + 1;
    for (std::size_t a = d; a-- > 0;) {
      if (++counter[a] < shape.dims()[a]) {
        off += stride_of_source[a];
        break;
      }
      off -= (counter[a] - 1) * stride_of_source[a];
      counter[a] = 0;
    }
  }
  return PermutationMap(std::move(dest));
}

PermutationMap swap_map(std::size_t m, std::size_t n) {
  return perm_map(Shape{m, n}, Permutation{2, 1});
}

std::vector<double> apply_perm(const PermutationMap& map, std::span<const double> v) {
  if (map.size() != v.size())
    throw DomainError("permutation map of size " + std::to_string(map.size()) +
                      " applied to a vector of length " + std::to_string(v.size()));
  std::vector<double> out(v.size());
  for (std::size_t p = 0; p < v.size(); ++p) out[map.dest()[p] - 1] = v[p];
  return out;
}

}  // namespace kpdkit
