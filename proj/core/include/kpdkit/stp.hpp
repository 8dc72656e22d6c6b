#pragma once

// Kronecker and semi-tensor products, plus axis permutations of factored
// vectors stored as position bijections (never as dense 0/1 matrices).

#include <cstddef>
#include <span>
#include <vector>

#include "kpdkit/matrix.hpp"
#include "kpdkit/tensor_core.hpp"

namespace kpdkit {

Matrix kron(const Matrix& a, const Matrix& b);

/// x_1 ⊗ x_2 ⊗ ... ⊗ x_d for column vectors. An empty list yields [1].
std::vector<double> kron(std::span<const std::vector<double>> factors);
std::vector<double> kron(std::span<const double> x, std::span<const double> y);

/// Semi-tensor product (A ⊗ I_{t/n})(B ⊗ I_{t/p}), t = lcm(cols(A), rows(B)).
Matrix stp(const Matrix& a, const Matrix& b);

/// A bijection σ on [1, d], stored as its images σ(1), ..., σ(d).
class Permutation {
 public:
  Permutation() = default;
  /// Throws DomainError unless `images` is a bijection on [1, d].
  explicit Permutation(std::vector<std::size_t> images);
  Permutation(std::initializer_list<std::size_t> images)
      : Permutation(std::vector<std::size_t>(images)) {}

  static Permutation identity(std::size_t d);

  std::size_t size() const noexcept { return images_.size(); }
  const std::vector<std::size_t>& images() const noexcept { return images_; }
  /// σ(k), 1-based in and out.
  std::size_t operator()(std::size_t k) const { return images_[k - 1]; }

  /// (σ ∘ τ)(k) = σ(τ(k)).
  Permutation after(const Permutation& tau) const;
  Permutation inverse() const;

  /// The shape (n_σ(1), ..., n_σ(d)).
  Shape apply(const Shape& shape) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> images_;
};

/// Position bijection on [1, n]: source position p moves to dest()[p-1].
/// This is the column list of the 0/1 matrix written δ_n[dest...].
class PermutationMap {
 public:
  PermutationMap() = default;
  /// Throws DomainError unless `dest` is a bijection on [1, n].
  explicit PermutationMap(std::vector<std::size_t> dest);

  static PermutationMap identity(std::size_t n);

  std::size_t size() const noexcept { return dest_.size(); }
  const std::vector<std::size_t>& dest() const noexcept { return dest_; }

  PermutationMap inverse() const;
  /// The map that applies `first`, then *this.
  PermutationMap after(const PermutationMap& first) const;
  /// Dense n x n 0/1 matrix; only for tests and small n.
  Matrix dense() const;

  friend bool operator==(const PermutationMap&, const PermutationMap&) = default;

 private:
  std::vector<std::size_t> dest_;
};

/// W with apply_perm(W, x_1 ⊗ ... ⊗ x_d) = x_σ(1) ⊗ ... ⊗ x_σ(d).
PermutationMap perm_map(const Shape& shape, const Permutation& sigma);

/// Swap matrix W_[m,n]: apply_perm(W, x ⊗ y) = y ⊗ x for x in R^m, y in R^n.
PermutationMap swap_map(std::size_t m, std::size_t n);

std::vector<double> apply_perm(const PermutationMap& map, std::span<const double> v);

}  // namespace kpdkit
