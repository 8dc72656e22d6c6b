#pragma once

// Matrix-form KPD, A ≈ Σ_k A^k_1 ⊗ ... ⊗ A^k_r with A^k_s of size m_s x n_s.
//
// The row-stacked V_r(A) is indexed by (j_1..j_r, k_1..k_r) while
// ⊗_s V_r(A_s) is indexed by (j_1, k_1, ..., j_r, k_r). Interleaving the
// axes with a permutation map turns the matrix problem into a vector-form
// problem over the merged shape (m_1 n_1, ..., m_r n_r).

#include <cstddef>
#include <span>
#include <vector>

#include "kpdkit/factor_term.hpp"
#include "kpdkit/matrix.hpp"
#include "kpdkit/stp.hpp"
#include "kpdkit/sumkpd.hpp"
#include "kpdkit/tensor_core.hpp"

namespace kpdkit {

struct MatKpdProblem {
  Matrix a;
  std::vector<std::size_t> row_dims;  // m_1..m_r, product rows(a)
  std::vector<std::size_t> col_dims;  // n_1..n_r, product cols(a)

  /// Throws DomainError on mismatched lengths, zero dims or wrong products.
  void validate() const;
};

struct MatFactorTerm {
  std::vector<Matrix> matrices;
  double coefficient = 1.0;

  /// coefficient * matrices[0] ⊗ matrices[1] ⊗ ...
  Matrix reconstruct() const;
};

/// σ = (1, r+1, 2, r+2, ..., r, 2r): row axis s followed by column axis s.
Permutation pairing_permutation(std::span<const std::size_t> row_dims,
                                std::span<const std::size_t> col_dims);

struct VectorForm {
  std::vector<double> v;  // W^σ V_r(A)
  Shape shape;            // (m_1 n_1, ..., m_r n_r)
  PermutationMap map;     // W^σ
};

VectorForm mat_to_vec(const MatKpdProblem& problem);

/// Inverse of mat_to_vec on a full-length vector: returns the m x n matrix.
Matrix vec_to_mat(std::span<const double> v, std::span<const std::size_t> row_dims,
                  std::span<const std::size_t> col_dims);

/// Reshapes factor s (row-major) into an m_s x n_s matrix.
MatFactorTerm vec_factors_to_matrices(const FactorTerm& term,
                                      std::span<const std::size_t> row_dims,
                                      std::span<const std::size_t> col_dims);

struct MatKpdResult {
  std::vector<MatFactorTerm> terms;
  std::vector<double> residual_norms;     // ‖A_k‖_F after term k
  std::vector<double> squared_residuals;  // ‖A_k‖²_F after term k
  Matrix final_residual;
  VectorForm vector_form;
  SumStatus status = SumStatus::converged;
};

MatKpdResult mat_sum_kpd(const MatKpdProblem& problem, const SumConfig& cfg);

/// One rank-one piece u vᵀ of a 2x2 matrix (u a column, v a row).
struct RankSplit {
  Matrix u;  // 2 x 1
  Matrix v;  // 1 x 2
};

/// Writes M = [[a, b], [c, d]] as one or two pieces u vᵀ:
///   a != 0:         (1, c/a)ᵀ (a, b) + (0, 1)ᵀ (0, d - cb/a)
///   a == 0, b != 0: (1, d/b)ᵀ (0, b) + (0, 1)ᵀ (c, 0)
///   a == b == 0:    (0, 1)ᵀ (c, d)
/// |a| or |b| at most 1e-12 ‖M‖_F counts as zero. The second piece is dropped
/// when its nonzero entry is at most drop_tol * ‖M‖_F (exactly zero by default).
std::vector<RankSplit> split_2x2(const Matrix& m, double drop_tol = 0.0);

/// Replaces every 2x2 factor by its split and distributes the Kronecker
/// product, giving terms whose factors alternate 2x1 and 1x2.
std::vector<MatFactorTerm> expand_by_splits(std::span<const MatFactorTerm> terms,
                                            double drop_tol = 1e-10);

}  // namespace kpdkit
