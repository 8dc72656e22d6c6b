#include "kpdkit/matform.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "kpdkit/errors.hpp"

namespace kpdkit {

namespace {

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

// Shape (m_1..m_r, n_1..n_r) of V_r(A).
Shape stacked_shape(std::span<const std::size_t> row_dims, std::span<const std::size_t> col_dims) {
  std::vector<std::size_t> dims(row_dims.begin(), row_dims.end());
  dims.insert(dims.end(), col_dims.begin(), col_dims.end());
  return Shape(std::move(dims));
}

}  // namespace

void MatKpdProblem::validate() const {
  if (row_dims.size() != col_dims.size())
    throw DomainError("row_dims and col_dims must have the same length");
  if (row_dims.empty()) throw DomainError("at least one factor is required");
  for (std::size_t x : row_dims)
    if (x == 0) throw DomainError("zero factor dimension");
  for (std::size_t x : col_dims)
    if (x == 0) throw DomainError("zero factor dimension");
  if (product(row_dims) != a.rows())
    throw DomainError("row_dims multiply to " + std::to_string(product(row_dims)) +
                      " but the matrix has " + std::to_string(a.rows()) + " rows");
  if (product(col_dims) != a.cols())
    throw DomainError("col_dims multiply to " + std::to_string(product(col_dims)) +
                      " but the matrix has " + std::to_string(a.cols()) + " columns");
}

Matrix MatFactorTerm::reconstruct() const {
  if (matrices.empty()) throw DomainError("empty matrix factor term");
  Matrix out = matrices.front();
  for (std::size_t s = 1; s < matrices.size(); ++s) out = kron(out, matrices[s]);
  if (coefficient != 1.0) out = coefficient * out;
  return out;
}

Permutation pairing_permutation(std::span<const std::size_t> row_dims,
                                std::span<const std::size_t> col_dims) {
  if (row_dims.size() != col_dims.size())
    throw DomainError("pairing needs equally many row and column factors (pad with 1)");
  const std::size_t r = row_dims.size();
  std::vector<std::size_t> images;
  images.reserve(2 * r);
  for (std::size_t s = 1; s <= r; ++s) {
    images.push_back(s);
    images.push_back(r + s);
  }
  return Permutation(std::move(images));
}

VectorForm mat_to_vec(const MatKpdProblem& problem) {
  problem.validate();
  const Shape stacked = stacked_shape(problem.row_dims, problem.col_dims);
  VectorForm out;
  out.map = perm_map(stacked, pairing_permutation(problem.row_dims, problem.col_dims));
  out.v = apply_perm(out.map, row_stack(problem.a));
  std::vector<std::size_t> merged(problem.row_dims.size());
  for (std::size_t s = 0; s < merged.size(); ++s)
    merged[s] = problem.row_dims[s] * problem.col_dims[s];
  out.shape = Shape(std::move(merged));
  return out;
}

Matrix vec_to_mat(std::span<const double> v, std::span<const std::size_t> row_dims,
                  std::span<const std::size_t> col_dims) {
  const Shape stacked = stacked_shape(row_dims, col_dims);
  const auto map = perm_map(stacked, pairing_permutation(row_dims, col_dims));
  return Matrix(product(row_dims), product(col_dims), apply_perm(map.inverse(), v));
}

MatFactorTerm vec_factors_to_matrices(const FactorTerm& term,
                                      std::span<const std::size_t> row_dims,
                                      std::span<const std::size_t> col_dims) {
  if (row_dims.size() != col_dims.size() || term.factors.size() != row_dims.size())
    throw DomainError("factor count does not match the dims lists");
  MatFactorTerm out;
  out.coefficient = term.coefficient;
  for (std::size_t s = 0; s < row_dims.size(); ++s) {
    const auto& f = term.factors[s];
    if (f.size() != row_dims[s] * col_dims[s])
      throw DomainError("factor " + std::to_string(s + 1) + " has length " +
                        std::to_string(f.size()) + ", expected " +
                        std::to_string(row_dims[s] * col_dims[s]));
    out.matrices.emplace_back(row_dims[s], col_dims[s], f);
  }
  return out;
}

MatKpdResult mat_sum_kpd(const MatKpdProblem& problem, const SumConfig& cfg) {
  MatKpdResult out;
  out.vector_form = mat_to_vec(problem);
  const KpdSum sum = greedy_sum(out.vector_form.v, out.vector_form.shape, cfg);
  for (const auto& t : sum.terms)
    out.terms.push_back(vec_factors_to_matrices(t, problem.row_dims, problem.col_dims));
  out.residual_norms = sum.residual_norms;
  for (double r : sum.residual_norms) out.squared_residuals.push_back(r * r);
  out.final_residual = vec_to_mat(sum.final_residual, problem.row_dims, problem.col_dims);
  out.status = sum.status;
  return out;
}

std::vector<RankSplit> split_2x2(const Matrix& m, double drop_tol) {
  if (m.rows() != 2 || m.cols() != 2) throw DomainError("split_2x2 needs a 2x2 matrix");
  const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
  const double norm = m.frobenius_norm();
  const double zero_guard = 1e-12 * norm;
  const double drop = drop_tol * norm;

  std::vector<RankSplit> out;
  auto piece = [](double u0, double u1, double v0, double v1) {
    return RankSplit{Matrix(2, 1, {u0, u1}), Matrix(1, 2, {v0, v1})};
  };
  if (std::fabs(a) > zero_guard) {
    out.push_back(piece(1.0, c / a, a, b));
    const double rest = d - c * b / a;
    if (std::fabs(rest) > drop) out.push_back(piece(0.0, 1.0, 0.0, rest));
  } else if (std::fabs(b) > zero_guard) {
    out.push_back(piece(1.0, d / b, 0.0, b));
    if (std::fabs(c) > drop) out.push_back(piece(0.0, 1.0, c, 0.0));
  } else {
    out.push_back(piece(0.0, 1.0, c, d));
  }
  return out;
}

std::vector<MatFactorTerm> expand_by_splits(std::span<const MatFactorTerm> terms,
                                            double drop_tol) {
  std::vector<MatFactorTerm> out;
  for (const auto& term : terms) {
    std::vector<std::vector<RankSplit>> splits;
    for (const auto& mat : term.matrices) {
      if (mat.rows() != 2 || mat.cols() != 2)
        throw DomainError("expand_by_splits needs every factor to be 2x2");
      splits.push_back(split_2x2(mat, drop_tol));
    }
    // Odometer over one choice of piece per factor.
    std::vector<std::size_t> pick(splits.size(), 0);
    while (true) {
      MatFactorTerm t;
      t.coefficient = term.coefficient;
      for (std::size_t s = 0; s < splits.size(); ++s) {
        t.matrices.push_back(splits[s][pick[s]].u);
        t.matrices.push_back(splits[s][pick[s]].v);
      }
      out.push_back(std::move(t));
      std::size_t s = splits.size();
      while (s-- > 0) {
        if (++pick[s] < splits[s].size()) break;
        pick[s] = 0;
      }
      if (s == static_cast<std::size_t>(-1)) break;
    }
  }
  return out;
}

}  // namespace kpdkit
