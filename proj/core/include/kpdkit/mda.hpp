#pragma once

// Monic decomposition: decides whether V is exactly x_1 ⊗ ... ⊗ x_d by
// reading candidate factors off the slices through V's head entry.

#include <cstddef>
#include <span>
#include <vector>

#include "kpdkit/tensor_core.hpp"

namespace kpdkit {

/// scale * x_1 ⊗ ... ⊗ x_d with the head value of every x_s equal to 1.
struct MonicFactors {
  double scale = 0.0;
  std::vector<std::vector<double>> factors;
};

struct ExactnessReport {
  bool decomposable = false;
  double residual = 0.0;  // ‖V - scale * ⊗x_s‖_F
  MonicFactors factors;
};

inline constexpr double kDefaultExactTol = 1e-10;

/// The length-n_s fibre of V0 along `axis` (1-based) with every other axis r
/// frozen at head.entries[r]. Equal to the dense projector product
/// (δ_{e_1}ᵀ ⊗ ... ⊗ I_{n_s} ⊗ ... ⊗ δ_{e_d}ᵀ) V0.
std::vector<double> projector_extract(std::span<const double> v0, const Shape& shape,
                                      const MultiIndex& head, std::size_t axis);

/// Always returns the candidate factors and residual; `decomposable` is
/// residual <= tol * ‖V‖_F. Throws DomainError on a zero input.
ExactnessReport exact_decompose(std::span<const double> v, const Shape& shape,
                                double tol = kDefaultExactTol);
ExactnessReport exact_decompose(const Hypermatrix& h, double tol = kDefaultExactTol);

std::vector<double> reconstruct(const MonicFactors& f);

}  // namespace kpdkit
