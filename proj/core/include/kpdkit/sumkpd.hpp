#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "kpdkit/factor_term.hpp"
#include "kpdkit/sva.hpp"
#include "kpdkit/tensor_core.hpp"

namespace kpdkit {

struct SumConfig {
  double eps_sum = 1e-8;  // stop once ‖V_k‖_F < eps_sum
  std::size_t max_terms = 32;
  SvaConfig inner;

  void validate() const;
};

enum class SumStatus {
  converged,  // residual fell below eps_sum
  max_terms,  // term cap reached first
  stalled,    // a step could not reduce the residual, or every restart hit zero
};

std::string_view to_string(SumStatus s);

/// V = Σ_k terms[k].reconstruct() + final_residual.
struct KpdSum {
  Shape shape;
  std::vector<FactorTerm> terms;
  std::vector<double> residual_norms;  // ‖V_k‖_F after subtracting term k
  std::vector<double> final_residual;
  SumStatus status = SumStatus::converged;
};

/// Greedy deflation: term k is the multistart NKP of V_{k-1}, and
/// V_k = V_{k-1} - term k. A term that would not strictly reduce the
/// residual is discarded and the run is marked stalled, so the recorded
/// norms are strictly decreasing.
KpdSum greedy_sum(std::span<const double> v, const Shape& shape, const SumConfig& cfg);

}  // namespace kpdkit
