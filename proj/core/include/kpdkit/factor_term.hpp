#pragma once

#include <cstddef>
#include <vector>

namespace kpdkit {

/// One rank-one term: coefficient * x_1 ⊗ ... ⊗ x_d.
struct FactorTerm {
  std::vector<std::vector<double>> factors;
  double coefficient = 1.0;

  std::size_t order() const noexcept { return factors.size(); }
  std::vector<double> reconstruct() const;
};

}  // namespace kpdkit
