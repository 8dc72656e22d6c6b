#include "kpdkit/factor_term.hpp"

#include "kpdkit/stp.hpp"

namespace kpdkit {

std::vector<double> FactorTerm::reconstruct() const {
  std::vector<double> v = kron(std::span<const std::vector<double>>(factors));
  if (coefficient != 1.0)
    for (double& x : v) x *= coefficient;
  return v;
}

}  // namespace kpdkit
