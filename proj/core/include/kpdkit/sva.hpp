#pragma once

// Nearest Kronecker product by cyclic alternating least squares.
//
// Each sweep updates x_1, ..., x_d in turn, every update being the exact
// least-squares minimiser in x_s with the other factors held fixed:
//
//   x_s = [(⊗_{i<s} x_i)ᵀ ⊗ I_{n_s} ⊗ (⊗_{i>s} x_i)ᵀ] V / ∏_{i≠s} ‖x_i‖²
//
// so the residual never increases. Fixed points of the sweep are exactly the
// stationary points of ‖V - ⊗x_s‖²; different random starts may land on
// different stationary values, hence the multistart driver and histogram.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "kpdkit/factor_term.hpp"
#include "kpdkit/matrix.hpp"
#include "kpdkit/rng.hpp"
#include "kpdkit/tensor_core.hpp"

namespace kpdkit {

enum class InitMode {
  unit_interval,  // entries ~ U[0, 1)
  centered,       // entries ~ U[-0.5, 0.5)
};

struct SvaConfig {
  double eps = 1e-8;             // stop when ‖⊗x^k - ⊗x^{k-1}‖_F < eps
  std::size_t max_sweeps = 10000;
  std::size_t restarts = 64;
  std::uint64_t seed = 1;
  InitMode init = InitMode::unit_interval;
  double cluster_tol = 1e-2;     // stationary errors this close share a cluster
  std::size_t threads = 1;       // restarts run in parallel; results do not change
  bool record_history = false;   // keep the per-sweep residual in NkpSolution

  /// Throws DomainError on eps <= 0, restarts == 0, max_sweeps == 0.
  void validate() const;
};

struct NkpSolution {
  FactorTerm factors;
  double error = 0.0;  // ‖V - ⊗x_s‖_F
  std::size_t sweeps = 0;
  bool converged = false;
  /// Residual of the starting point, then after every sweep (if recorded).
  std::vector<double> history;
};

struct StationaryCluster {
  double error = 0.0;  // smallest error in the cluster
  std::size_t hits = 0;
  FactorTerm representative;
};

/// Clusters sorted ascending by error; hits sum to the restart count.
struct StationaryHistogram {
  std::vector<StationaryCluster> clusters;
  std::size_t total_hits() const;
};

struct MultistartResult {
  NkpSolution best;
  std::size_t best_restart = 0;
  StationaryHistogram histogram;
  /// Restarts that ended at the zero stationary point. They appear in the
  /// histogram with error ‖V‖_F and zero factors.
  std::size_t failed_restarts = 0;
};

/// One least-squares update of factor `axis` (1-based); the entry of
/// `factors` at that axis is ignored. Throws DegenerateFactor if another
/// factor is zero.
std::vector<double> als_update(std::span<const double> v, const Shape& shape,
                               std::span<const std::vector<double>> factors, std::size_t axis);

/// Scales x_1..x_{d-1} to unit norm with a positive first nonzero entry and
/// moves the scale into x_d. The Kronecker product is unchanged.
void gauge_normalize(std::vector<std::vector<double>>& factors);

/// Sweeps from the given starting factors. Throws DegenerateFactor.
NkpSolution nkp_from(std::span<const double> v, const Shape& shape, const SvaConfig& cfg,
                     std::vector<std::vector<double>> start);

/// One random start drawn from `rng`; a degenerate run is resampled up to
/// ten times before ZeroStationaryPoint is thrown.
NkpSolution nkp(std::span<const double> v, const Shape& shape, const SvaConfig& cfg,
                RngStream& rng);

/// cfg.restarts independent nkp runs, restart i seeded by
/// RngStream::for_restart(cfg.seed, i). The best solution is the smallest
/// error, ties going to the lower restart index. Throws ZeroStationaryPoint
/// if every restart fails.
MultistartResult nkp_multistart(std::span<const double> v, const Shape& shape,
                                const SvaConfig& cfg);

/// Groups errors (with their factors) into clusters of width cluster_tol.
StationaryHistogram cluster_stationary_values(std::span<const double> errors,
                                              std::span<const FactorTerm> factors,
                                              double cluster_tol);

struct RankOneApprox {
  std::vector<double> u;  // carries the singular value
  std::vector<double> v;  // unit norm
  double residual = 0.0;  // ‖M - u vᵀ‖_F
  std::size_t iterations = 0;
  bool converged = false;
};

/// Best rank-one approximation by power iteration on MᵀM. A start vector
/// that maps to zero is replaced by the next coordinate vector. On
/// non-convergence the last iterate is returned with converged = false.
RankOneApprox rank_one_oracle(const Matrix& m, std::size_t iters = 100000, double tol = 1e-14);

}  // namespace kpdkit
