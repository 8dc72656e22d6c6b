#include "kpdkit/sva.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <thread>

#include "kpdkit/errors.hpp"
#include "kpdkit/stp.hpp"

namespace kpdkit {

void SvaConfig::validate() const {
  if (!(eps > 0.0)) throw DomainError("eps must be positive");
  if (restarts == 0) throw DomainError("restarts must be at least 1");
  if (max_sweeps == 0) throw DomainError("max_sweeps must be at least 1");
  if (cluster_tol < 0.0) throw DomainError("cluster_tol must be non-negative");
}

std::size_t StationaryHistogram::total_hits() const {
  std::size_t n = 0;
  for (const auto& c : clusters) n += c.hits;
  return n;
}

namespace {

double sum_squares(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

void require_length(std::span<const double> v, const Shape& shape) {
  if (v.size() != shape.total())
    throw DomainError("vector of length " + std::to_string(v.size()) +
                      " does not match shape total " + std::to_string(shape.total()));
}

double residual_norm(std::span<const double> v, std::span<const double> approx) {
  std::vector<double> diff(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) diff[k] = v[k] - approx[k];
  return frobenius_norm(diff);
}

}  // namespace

std::vector<double> als_update(std::span<const double> v, const Shape& shape,
                               std::span<const std::vector<double>> factors, std::size_t axis) {
  require_length(v, shape);
  const std::size_t d = shape.order();
  if (factors.size() != d)
    throw DomainError("expected " + std::to_string(d) + " factors, got " +
                      std::to_string(factors.size()));
  const std::size_t n_s = shape.dim(axis);
  const std::size_t s = axis - 1;

  double denom = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    if (i == s) continue;
    if (factors[i].size() != shape.dims()[i])
      throw DomainError("factor " + std::to_string(i + 1) + " has length " +
                        std::to_string(factors[i].size()) + ", expected " +
                        std::to_string(shape.dims()[i]));
    const double nn = sum_squares(factors[i]);
    if (nn == 0.0) throw DegenerateFactor(i + 1);
    denom *= nn;
  }

  // V viewed as (left, n_s, right); contract left with ⊗_{i<s} x_i and right
  // with ⊗_{i>s} x_i.
  const auto left = kron(factors.subspan(0, s));
  const auto right = kron(factors.subspan(s + 1));
  const std::size_t nr = right.size();

  std::vector<double> x(n_s, 0.0);
  for (std::size_t a = 0; a < left.size(); ++a) {
    if (left[a] == 0.0) continue;
    for (std::size_t j = 0; j < n_s; ++j) {
      const double* row = v.data() + (a * n_s + j) * nr;
      double acc = 0.0;
      for (std::size_t b = 0; b < nr; ++b) acc += row[b] * right[b];
      x[j] += left[a] * acc;
    }
  }
  for (double& xj : x) xj /= denom;
  return x;
}

void gauge_normalize(std::vector<std::vector<double>>& factors) {
  if (factors.empty()) return;
  auto& last = factors.back();
  for (std::size_t s = 0; s + 1 < factors.size(); ++s) {
    auto& x = factors[s];
    const double nrm = std::sqrt(sum_squares(x));
    if (nrm == 0.0) throw DegenerateFactor(s + 1);
    const auto first = std::find_if(x.begin(), x.end(), [](double e) { return e != 0.0; });
    const double scale = *first < 0.0 ? -nrm : nrm;
    for (double& e : x) e /= scale;
    for (double& e : last) e *= scale;
  }
}

NkpSolution nkp_from(std::span<const double> v, const Shape& shape, const SvaConfig& cfg,
                     std::vector<std::vector<double>> start) {
  cfg.validate();
  require_length(v, shape);
  const std::size_t d = shape.order();
  if (start.size() != d) throw DomainError("starting point has the wrong number of factors");

  NkpSolution sol;
  auto& x = sol.factors.factors;
  x = std::move(start);
  std::vector<double> prev = kron(std::span<const std::vector<double>>(x));
  if (cfg.record_history) sol.history.push_back(residual_norm(v, prev));

  std::vector<double> cur;
  for (std::size_t sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
    for (std::size_t s = 1; s <= d; ++s) x[s - 1] = als_update(v, shape, x, s);
    gauge_normalize(x);
    if (sum_squares(x.back()) == 0.0) throw DegenerateFactor(d);

    cur = kron(std::span<const std::vector<double>>(x));
    sol.sweeps = sweep;
    if (cfg.record_history) sol.history.push_back(residual_norm(v, cur));
    if (residual_norm(cur, prev) < cfg.eps) {
      sol.converged = true;
      break;
    }
    prev.swap(cur);
  }
  if (!sol.converged) cur = kron(std::span<const std::vector<double>>(x));
  sol.error = residual_norm(v, cur);
  return sol;
}

NkpSolution nkp(std::span<const double> v, const Shape& shape, const SvaConfig& cfg,
                RngStream& rng) {
  constexpr int kResamples = 10;
  const double shift = cfg.init == InitMode::centered ? 0.5 : 0.0;
  for (int attempt = 0; attempt <= kResamples; ++attempt) {
    std::vector<std::vector<double>> start;
    for (std::size_t n : shape.dims()) {
      std::vector<double> x(n);
      for (double& e : x) e = rng.uniform() - shift;
      start.push_back(std::move(x));
    }
    try {
      return nkp_from(v, shape, cfg, std::move(start));
    } catch (const DegenerateFactor&) {
    }
  }
  throw ZeroStationaryPoint("every start collapsed to the zero product after " +
                            std::to_string(kResamples) + " resamples");
}

StationaryHistogram cluster_stationary_values(std::span<const double> errors,
                                              std::span<const FactorTerm> factors,
                                              double cluster_tol) {
  if (errors.size() != factors.size()) throw DomainError("errors and factors differ in length");
  std::vector<std::size_t> order(errors.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return errors[a] < errors[b]; });

  StationaryHistogram hist;
  for (std::size_t idx : order) {
    if (hist.clusters.empty() || errors[idx] - hist.clusters.back().error > cluster_tol) {
      hist.clusters.push_back({errors[idx], 0, factors[idx]});
    }
    ++hist.clusters.back().hits;
  }
  return hist;
}

MultistartResult nkp_multistart(std::span<const double> v, const Shape& shape,
                                const SvaConfig& cfg) {
  cfg.validate();
  require_length(v, shape);

  std::vector<std::optional<NkpSolution>> runs(cfg.restarts);
  auto run_one = [&](std::size_t i) {
    RngStream rng = RngStream::for_restart(cfg.seed, i);
    try {
      runs[i] = nkp(v, shape, cfg, rng);
    } catch (const ZeroStationaryPoint&) {
    }
  };

  const std::size_t nthreads = std::min(std::max<std::size_t>(cfg.threads, 1), cfg.restarts);
  if (nthreads == 1) {
    for (std::size_t i = 0; i < cfg.restarts; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < nthreads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cfg.restarts;) run_one(i);
      });
  }

  MultistartResult result;
  std::optional<std::size_t> best;
  const double zero_point_error = frobenius_norm(v);
  std::vector<double> errors(cfg.restarts);
  std::vector<FactorTerm> factors(cfg.restarts);
  for (std::size_t i = 0; i < cfg.restarts; ++i) {
    if (!runs[i]) {
      ++result.failed_restarts;
      errors[i] = zero_point_error;
      for (std::size_t n : shape.dims()) factors[i].factors.emplace_back(n, 0.0);
      continue;
    }
    errors[i] = runs[i]->error;
    factors[i] = runs[i]->factors;
    if (!best || runs[i]->error < runs[*best]->error) best = i;
  }
  if (!best)
    throw ZeroStationaryPoint("all " + std::to_string(cfg.restarts) +
                              " restarts ended at the zero stationary point");

  result.best = std::move(*runs[*best]);
  result.best_restart = *best;
  result.histogram = cluster_stationary_values(errors, factors, cfg.cluster_tol);
  return result;
}

RankOneApprox rank_one_oracle(const Matrix& m, std::size_t iters, double tol) {
  const std::size_t rows = m.rows(), cols = m.cols();
  if (m.frobenius_norm() == 0.0) throw DomainError("rank-one oracle needs a nonzero matrix");

  auto apply = [&](const std::vector<double>& v) {  // Mᵀ M v
    std::vector<double> mv(rows, 0.0), out(cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) mv[i] += m(i, j) * v[j];
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) out[j] += m(i, j) * mv[i];
    return out;
  };
  auto normalize = [](std::vector<double>& v) {
    const double n = std::sqrt(sum_squares(v));
    if (n == 0.0) return false;
    for (double& e : v) e /= n;
    return true;
  };

  RankOneApprox r;
  // Start from a dense non-symmetric vector; coordinate vectors are the
  // fallbacks when a start lies in the null space of M.
  std::vector<double> v(cols);
  for (std::size_t j = 0; j < cols; ++j) v[j] = 1.0 + 0.1 * static_cast<double>(j);
  normalize(v);
  std::size_t fallback = 0;

  for (r.iterations = 1; r.iterations <= iters; ++r.iterations) {
    auto w = apply(v);
    if (!normalize(w)) {
      if (fallback == cols) break;
      v.assign(cols, 0.0);
      v[fallback++] = 1.0;
      continue;
    }
    double delta = 0.0;
    for (std::size_t j = 0; j < cols; ++j) delta += (w[j] - v[j]) * (w[j] - v[j]);
    v = std::move(w);
    if (std::sqrt(delta) <= tol) {
      r.converged = true;
      break;
    }
  }
  r.iterations = std::min(r.iterations, iters);

  r.u.assign(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) r.u[i] += m(i, j) * v[j];
  r.v = v;
  std::vector<double> diff(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) diff[i * cols + j] = m(i, j) - r.u[i] * v[j];
  r.residual = frobenius_norm(diff);
  return r;
}

}  // namespace kpdkit
