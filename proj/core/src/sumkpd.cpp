#include "kpdkit/sumkpd.hpp"

#include <string>

#include "kpdkit/errors.hpp"

namespace kpdkit {

void SumConfig::validate() const {
  if (max_terms == 0) throw DomainError("max_terms must be at least 1");
  if (eps_sum < 0.0) throw DomainError("eps_sum must be non-negative");
  inner.validate();
}

std::string_view to_string(SumStatus s) {
  switch (s) {
    case SumStatus::converged: return "converged";
    case SumStatus::max_terms: return "max_terms";
    case SumStatus::stalled: return "stalled";
  }
  return "unknown";
}

KpdSum greedy_sum(std::span<const double> v, const Shape& shape, const SumConfig& cfg) {
  cfg.validate();
  if (v.size() != shape.total())
    throw DomainError("vector of length " + std::to_string(v.size()) +
                      " does not match shape total " + std::to_string(shape.total()));

  KpdSum out;
  out.shape = shape;
  out.final_residual.assign(v.begin(), v.end());
  double norm = frobenius_norm(out.final_residual);
  if (norm < cfg.eps_sum) return out;

  out.status = SumStatus::max_terms;
  while (out.terms.size() < cfg.max_terms) {
    MultistartResult step;
    try {
      step = nkp_multistart(out.final_residual, shape, cfg.inner);
    } catch (const ZeroStationaryPoint&) {
      out.status = SumStatus::stalled;
      break;
    }

    const auto approx = step.best.factors.reconstruct();
    std::vector<double> next(out.final_residual);
    for (std::size_t k = 0; k < next.size(); ++k) next[k] -= approx[k];
    const double next_norm = frobenius_norm(next);
    if (!(next_norm < norm)) {
      out.status = SumStatus::stalled;
      break;
    }

    out.terms.push_back(std::move(step.best.factors));
    out.residual_norms.push_back(next_norm);
    out.final_residual = std::move(next);
    norm = next_norm;
    if (norm < cfg.eps_sum) {
      out.status = SumStatus::converged;
      break;
    }
  }
  return out;
}

}  // namespace kpdkit
