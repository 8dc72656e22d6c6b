#include "kpdkit/mda.hpp"

#include <string>

#include "kpdkit/errors.hpp"
#include "kpdkit/factor_term.hpp"
#include "kpdkit/stp.hpp"

namespace kpdkit {

std::vector<double> projector_extract(std::span<const double> v0, const Shape& shape,
                                      const MultiIndex& head, std::size_t axis) {
  if (v0.size() != shape.total())
    throw DomainError("vector of length " + std::to_string(v0.size()) +
                      " does not match shape total " + std::to_string(shape.total()));
  const std::size_t n = shape.dim(axis);
  linear_index(shape, head);  // validates the head multi-index

  const auto strides = shape.strides();
  std::size_t base = 0;
  for (std::size_t r = 0; r < shape.order(); ++r)
    if (r != axis - 1) base += (head[r] - 1) * strides[r];

  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = v0[base + j * strides[axis - 1]];
  return x;
}

ExactnessReport exact_decompose(std::span<const double> v, const Shape& shape, double tol) {
  if (v.size() != shape.total())
    throw DomainError("vector of length " + std::to_string(v.size()) +
                      " does not match shape total " + std::to_string(shape.total()));
  const HeadInfo h = head(v);  // throws on the zero hypermatrix
  const MultiIndex e = head_factors(shape, h.position);

  std::vector<double> v0(v.begin(), v.end());
  for (double& x : v0) x /= h.value;

  ExactnessReport report;
  report.factors.scale = h.value;
  for (std::size_t s = 1; s <= shape.order(); ++s) {
    auto x = projector_extract(v0, shape, e, s);
    x[e[s - 1] - 1] = 1.0;  // monic by construction; pin it against rounding
    report.factors.factors.push_back(std::move(x));
  }

  const auto rec = reconstruct(report.factors);
  std::vector<double> diff(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) diff[k] = v[k] - rec[k];
  report.residual = frobenius_norm(diff);
  report.decomposable = report.residual <= tol * frobenius_norm(v);
  return report;
}

ExactnessReport exact_decompose(const Hypermatrix& h, double tol) {
  return exact_decompose(h.values(), h.shape(), tol);
}

std::vector<double> reconstruct(const MonicFactors& f) {
  return FactorTerm{f.factors, f.scale}.reconstruct();
}

}  // namespace kpdkit
