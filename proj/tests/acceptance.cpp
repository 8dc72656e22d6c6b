// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "kpdkit/matform.hpp"
#include "kpdkit/mda.hpp"
#include "kpdkit/stp.hpp"
#include "kpdkit/sumkpd.hpp"
#include "kpdkit/sva.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace {

using namespace kpdkit;
using testing::max_abs_diff;
using Vec = std::vector<double>;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

std::string fmt(double x, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

Matrix sum_terms(std::span<const MatFactorTerm> terms, std::size_t rows, std::size_t cols) {
  Matrix out(rows, cols);
  for (const auto& t : terms) out = out + t.reconstruct();
  return out;
}

void mda_exactness(Outcome& o) {
  const auto r = exact_decompose(testing::exact_4x2x2x3());
  const std::vector<Vec> expected{{0, 0, 1, -1}, {1, 2}, {0, 1}, {0, 1, 0.5}};
  o.require(r.decomposable, "decomposable");
  o.require(r.residual < 1e-12, "residual < 1e-12");
  o.require(std::fabs(r.factors.scale - 4.0) <= 1e-12, "scale 4");
  double worst = 0.0;
  for (std::size_t s = 0; s < expected.size(); ++s)
    worst = std::max(worst, max_abs_diff(r.factors.factors.at(s), expected[s]));
  o.require(worst <= 1e-12, "factors to 1e-12");
  o.detail << "residual " << fmt(r.residual) << ", scale " << fmt(r.factors.scale)
           << ", max factor deviation " << fmt(worst);
}

void mda_rejection(Outcome& o) {
  const auto r = exact_decompose(testing::inexact_4x2x2x3());
  o.require(!r.decomposable, "non-decomposable");
  o.require(std::fabs(r.residual - 6.7802) <= 1e-3, "residual 6.7802 +- 1e-3");
  o.detail << "residual " << fmt(r.residual);
}

void nkp_value(Outcome& o) {
  const auto h = testing::inexact_4x2x2x3();
  SvaConfig cfg;
  cfg.restarts = 16;
  const auto r = nkp_multistart(vectorize(h), h.shape(), cfg);
  o.require(std::fabs(r.best.error - 4.3218) <= 1e-3, "error 4.3218 +- 1e-3");
  o.detail << "best of 16 restarts " << fmt(r.best.error);
}

void stationary_landscape(Outcome& o) {
  const auto h = testing::multimodal_4x2x2x3();
  SvaConfig cfg;
  cfg.restarts = 1000;
  cfg.init = InitMode::centered;
  cfg.cluster_tol = 5e-3;
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = nkp_multistart(vectorize(h), h.shape(), cfg);
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  const auto& clusters = r.histogram.clusters;
  const bool second = std::any_of(clusters.begin(), clusters.end(), [](const auto& c) {
    return std::fabs(c.error - 11.7043) <= 5e-3;
  });
  o.require(std::fabs(r.best.error - 7.7168) <= 1e-3, "min 7.7168 +- 1e-3");
  o.require(second, "cluster at 11.7043 +- 5e-3");
  o.require(2 * clusters.front().hits > cfg.restarts, "strict majority in global cluster");
  o.require(dt.count() <= 300.0, "runtime <= 5 min");
  o.detail << "clusters";
  for (const auto& c : clusters) o.detail << " (" << fmt(c.error) << ", " << c.hits << ")";
  o.detail << ", " << fmt(dt.count(), 3) << " s";
}

void finite_sum(Outcome& o) {
  const auto h = testing::inexact_4x2x2x3();
  const auto s = greedy_sum(vectorize(h), h.shape(), SumConfig{});
  const auto& n = s.residual_norms;
  o.require(n.size() >= 2, "at least two terms");
  if (n.size() >= 2) {
    o.require(std::fabs(n[0] - 4.3218) <= 1e-3, "step 1 4.3218 +- 1e-3");
    o.require(std::fabs(n[1] - 1.8901) <= 0.05, "step 2 1.8901 +- 0.05");
  }
  o.require(!n.empty() && n.back() < 1e-6, "final < 1e-6");
  o.require(s.terms.size() <= 8, "<= 8 terms");
  o.detail << s.terms.size() << " terms, residuals";
  for (double x : n) o.detail << ' ' << fmt(x, 5);
}

void permutation_conformance(Outcome& o) {
  const std::vector<std::size_t> expected{
      1,  3,  9,  11, 33, 35, 41, 43, 2,  4,  10, 12, 34, 36, 42, 44, 5,  7,  13, 15, 37, 39,
      45, 47, 6,  8,  14, 16, 38, 40, 46, 48, 17, 19, 25, 27, 49, 51, 57, 59, 18, 20, 26, 28,
      50, 52, 58, 60, 21, 23, 29, 31, 53, 55, 61, 63, 22, 24, 30, 32, 54, 56, 62, 64};
  const auto w = perm_map(Shape{2, 2, 2, 2, 2, 2}, Permutation{4, 1, 5, 2, 6, 3});
  std::size_t mismatches = 0;
  for (std::size_t p = 0; p < expected.size(); ++p) mismatches += w.dest().at(p) != expected[p];
  o.require(w.size() == 64 && mismatches == 0, "64-entry list");
  o.detail << mismatches << " of 64 entries differ";
}

void collar_quarters(Outcome& o) {
  const Matrix a = testing::collar();
  const auto r = mat_sum_kpd({a, {4, 4}, {4, 4}}, SumConfig{});
  o.require(r.terms.size() == 2, "2 terms");
  o.require(!r.residual_norms.empty() && r.residual_norms.back() < 1e-8, "residual < 1e-8");
  o.require(!r.residual_norms.empty() && r.residual_norms.back() < 170.45, "beats 170.45");

  const auto cf = testing::collar_factors();
  const Matrix rebuilt =
      testing::dense_kron(cf.b1, cf.c1) - 1024.0 * testing::dense_kron(cf.b2, cf.c2);
  const double dev = max_abs_diff(rebuilt, a);
  o.require(dev <= 1e-10, "printed factors reconstruct to 1e-10");
  const Matrix printed =
      testing::dense_kron(cf.b1, cf.c1) - 1024.0 * testing::dense_kron(testing::collar_b2_printed(), cf.c2);
  o.detail << r.terms.size() << " terms, residual "
           << (r.residual_norms.empty() ? "n/a" : fmt(r.residual_norms.back()))
           << "; factor reconstruction " << fmt(dev) << " (B2 as 64ths; 4-decimal B2 gives "
           << fmt(max_abs_diff(printed, a), 3) << ")";
}

MatKpdResult collar_halves_result() {
  return mat_sum_kpd({testing::collar(), {2, 2, 2, 2}, {2, 2, 2, 2}}, SumConfig{});
}

void collar_halves(Outcome& o, const MatKpdResult& r) {
  const double expected[] = {345408, 82240, 16448};
  const auto& sq = r.squared_residuals;
  o.require(sq.size() >= 4, "at least 4 terms");
  bool monotone = true;
  for (std::size_t k = 1; k < sq.size(); ++k) monotone = monotone && sq[k] < sq[k - 1];
  o.require(monotone, "monotone residuals");
  if (sq.size() >= 4) {
    o.require(sq[3] < 1e-10, "4-term squared residual < 1e-10");
    for (int k = 0; k < 3; ++k) {
      const double rel = std::fabs(sq[k] - expected[k]) / expected[k];
      if (rel > 0.01) o.detail << "[logged: term " << k + 1 << " deviates " << fmt(100 * rel, 3) << "%] ";
    }
  }
  o.detail << "squared residuals";
  for (double x : sq) o.detail << ' ' << fmt(x, 6);
}

void collar_splits(Outcome& o, const MatKpdResult& r) {
  const Matrix a = testing::collar();
  const auto expanded = expand_by_splits(r.terms);
  bool alternating = true;
  for (const auto& t : expanded)
    for (std::size_t i = 0; i < t.matrices.size(); ++i) {
      const auto& m = t.matrices[i];
      alternating = alternating && (i % 2 == 0 ? m.rows() == 2 && m.cols() == 1
                                                : m.rows() == 1 && m.cols() == 2);
    }
  const double dev = max_abs_diff(sum_terms(expanded, 16, 16), a);
  o.require(expanded.size() <= 8, "<= 8 terms");
  o.require(alternating, "2x1/1x2 factors");
  o.require(dev <= 1e-8, "reconstruction to 1e-8");
  o.detail << expanded.size() << " terms, max deviation " << fmt(dev);
}

// Criterion 10 suites. Each returns the number of cases run.

std::size_t suite_index_roundtrip(Outcome& o, std::mt19937_64& g) {
  std::size_t cases = 0;
  std::uniform_int_distribution<std::size_t> order(1, 6), dim(1, 10);
  while (cases < 100) {
    std::vector<std::size_t> dims(order(g));
    for (auto& n : dims) n = dim(g);
    const Shape shape(dims);
    if (shape.total() > 10000) continue;
    bool ok = true;
    for (std::size_t k = 1; k <= shape.total() && ok; ++k)
      ok = linear_index(shape, multi_index(shape, k)) == k;
    o.require(ok, "index roundtrip");
    ++cases;
  }
  return cases;
}

std::size_t suite_stp_laws(Outcome& o, std::mt19937_64& g) {
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto a = testing::random_matrix(g, dim(g), dim(g));
    const auto b = testing::random_matrix(g, dim(g), dim(g));
    const auto c = testing::random_matrix(g, dim(g), dim(g));
    const auto a2 = testing::random_matrix(g, a.rows(), a.cols());
    worst = std::max({worst, max_abs_diff(stp(stp(a, b), c), stp(a, stp(b, c))),
                      max_abs_diff(stp(a + a2, c), stp(a, c) + stp(a2, c)),
                      max_abs_diff(stp(c, a + a2), stp(c, a) + stp(c, a2)),
                      max_abs_diff(stp(a, b).transpose(), stp(b.transpose(), a.transpose()))});
  }
  o.require(worst <= 1e-12, "stp laws to 1e-12");
  return 100;
}

std::size_t suite_swap_and_perm(Outcome& o, std::mt19937_64& g) {
  std::uniform_int_distribution<int> u(-9, 9);
  auto ints = [&](std::size_t n) {
    Vec v(n);
    for (double& x : v) x = u(g);
    return v;
  };
  std::uniform_int_distribution<std::size_t> order(1, 6), dim(1, 4);
  bool ok = true;
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = dim(g), n = dim(g);
    const auto x = ints(m), y = ints(n);
    ok = ok && apply_perm(swap_map(m, n), kron(x, y)) == kron(y, x);

    std::vector<std::size_t> dims(order(g));
    for (auto& d : dims) d = dim(g);
    std::vector<std::size_t> images(dims.size());
    std::iota(images.begin(), images.end(), std::size_t{1});
    std::shuffle(images.begin(), images.end(), g);
    const Permutation sigma(images);
    std::vector<Vec> xs, permuted;
    for (auto d : dims) xs.push_back(ints(d));
    for (std::size_t k = 1; k <= sigma.size(); ++k) permuted.push_back(xs[sigma(k) - 1]);
    ok = ok && apply_perm(perm_map(Shape(dims), sigma), testing::outer_product(xs)) ==
                   testing::outer_product(permuted);
  }
  o.require(ok, "swap/permutation identities exact");
  return 100;
}

std::size_t suite_monotonicity(Outcome& o, std::mt19937_64& g) {
  SvaConfig cfg;
  cfg.record_history = true;
  cfg.max_sweeps = 500;
  std::uniform_int_distribution<std::size_t> order(1, 4), dim(1, 4);
  bool ok = true;
  for (int t = 0; t < 100; ++t) {
    std::vector<std::size_t> dims(order(g));
    for (auto& d : dims) d = dim(g);
    const Shape shape(dims);
    const auto v = testing::random_vector(g, shape.total());
    RngStream rng(static_cast<std::uint64_t>(t));
    const auto sol = nkp(v, shape, cfg, rng);
    for (std::size_t k = 1; k < sol.history.size(); ++k)
      ok = ok && sol.history[k] <= sol.history[k - 1] + 1e-12;
  }
  o.require(ok, "ALS monotonicity");
  return 100;
}

std::size_t suite_stationarity(Outcome& o, std::mt19937_64& g) {
  std::uniform_int_distribution<std::size_t> order(1, 4), dim(1, 4);
  double worst = 0.0;
  std::size_t cases = 0;
  for (int t = 0; cases < 100 && t < 1000; ++t) {
    std::vector<std::size_t> dims(order(g));
    for (auto& d : dims) d = dim(g);
    const Shape shape(dims);
    const auto v = testing::random_vector(g, shape.total());
    RngStream rng(static_cast<std::uint64_t>(t));
    const auto sol = nkp(v, shape, SvaConfig{}, rng);
    if (!sol.converged) continue;
    worst = std::max(worst, testing::fd_gradient_max(v, sol.factors.factors));
    ++cases;
  }
  o.require(cases == 100 && worst <= 1e-5, "FD gradient <= 1e-5");
  o.detail << "max gradient " << fmt(worst, 3) << "; ";
  return cases;
}

std::size_t suite_matrix_oracle(Outcome& o, std::mt19937_64& g) {
  SvaConfig cfg;
  cfg.restarts = 8;
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const auto v = testing::random_vector(g, 24);
    const auto r = nkp_multistart(v, Shape{4, 6}, cfg);
    worst = std::max(worst, std::fabs(r.best.error - rank_one_oracle(Matrix(4, 6, v)).residual));
  }
  o.require(worst <= 1e-6, "d=2 oracle to 1e-6");
  o.detail << "max oracle gap " << fmt(worst, 3) << "; ";
  return 50;
}

std::size_t suite_telescoping(Outcome& o, std::mt19937_64& g) {
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto v = testing::random_vector(g, 8);
    SumConfig cfg;
    cfg.inner.restarts = 4;
    cfg.inner.seed = static_cast<std::uint64_t>(t);
    const auto s = greedy_sum(v, Shape{2, 2, 2}, cfg);
    Vec total = s.final_residual;
    for (const auto& term : s.terms) {
      const auto p = term.reconstruct();
      for (std::size_t k = 0; k < total.size(); ++k) total[k] += p[k];
    }
    worst = std::max(worst, max_abs_diff(total, v) / testing::norm2(v));
  }
  o.require(worst <= 1e-12, "telescoping to 1e-12 ||V||");
  return 100;
}

std::size_t suite_determinism(Outcome& o, std::mt19937_64& g) {
  bool ok = true;
  for (int t = 0; t < 100; ++t) {
    const auto v = testing::random_vector(g, 12);
    SvaConfig cfg;
    cfg.restarts = 4;
    cfg.seed = g();
    const auto a = nkp_multistart(v, Shape{2, 3, 2}, cfg);
    cfg.threads = 2;
    const auto b = nkp_multistart(v, Shape{2, 3, 2}, cfg);
    ok = ok && a.best.error == b.best.error && a.best.factors.factors == b.best.factors.factors &&
         a.best_restart == b.best_restart;
  }
  o.require(ok, "bit-exact determinism");
  return 100;
}

void property_suites(Outcome& o) {
  std::mt19937_64 g(20240601);
  const std::vector<std::pair<const char*, std::function<std::size_t(Outcome&, std::mt19937_64&)>>>
      suites{{"index", suite_index_roundtrip},     {"stp", suite_stp_laws},
             {"perm", suite_swap_and_perm},        {"monotone", suite_monotonicity},
             {"gradient", suite_stationarity},     {"oracle", suite_matrix_oracle},
             {"telescoping", suite_telescoping},   {"determinism", suite_determinism}};
  std::ostringstream counts;
  for (const auto& [name, run] : suites) counts << ' ' << name << '=' << run(o, g);
  o.detail << "cases:" << counts.str();
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const char* name, const std::function<void(Outcome&)>& body) {
    Outcome o;
    try {
      body(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << ". " << name << ": " << o.detail.str()
              << std::endl;
  };

  report(1, "MDA exactness", mda_exactness);
  report(2, "MDA rejection", mda_rejection);
  report(3, "NKP value", nkp_value);
  report(4, "Stationary landscape", stationary_landscape);
  report(5, "Finite sum", finite_sum);
  report(6, "Permutation conformance", permutation_conformance);
  report(7, "Collar d=2", collar_quarters);
  MatKpdResult halves;
  try {
    halves = collar_halves_result();
  } catch (const std::exception&) {
  }
  report(8, "Collar d=4", [&](Outcome& o) { collar_halves(o, halves); });
  report(9, "Collar d=8", [&](Outcome& o) { collar_splits(o, halves); });
  report(10, "Property suites", property_suites);

  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
