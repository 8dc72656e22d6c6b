// kpdkit: Kronecker product decomposition from the command line.
//
//   kpdkit exact  FILE [--tol T]
//   kpdkit nkp    FILE [sva flags] [--histogram]
//   kpdkit sumkpd FILE [sva flags] [--eps-sum E] [--max-terms K]
//   kpdkit matkpd FILE --row-dims 4,4 --col-dims 4,4 [sum flags] [--expand-splits]
//
// stdout carries a key: value report with factor payloads in the hypermatrix
// text format; wall-clock time goes to stderr. Exit status: 0 ok, 1 not
// decomposable (exact) or stalled (sumkpd, matkpd), 2 error.
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kpdkit/errors.hpp"
#include "kpdkit/io.hpp"
#include "kpdkit/matform.hpp"
#include "kpdkit/mda.hpp"
#include "kpdkit/sumkpd.hpp"
#include "kpdkit/sva.hpp"

namespace {

using namespace kpdkit;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

struct Options {
  std::string input;
  double tol = kDefaultExactTol;
  SumConfig sum;
  std::optional<std::uint64_t> seed;
  std::string init = "unit";
  bool histogram = false;
  bool expand_splits = false;
  std::string row_dims;
  std::string col_dims;
};

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  const char* env = std::getenv("KPDKIT_SEED");
  if (env == nullptr || *env == '\0') return 1;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw DomainError("KPDKIT_SEED is not an unsigned integer: '" + std::string(env) + "'");
  }
}

SumConfig resolved_config(const Options& o) {
  SumConfig cfg = o.sum;
  cfg.inner.seed = resolve_seed(o);
  cfg.inner.init = o.init == "centered" ? InitMode::centered : InitMode::unit_interval;
  cfg.validate();
  return cfg;
}

void print_dims(std::ostream& out, const char* key, const std::vector<std::size_t>& dims) {
  out << key << ':';
  for (auto n : dims) out << ' ' << n;
  out << '\n';
}

void print_sva_config(std::ostream& out, const SvaConfig& c) {
  out << "eps: " << format_double(c.eps) << '\n'
      << "max_sweeps: " << c.max_sweeps << '\n'
      << "restarts: " << c.restarts << '\n'
      << "seed: " << c.seed << '\n'
      << "init: " << (c.init == InitMode::centered ? "centered" : "unit") << '\n'
      << "cluster_tol: " << format_double(c.cluster_tol) << '\n'
      << "threads: " << c.threads << '\n';
}

void print_sum_config(std::ostream& out, const SumConfig& c) {
  print_sva_config(out, c.inner);
  out << "eps_sum: " << format_double(c.eps_sum) << '\n' << "max_terms: " << c.max_terms << '\n';
}

void print_term(std::ostream& out, std::size_t k, const FactorTerm& t) {
  out << "term: " << k << '\n' << "coefficient: " << format_double(t.coefficient) << '\n';
  for (std::size_t s = 0; s < t.factors.size(); ++s) {
    out << "factor: " << s + 1 << '\n';
    write_vector(out, t.factors[s]);
  }
}

void print_mat_term(std::ostream& out, std::size_t k, const MatFactorTerm& t) {
  out << "term: " << k << '\n' << "coefficient: " << format_double(t.coefficient) << '\n';
  for (std::size_t s = 0; s < t.matrices.size(); ++s) {
    out << "factor: " << s + 1 << '\n';
    write_matrix(out, t.matrices[s]);
  }
}

void print_residual_table(std::ostream& out, const std::vector<double>& norms) {
  out << "residuals: " << norms.size() << '\n' << "# term norm squared_norm\n";
  for (std::size_t k = 0; k < norms.size(); ++k)
    out << k + 1 << ' ' << format_double(norms[k]) << ' ' << format_double(norms[k] * norms[k])
        << '\n';
}

void print_histogram(std::ostream& out, const StationaryHistogram& h) {
  out << "histogram: " << h.clusters.size() << '\n' << "# error hits\n";
  for (const auto& c : h.clusters) out << format_double(c.error) << ' ' << c.hits << '\n';
}

int cmd_exact(const Options& o) {
  const Hypermatrix h = read_hypermatrix(std::filesystem::path(o.input));
  const auto r = exact_decompose(h, o.tol);
  auto& out = std::cout;
  print_dims(out, "shape", h.shape().dims());
  out << "tol: " << format_double(o.tol) << '\n'
      << "decomposable: " << (r.decomposable ? "true" : "false") << '\n'
      << "scale: " << format_double(r.factors.scale) << '\n'
      << "residual: " << format_double(r.residual) << '\n'
      << "residual_squared: " << format_double(r.residual * r.residual) << '\n';
  print_term(out, 1, FactorTerm{r.factors.factors, r.factors.scale});
  return r.decomposable ? kExitOk : kExitNegative;
}

int cmd_nkp(const Options& o) {
  const Hypermatrix h = read_hypermatrix(std::filesystem::path(o.input));
  const SumConfig cfg = resolved_config(o);
  const auto v = vectorize(h);
  const auto r = nkp_multistart(v, h.shape(), cfg.inner);
  auto& out = std::cout;
  print_dims(out, "shape", h.shape().dims());
  print_sva_config(out, cfg.inner);
  out << "error: " << format_double(r.best.error) << '\n'
      << "error_squared: " << format_double(r.best.error * r.best.error) << '\n'
      << "best_restart: " << r.best_restart << '\n'
      << "sweeps: " << r.best.sweeps << '\n'
      << "converged: " << (r.best.converged ? "true" : "false") << '\n'
      << "failed_restarts: " << r.failed_restarts << '\n';
  if (o.histogram) print_histogram(out, r.histogram);
  print_term(out, 1, r.best.factors);
  return kExitOk;
}

int cmd_sumkpd(const Options& o) {
  const Hypermatrix h = read_hypermatrix(std::filesystem::path(o.input));
  const SumConfig cfg = resolved_config(o);
  const auto s = greedy_sum(vectorize(h), h.shape(), cfg);
  auto& out = std::cout;
  print_dims(out, "shape", h.shape().dims());
  print_sum_config(out, cfg);
  out << "status: " << to_string(s.status) << '\n' << "terms: " << s.terms.size() << '\n';
  print_residual_table(out, s.residual_norms);
  for (std::size_t k = 0; k < s.terms.size(); ++k) print_term(out, k + 1, s.terms[k]);
  return s.status == SumStatus::stalled ? kExitNegative : kExitOk;
}

int cmd_matkpd(const Options& o) {
  MatKpdProblem p{read_matrix(std::filesystem::path(o.input)), parse_dims_list(o.row_dims),
                  parse_dims_list(o.col_dims)};
  p.validate();
  const SumConfig cfg = resolved_config(o);
  const auto r = mat_sum_kpd(p, cfg);
  auto& out = std::cout;
  out << "matrix: " << p.a.rows() << ' ' << p.a.cols() << '\n';
  print_dims(out, "row_dims", p.row_dims);
  print_dims(out, "col_dims", p.col_dims);
  print_dims(out, "vector_shape", r.vector_form.shape.dims());
  print_sum_config(out, cfg);
  out << "status: " << to_string(r.status) << '\n' << "terms: " << r.terms.size() << '\n';
  print_residual_table(out, r.residual_norms);
  for (std::size_t k = 0; k < r.terms.size(); ++k) print_mat_term(out, k + 1, r.terms[k]);

  if (o.expand_splits) {
    const auto expanded = expand_by_splits(r.terms);
    Matrix rebuilt(p.a.rows(), p.a.cols());
    for (const auto& t : expanded) rebuilt = rebuilt + t.reconstruct();
    out << "split_terms: " << expanded.size() << '\n'
        << "split_residual: " << format_double((p.a - rebuilt).frobenius_norm()) << '\n';
    for (std::size_t k = 0; k < expanded.size(); ++k) print_mat_term(out, k + 1, expanded[k]);
  }
  return r.status == SumStatus::stalled ? kExitNegative : kExitOk;
}

void add_sva_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--eps", o.sum.inner.eps, "Sweep convergence tolerance")->capture_default_str();
  cmd->add_option("--max-sweeps", o.sum.inner.max_sweeps, "Sweep cap per restart")
      ->capture_default_str();
  cmd->add_option("--restarts", o.sum.inner.restarts, "Random starts per NKP")
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Root seed (default: KPDKIT_SEED, else 1)");
  cmd->add_option("--init", o.init, "Start distribution")
      ->check(CLI::IsMember({"unit", "centered"}))
      ->capture_default_str();
  cmd->add_option("--cluster-tol", o.sum.inner.cluster_tol, "Histogram cluster width")
      ->capture_default_str();
  cmd->add_option("--threads", o.sum.inner.threads, "Worker threads for restarts")
      ->capture_default_str();
}

void add_sum_flags(CLI::App* cmd, Options& o) {
  add_sva_flags(cmd, o);
  cmd->add_option("--eps-sum", o.sum.eps_sum, "Stop once the residual norm is below this")
      ->capture_default_str();
  cmd->add_option("--max-terms", o.sum.max_terms, "Term cap")->capture_default_str();
}

std::string command_echo(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kronecker product decomposition of hypermatrices and matrices"};
  app.require_subcommand(1);
  Options o;

  auto* exact = app.add_subcommand("exact", "Test exact decomposability and extract factors");
  exact->add_option("input", o.input, "Hypermatrix file")->required();
  exact->add_option("--tol", o.tol, "Residual tolerance for the verdict")->capture_default_str();

  auto* nkp = app.add_subcommand("nkp", "Nearest Kronecker product by multistart ALS");
  nkp->add_option("input", o.input, "Hypermatrix file")->required();
  add_sva_flags(nkp, o);
  nkp->add_flag("--histogram", o.histogram, "Print the stationary-value clusters");

  auto* sum = app.add_subcommand("sumkpd", "Greedy sum of Kronecker products");
  sum->add_option("input", o.input, "Hypermatrix file")->required();
  add_sum_flags(sum, o);

  auto* mat = app.add_subcommand("matkpd", "Matrix Kronecker product decomposition");
  mat->add_option("input", o.input, "Matrix file (hypermatrix d=2 or plain rows)")->required();
  mat->add_option("--row-dims", o.row_dims, "Factor row counts, e.g. 4,4")->required();
  mat->add_option("--col-dims", o.col_dims, "Factor column counts, e.g. 4,4")->required();
  add_sum_flags(mat, o);
  mat->add_flag("--expand-splits", o.expand_splits, "Expand 2x2 factors into rank-one splits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  const auto start = std::chrono::steady_clock::now();
  int rc = kExitError;
  try {
    std::cout << "command: " << command_echo(argc, argv) << '\n'
              << "subcommand: " << app.get_subcommands().front()->get_name() << '\n'
              << "input: " << o.input << '\n';
    if (*exact) rc = cmd_exact(o);
    else if (*nkp) rc = cmd_nkp(o);
    else if (*sum) rc = cmd_sumkpd(o);
    else rc = cmd_matkpd(o);
  } catch (const ParseError& e) {
    std::cout.flush();
    std::cerr << "error: " << o.input << ": " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cout.flush();
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  std::cerr << "wall_seconds: " << dt.count() << '\n';
  return rc;
}
