// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every criterion also has a wall-clock budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli/cli.hpp"
#include "qamc/branch.hpp"
#include "qamc/cauchy.hpp"
#include "qamc/estimators.hpp"
#include "qamc/harness.hpp"
#include "qamc/rng.hpp"

namespace {

using namespace qamc;

constexpr double kPi2 = kPi * kPi;
const Complex kI{0.0, 1.0};

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<void(Outcome&)> body;
};

int workers() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

double relative_gap(double value, double target) { return std::abs(value - target) / target; }

void branch_suite(Outcome& o) {
  const Complex l = branch_log({-1.0, 0.0});
  o.check(l.real() == 0.0 && l.imag() == kPi, "log(-1) = i pi");

  const double ulp4 = 4.0 * std::numeric_limits<double>::epsilon();
  const Complex root = branch_pow({-1.0, 0.0}, 0.5);
  o.check(std::abs(root.real()) <= ulp4 && std::abs(root.imag() - 1.0) <= ulp4, "(-1)^(1/2) = i");

  const Complex product_of_roots = root * root;
  const Complex root_of_product = branch_pow(Complex(-1.0, 0.0) * Complex(-1.0, 0.0), 0.5);
  o.check(std::abs(product_of_roots + 1.0) <= ulp4 && root_of_product == Complex(1.0, 0.0),
          "product of roots -1, root of product 1");

  Xoshiro256 rng(1);
  std::size_t in_range = 0;
  const std::size_t total = 100000;
  const double axis[] = {1.0, -1.0, 0.0};
  for (std::size_t i = 0; i < total; ++i) {
    Complex z;
    if (i < 9) {
      z = {axis[i % 3], axis[i / 3]};
      if (z == Complex(0.0, 0.0)) z = {0.0, -2.0};
    } else {
      const double scale = std::exp(40.0 * (rng.uniform_open() - 0.5));
      z = {scale * (2.0 * rng.uniform_open() - 1.0), scale * (2.0 * rng.uniform_open() - 1.0)};
    }
    const double a = branch_arg(z);
    if (a >= -kHalfPi && a < kThreeHalfPi) ++in_range;
  }
  o.check(in_range == total, "branch_arg range");
  o.detail << "log(-1)=" << l << " sqrt(-1)=" << root << " range " << in_range << "/" << total;
}

void theoretical_tables(Outcome& o) {
  const CauchyParams standard(0.0, 1.0);
  const double closed = asymptotic_variance_geometric(standard, 0.0).n_var_limit;
  const double quad = asymptotic_variance_geometric(standard, {0.0, 1e-8}).n_var_limit;
  const double mobius = asymptotic_variance_mobius(standard, kI).n_var_limit;
  o.check(std::abs(closed - kPi2 / 2.0) <= 1e-9, "closed form pi^2/2");
  o.check(std::abs(quad - kPi2 / 2.0) <= 1e-6, "quadrature path pi^2/2");
  o.check(mobius == 4.0, "mobius limit 4");
  o.check(asymptotic_variance_mobius(standard, 2.0 * kI).n_var_limit == 4.5, "mobius limit 4.5");
  o.check(cramer_rao_bound(standard, 1) == 4.0, "CR(sigma=1, n=1) = 4");
  o.check(std::abs(cramer_rao_bound(CauchyParams(0.0, 3.0), 100) - 0.36) <= 1e-15,
          "CR(sigma=3, n=100) = 0.36");

  std::istringstream in;
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run({"variance-table", "--mu", "2", "--sigma", "3", "--format", "csv"}, in,
                            out, err);
  o.check(code == 0, "variance-table exit status");
  std::istringstream rows(out.str());
  std::string line;
  std::getline(rows, line);
  std::size_t count = 0;
  while (std::getline(rows, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    o.check(cells.size() > 6 && std::stod(cells[6]) == 36.0, "table Cramer-Rao column = 4 sigma^2");
    ++count;
  }
  o.check(count == 5, "table rows");
  o.detail << "closed=" << closed << " quad(Im 1e-8)=" << quad << " mobius=" << mobius;
}

void unbiasedness(Outcome& o) {
  for (auto [mu, sigma] : {std::pair{0.0, 1.0}, std::pair{2.0, 3.0}}) {
    for (Complex alpha : {kI, Complex(1.0, 2.0)}) {
      for (EstimatorKind kind : {EstimatorKind::Geometric, EstimatorKind::Mobius}) {
        ExperimentConfig cfg;
        cfg.source = CauchyParams(mu, sigma);
        cfg.estimator = {kind, alpha};
        cfg.n_values = {kind == EstimatorKind::Geometric ? 2u : 3u};
        cfg.replications = 100000;
        cfg.seed = 3001;
        cfg.workers = workers();
        cfg.mean_standard_errors = 4.0;
        const auto r = run_experiment(cfg).results.front();
        const Complex z = (r.mean - Complex(mu, sigma));
        const double re_se = z.real() / r.mean_standard_error.real();
        const double im_se = z.imag() / r.mean_standard_error.imag();
        std::ostringstream label;
        label << to_string(kind) << " (" << mu << "," << sigma << ") alpha=" << alpha;
        o.check(r.verdicts.mean.value_or(false), label.str());
        o.detail << label.str() << " z=(" << re_se << "," << im_se << ") ";
      }
    }
  }
}

void n_var_check(Outcome& o, const SampleSource& source, EstimatorSpec spec, std::size_t n,
                 std::size_t reps, double target, double tolerance, std::uint64_t seed,
                 const std::string& label) {
  ExperimentConfig cfg;
  cfg.source = source;
  cfg.estimator = spec;
  cfg.n_values = {n};
  cfg.replications = reps;
  cfg.seed = seed;
  cfg.workers = workers();
  const auto r = run_experiment(cfg).results.front();
  const double gap = relative_gap(r.n_var, target);
  o.check(gap <= tolerance, label);
  o.check(std::abs(r.target.n_var - target) <= 1e-9 * target, label + " target");
  o.detail << label << ": " << r.n_var << " (se " << r.n_var_standard_error << ") vs " << target
           << " gap " << 100.0 * gap << "% ";
}

void mobius_convergence(Outcome& o) {
  const CauchyParams standard(0.0, 1.0);
  n_var_check(o, standard, {EstimatorKind::Mobius, kI}, 200, 50000, 4.0, 0.05, 4001, "alpha=i");
  n_var_check(o, standard, {EstimatorKind::Mobius, 2.0 * kI}, 200, 50000, 4.5, 0.05, 4002,
              "alpha=2i");
}

void geometric_convergence(Outcome& o) {
  const CauchyParams standard(0.0, 1.0);
  const CauchyParams shifted(1.0, 1.0);
  const EstimatorSpec spec{EstimatorKind::Geometric, 0.0};
  n_var_check(o, standard, spec, 1000, 20000, kPi2 / 2.0, 0.10, 5001, "(0,1) n=1e3");
  n_var_check(o, standard, spec, 10000, 20000, kPi2 / 2.0, 0.05, 5002, "(0,1) n=1e4");
  n_var_check(o, shifted, spec, 1000, 20000, 3.0 * kPi2 / 4.0, 0.10, 5003, "(1,1) n=1e3");
  n_var_check(o, shifted, spec, 10000, 20000, 3.0 * kPi2 / 4.0, 0.05, 5004, "(1,1) n=1e4");
}

// Targets from an independent 30-digit quadrature of the uniform-density
// integrals; the harness computes its own and n_var_check compares both.
void uniform_sources(Outcome& o) {
  n_var_check(o, UniformSource{1.0, 2.0}, {EstimatorKind::Geometric, 0.0}, 1000, 20000,
              0.084652700729674762781, 0.10, 6001, "U(1,2) alpha=0");
  n_var_check(o, UniformSource{-1.0, 2.0}, {EstimatorKind::Geometric, kI}, 1000, 20000,
              0.76567909644941913548, 0.10, 6002, "U(-1,2) alpha=i");
}

void clt_isotropy(Outcome& o) {
  ExperimentConfig cfg;
  cfg.source = CauchyParams(0.0, 1.0);
  cfg.estimator = {EstimatorKind::Mobius, kI};
  cfg.n_values = {500};
  cfg.replications = 20000;
  cfg.seed = 7001;
  cfg.workers = workers();
  cfg.check_clt = true;
  const auto r = run_experiment(cfg).results.front();
  const auto& c = *r.clt;
  const double re_var = c.re_variance_ratio * r.target.clt_scalar;
  const double im_var = c.im_variance_ratio * r.target.clt_scalar;
  o.check(std::abs(c.offdiag_correlation) < 0.03, "|corr| < 0.03");
  o.check(relative_gap(re_var, 2.0) <= 0.10, "Re variance within 10% of 2");
  o.check(relative_gap(im_var, 2.0) <= 0.10, "Im variance within 10% of 2");
  o.check(c.re_qq_correlation > 0.99 && c.im_qq_correlation > 0.99, "QQ correlation > 0.99");
  o.check(r.verdicts.clt.value_or(false), "harness CLT verdict");
  o.detail << "corr=" << c.offdiag_correlation << " var=(" << re_var << "," << im_var
           << ") qq=(" << c.re_qq_correlation << "," << c.im_qq_correlation << ")";
}

void sign_dichotomy_check(Outcome& o) {
  const CauchyParams standard(0.0, 1.0);
  Xoshiro256 rng(8001);
  std::size_t agree = 0;
  const std::size_t sets = 10000;
  std::vector<double> x;
  for (std::size_t s = 0; s < sets; ++s) {
    x.resize(2 + s % 5);
    for (auto& v : x) v = draw(standard, rng);
    const bool same_sign = sign_dichotomy(x, 0.0);
    const bool real = geometric_estimate(x, 0.0).estimate.imag() == 0.0;
    if (same_sign == real) ++agree;
  }
  o.check(agree == sets, "Im(G) = 0 iff equal signs");

  const std::size_t pairs = 40000;
  std::size_t degenerate = 0;
  x.resize(2);
  for (std::size_t s = 0; s < pairs; ++s) {
    for (auto& v : x) v = draw(standard, rng);
    if (geometric_estimate(x, 0.0).estimate.imag() == 0.0) ++degenerate;
  }
  const double freq = static_cast<double>(degenerate) / static_cast<double>(pairs);
  const double se = std::sqrt(0.25 / static_cast<double>(pairs));
  o.check(std::abs(freq - 0.5) <= 3.0 * se, "n=2 degeneracy frequency 1/2");
  o.detail << "agreement " << agree << "/" << sets << ", n=2 frequency " << freq << " (3 SE = "
           << 3.0 * se << ")";
}

void alpha_optimality(Outcome& o) {
  const CauchyParams params(1.0, 2.0);
  std::vector<Complex> grid;
  for (int i = -10; i <= 10; ++i) {
    for (int j = -10; j <= 10; ++j) {
      grid.push_back({-params.mu() + 0.2 * params.sigma() * i, params.sigma() * std::exp(0.1 * j)});
    }
  }
  const auto r = scan_mobius_alphas(params, grid, 200, 20000, 9001, workers());
  o.check(grid[r.nearest_optimum] == Complex(-1.0, 2.0), "grid contains the optimum");
  o.check(r.argmin_theory == r.nearest_optimum, "theoretical argmin");
  o.check(r.argmin_mc == r.nearest_optimum, "Monte Carlo argmin");
  o.detail << "optimum " << grid[r.nearest_optimum] << ", theory argmin " << grid[r.argmin_theory]
           << ", MC argmin " << grid[r.argmin_mc] << " (n Var " << r.n_var_mc[r.argmin_mc] << ")";
}

void harmonic_identity(Outcome& o) {
  const auto same = harmonic_identity_check(10001, 7, 20000, 1.0);
  const auto control = harmonic_identity_check(10001, 7, 20000, 2.0);
  o.check(same.below_critical, "KS below 1% critical value");
  o.check(!control.below_critical, "negative control rejects");
  o.detail << "D=" << same.ks_statistic << " crit=" << same.critical_value
           << " control D=" << control.ks_statistic;
}

void zolotarev(Outcome& o) {
  const auto x = sample(CauchyParams(0.0, 1.0), 11001, 1000000);
  double s = 0.0;
  double s2 = 0.0;
  for (double v : x) {
    const double l = std::log(std::abs(v));
    s += l * l;
    s2 += l * l * l * l;
  }
  const double n = static_cast<double>(x.size());
  const double mean = s / n;
  const double se = std::sqrt((s2 / n - mean * mean) / (n - 1.0));
  const double target = zolotarev_second_moment(CauchyParams(0.0, 1.0));
  o.check(std::abs(target - kPi2 / 4.0) <= 1e-15, "closed form pi^2/4");
  o.check(std::abs(mean - target) <= 3.0 * se, "within 3 SE");
  o.detail << "mean=" << mean << " target=" << target << " se=" << se;
}

std::string run_cli(const std::vector<std::string>& args) {
  std::istringstream in;
  std::ostringstream out;
  std::ostringstream err;
  cli::run(args, in, out, err);
  return out.str();
}

void determinism(Outcome& o) {
  const std::vector<std::vector<std::string>> runs = {
      {"simulate", "--estimator", "mobius", "--alpha", "0,1", "--n", "50,200", "--reps", "5000",
       "--seed", "12001"},
      {"clt-check", "--estimator", "geometric", "--alpha", "0.5,0.5", "--mu", "1", "--sigma", "2",
       "--n", "100", "--reps", "2000", "--seed", "12002"},
      {"simulate", "--source", "uniform", "--lo", "-1", "--hi", "2", "--estimator", "geometric",
       "--alpha", "0,1", "--n", "100", "--reps", "2000", "--seed", "12003", "--format", "csv"},
      {"simulate", "--estimator", "two-step", "--alpha", "1,1", "--n", "40", "--reps", "2000",
       "--seed", "12004"},
  };
  std::size_t identical = 0;
  for (const auto& base : runs) {
    auto one = base;
    auto four = base;
    one.insert(one.end(), {"--workers", "1"});
    four.insert(four.end(), {"--workers", "4"});
    const std::string a = run_cli(one);
    const std::string b = run_cli(one);
    const std::string c = run_cli(four);
    const bool same = !a.empty() && a == b && a == c;
    if (same) ++identical;
    o.check(same, base.front() + " seed " + base[base.size() - 1]);
  }
  o.detail << identical << "/" << runs.size() << " report sets byte-identical across repeats and workers {1,4}";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "branch arithmetic", 1.0, branch_suite},
      {2, "theoretical tables", 5.0, theoretical_tables},
      {3, "unbiasedness at minimal n", 120.0, unbiasedness},
      {4, "n Var convergence, Mobius", 120.0, mobius_convergence},
      {5, "n Var convergence, geometric", 300.0, geometric_convergence},
      {6, "general-distribution variance", 180.0, uniform_sources},
      {7, "CLT isotropy", 120.0, clt_isotropy},
      {8, "sign dichotomy", 30.0, sign_dichotomy_check},
      {9, "alpha optimality", 600.0, alpha_optimality},
      {10, "harmonic identity", 60.0, harmonic_identity},
      {11, "Zolotarev identity", 30.0, zolotarev},
      {12, "determinism", 600.0, determinism},
  };

  std::printf("qamc acceptance suite (%d worker%s)\n", workers(), workers() == 1 ? "" : "s");
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream timing;
    timing << "runtime " << elapsed << " s exceeds budget " << c.budget_seconds << " s";
    o.check(elapsed < c.budget_seconds, timing.str());
    if (!o.passed) ++failures;
    std::printf("%s %2d %-30s %8.2f s  %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name, elapsed,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failures);
  return failures == 0 ? 0 : 1;
}
