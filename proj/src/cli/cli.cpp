#include "cli/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "cli/report_io.hpp"
#include "qamc/errors.hpp"

namespace qamc::cli {
namespace {

struct Options {
  std::string format = "json";
  std::string out_path;
  std::string input = "-";
  std::vector<std::string> estimators;
  std::vector<std::string> alphas;
  std::string source = "cauchy";
  double mu = 0.0;
  double sigma = 1.0;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::size_t> n_values;
  std::size_t replications = 10000;
  std::uint64_t seed = 1;
  int workers = 0;
  double tolerance = 0.10;
  double mean_standard_errors = 4.0;
  double max_correlation = 0.03;
  double ratio_tolerance = 0.10;
  double min_qq = 0.99;
  double quadrature_tolerance = kDefaultQuadratureTolerance;
  double reference_sigma = 1.0;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_real(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

EstimatorKind parse_estimator(std::string_view name) {
  if (name == "geometric") return EstimatorKind::Geometric;
  if (name == "mobius") return EstimatorKind::Mobius;
  if (name == "two-step") return EstimatorKind::TwoStepMobius;
  throw ConfigError("unknown estimator '" + std::string(name) + "'");
}

Complex default_alpha(EstimatorKind kind) {
  return kind == EstimatorKind::Geometric ? Complex(0.0, 0.0) : Complex(0.0, 1.0);
}

EstimatorSpec single_estimator(const Options& o) {
  if (o.estimators.size() > 1) throw ConfigError("exactly one --estimator expected");
  if (o.alphas.size() > 1) throw ConfigError("exactly one --alpha expected");
  EstimatorSpec spec;
  spec.kind = o.estimators.empty() ? EstimatorKind::Mobius : parse_estimator(o.estimators.front());
  spec.alpha = o.alphas.empty() ? default_alpha(spec.kind) : parse_alpha(o.alphas.front());
  try {
    validate(spec);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

Format parse_format(std::string_view name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  throw ConfigError("unknown format '" + std::string(name) + "'");
}

int effective_workers(int requested) {
  if (requested > 0) return requested;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

template <typename Report>
void emit(const Options& o, const Report& report, std::ostream& out) {
  const std::string text =
      parse_format(o.format) == Format::Json ? render(to_json(report)) : to_csv(report);
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out_path, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file '" + o.out_path + "'");
  file << text;
}

ExperimentConfig experiment_config(const Options& o) {
  ExperimentConfig cfg;
  if (o.source == "cauchy") {
    try {
      cfg.source = CauchyParams(o.mu, o.sigma);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
  } else if (o.source == "uniform") {
    cfg.source = UniformSource{o.lo, o.hi};
  } else {
    throw ConfigError("unknown source '" + o.source + "'");
  }
  cfg.estimator = single_estimator(o);
  cfg.n_values = o.n_values.empty() ? std::vector<std::size_t>{200} : o.n_values;
  cfg.replications = o.replications;
  cfg.seed = o.seed;
  cfg.workers = effective_workers(o.workers);
  cfg.n_var_tolerance = o.tolerance;
  cfg.mean_standard_errors = o.mean_standard_errors;
  cfg.clt = {o.max_correlation, o.ratio_tolerance, o.min_qq};
  cfg.validate();
  return cfg;
}

int cmd_estimate(const Options& o, std::istream& in, std::ostream& out) {
  const EstimatorSpec spec = single_estimator(o);
  std::vector<double> samples;
  if (o.input == "-") {
    samples = parse_samples(in);
  } else {
    std::ifstream file(o.input);
    if (!file) throw ConfigError("cannot open input file '" + o.input + "'");
    samples = parse_samples(file);
  }
  emit(o, estimate(spec, samples), out);
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out, bool check_clt) {
  ExperimentConfig cfg = experiment_config(o);
  if (check_clt) {
    if (!std::holds_alternative<CauchyParams>(cfg.source)) {
      throw ConfigError("clt-check requires a Cauchy source");
    }
    if (cfg.replications < kMinCltDeviations) {
      throw ConfigError("clt-check needs at least " + std::to_string(kMinCltDeviations) +
                        " replications");
    }
    cfg.check_clt = true;
  }
  const ExperimentReport report = run_experiment(cfg);
  emit(o, report, out);
  return report.passed() ? kExitOk : kExitVerification;
}

int cmd_variance_table(const Options& o, std::ostream& out) {
  CauchyParams params(0.0, 1.0);
  try {
    params = CauchyParams(o.mu, o.sigma);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }

  std::vector<EstimatorKind> kinds;
  for (const auto& name : o.estimators) kinds.push_back(parse_estimator(name));
  if (kinds.empty()) kinds = {EstimatorKind::Geometric, EstimatorKind::Mobius};

  VarianceTable table;
  table.mu = params.mu();
  table.sigma = params.sigma();
  const double bound = cramer_rao_bound(params, 1);
  for (EstimatorKind kind : kinds) {
    if (kind == EstimatorKind::TwoStepMobius) {
      throw ConfigError("variance-table supports geometric and mobius estimators");
    }
    std::vector<Complex> grid;
    for (const auto& a : o.alphas) grid.push_back(parse_alpha(a));
    if (grid.empty()) {
      grid = kind == EstimatorKind::Geometric
                 ? std::vector<Complex>{{0.0, 0.0}, {0.0, 1.0}}
                 : std::vector<Complex>{{0.0, 1.0}, {0.0, 2.0}, {-params.mu() + 0.0, params.sigma()}};
    }
    for (Complex alpha : grid) {
      VarianceRow row;
      row.estimator = kind;
      try {
        row.limits = kind == EstimatorKind::Geometric
                         ? asymptotic_variance_geometric(params, alpha, o.quadrature_tolerance)
                         : asymptotic_variance_mobius(params, alpha);
      } catch (const DomainError& e) {
        throw ConfigError(e.what());
      }
      row.cramer_rao = bound;
      row.efficiency = bound / row.limits.n_var_limit;
      table.rows.push_back(row);
    }
  }
  emit(o, table, out);
  return kExitOk;
}

int cmd_harmonic_check(const Options& o, std::ostream& out) {
  if (o.n_values.size() > 1) throw ConfigError("harmonic-check takes a single --n");
  const std::size_t n = o.n_values.empty() ? 7 : o.n_values.front();
  if (!(o.reference_sigma > 0.0)) throw ConfigError("--reference-sigma must be positive");
  const auto report = harmonic_identity_check(o.seed, n, o.replications, o.reference_sigma);
  emit(o, report, out);
  return report.below_critical ? kExitOk : kExitVerification;
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format: json or csv")->capture_default_str();
  cmd->add_option("--out", o.out_path, "Write the report to this file instead of stdout");
}

void add_estimator_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--estimator", o.estimators, "geometric, mobius or two-step");
  cmd->add_option("--alpha", o.alphas, "Shift as RE,IM (use --alpha=-1,2 for a negative RE)");
}

void add_experiment_flags(CLI::App* cmd, Options& o) {
  add_estimator_flags(cmd, o);
  cmd->add_option("--source", o.source, "cauchy or uniform")->capture_default_str();
  cmd->add_option("--mu", o.mu, "Cauchy location")->capture_default_str();
  cmd->add_option("--sigma", o.sigma, "Cauchy scale")->capture_default_str();
  cmd->add_option("--lo", o.lo, "Uniform lower bound")->capture_default_str();
  cmd->add_option("--hi", o.hi, "Uniform upper bound")->capture_default_str();
  cmd->add_option("--n", o.n_values, "Sample sizes, comma separated")->delimiter(',');
  cmd->add_option("--reps", o.replications, "Monte Carlo replications per n")->capture_default_str();
  cmd->add_option("--seed", o.seed, "Base seed")->capture_default_str();
  cmd->add_option("--workers", o.workers, "Worker threads (0 = all cores)")->capture_default_str();
  cmd->add_option("--tol", o.tolerance, "Relative tolerance for n Var")->capture_default_str();
  cmd->add_option("--mean-se", o.mean_standard_errors, "Mean verdict width in standard errors")
      ->capture_default_str();
}

}  // namespace

std::vector<double> parse_samples(std::istream& in) {
  std::vector<double> samples;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto value = parse_real(view);
    if (!value) {
      throw InputParseError(number, "cannot parse '" + std::string(view) + "' as a finite real number");
    }
    samples.push_back(*value);
  }
  if (samples.empty()) throw InputParseError(number == 0 ? 1 : number, "no samples found");
  return samples;
}

Complex parse_alpha(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw ConfigError("alpha must be given as RE,IM");
  const auto re = parse_real(trim(text.substr(0, comma)));
  const auto im = parse_real(trim(text.substr(comma + 1)));
  if (!re || !im) throw ConfigError("cannot parse alpha '" + std::string(text) + "'");
  return {*re, *im};
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Quasi-arithmetic mean estimators of the Cauchy parameter mu + sigma i", "qamc"};
  app.require_subcommand(1);

  auto* estimate_cmd = app.add_subcommand("estimate", "Estimate mu + sigma i from one real per line");
  estimate_cmd->add_option("--input", o.input, "Input file, - for stdin")->capture_default_str();
  add_estimator_flags(estimate_cmd, o);
  add_output_flags(estimate_cmd, o);

  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo check of bias and n Var");
  add_experiment_flags(simulate_cmd, o);
  add_output_flags(simulate_cmd, o);

  auto* clt_cmd = app.add_subcommand("clt-check", "Monte Carlo check of the isotropic CLT");
  add_experiment_flags(clt_cmd, o);
  clt_cmd->add_option("--corr-max", o.max_correlation, "Max |Re-Im correlation|")->capture_default_str();
  clt_cmd->add_option("--ratio-tol", o.ratio_tolerance, "Axis variance ratio tolerance")->capture_default_str();
  clt_cmd->add_option("--qq-min", o.min_qq, "Min normal QQ correlation")->capture_default_str();
  add_output_flags(clt_cmd, o);

  auto* table_cmd = app.add_subcommand("variance-table", "Theoretical n Var limits vs Cramer-Rao");
  table_cmd->add_option("--mu", o.mu, "Cauchy location")->capture_default_str();
  table_cmd->add_option("--sigma", o.sigma, "Cauchy scale")->capture_default_str();
  add_estimator_flags(table_cmd, o);
  table_cmd->add_option("--quad-tol", o.quadrature_tolerance, "Absolute quadrature tolerance")
      ->capture_default_str();
  add_output_flags(table_cmd, o);

  auto* harmonic_cmd = app.add_subcommand("harmonic-check", "KS check that the harmonic mean of standard Cauchy is standard Cauchy");
  harmonic_cmd->add_option("--n", o.n_values, "Samples per harmonic mean");
  harmonic_cmd->add_option("--reps", o.replications, "Number of harmonic means")->capture_default_str();
  harmonic_cmd->add_option("--seed", o.seed, "Base seed")->capture_default_str();
  harmonic_cmd->add_option("--reference-sigma", o.reference_sigma,
                           "Scale of the Cauchy reference sample (1 for the identity check)")
      ->capture_default_str();
  add_output_flags(harmonic_cmd, o);

  std::vector<std::string> argv_storage{"qamc"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (estimate_cmd->parsed()) return cmd_estimate(o, in, out);
    if (simulate_cmd->parsed()) return cmd_simulate(o, out, false);
    if (clt_cmd->parsed()) return cmd_simulate(o, out, true);
    if (table_cmd->parsed()) return cmd_variance_table(o, out);
    if (harmonic_cmd->parsed()) return cmd_harmonic_check(o, out);
  } catch (const InputParseError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInputParse;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << " (best value " << e.best_value()
        << ", error estimate " << e.error_estimate() << ")\n";
    return kExitNumerical;
  }
  return kExitConfig;
}

}  // namespace qamc::cli
