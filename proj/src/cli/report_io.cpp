#include "cli/report_io.hpp"

#include <array>
#include <charconv>
#include <sstream>
#include <variant>

namespace qamc::cli {
namespace {

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

Json source_json(const SampleSource& source) {
  if (const auto* c = std::get_if<CauchyParams>(&source)) {
    return Json{{"type", "cauchy"}, {"mu", c->mu()}, {"sigma", c->sigma()}};
  }
  const auto& u = std::get<UniformSource>(source);
  return Json{{"type", "uniform"}, {"lo", u.lo}, {"hi", u.hi}};
}

class CsvWriter {
 public:
  explicit CsvWriter(std::initializer_list<const char*> header) {
    for (const char* h : header) cells_.emplace_back(h);
    end_row();
  }

  CsvWriter& num(double v) { return cell(format_number(v)); }
  CsvWriter& count(std::uint64_t v) { return cell(std::to_string(v)); }
  CsvWriter& text(std::string_view v) { return cell(std::string(v)); }
  CsvWriter& flag(bool v) { return cell(v ? "true" : "false"); }
  CsvWriter& flag(const std::optional<bool>& v) { return v ? flag(*v) : cell(""); }
  CsvWriter& blank() { return cell(""); }

  void end_row() {
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells_[i];
    }
    out_ << '\n';
    cells_.clear();
  }

  std::string str() const { return out_.str(); }

 private:
  CsvWriter& cell(std::string v) {
    cells_.push_back(std::move(v));
    return *this;
  }

  std::vector<std::string> cells_;
  std::ostringstream out_;
};

}  // namespace

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

std::string render(const Json& doc) { return doc.dump(2) + "\n"; }

Json to_json(const EstimateRecord& r) {
  return Json{{"kind", "estimate"},
              {"estimator", to_string(r.estimator)},
              {"alpha", complex_json(r.alpha)},
              {"n", r.n},
              {"mu_hat", r.estimate.real()},
              {"sigma_hat", r.estimate.imag()},
              {"degenerate_imaginary", r.degenerate_imaginary},
              {"unbiased_regime", r.unbiased_regime}};
}

Json to_json(const ExperimentReport& report) {
  const auto& cfg = report.config;
  Json results = Json::array();
  for (const auto& r : report.results) {
    Json clt = nullptr;
    if (r.clt) {
      clt = Json{{"offdiag_correlation", r.clt->offdiag_correlation},
                 {"re_variance_ratio", r.clt->re_variance_ratio},
                 {"im_variance_ratio", r.clt->im_variance_ratio},
                 {"re_qq_correlation", r.clt->re_qq_correlation},
                 {"im_qq_correlation", r.clt->im_qq_correlation}};
    }
    results.push_back(Json{
        {"n", r.n},
        {"mean", complex_json(r.mean)},
        {"mean_standard_error", complex_json(r.mean_standard_error)},
        {"covariance",
         {{"re_re", r.covariance.re_re}, {"re_im", r.covariance.re_im}, {"im_im", r.covariance.im_im}}},
        {"n_var", r.n_var},
        {"n_var_standard_error", r.n_var_standard_error},
        {"target",
         {{"mean", complex_json(r.target.mean)},
          {"n_var", r.target.n_var},
          {"clt_scalar", r.target.clt_scalar},
          {"unbiased", r.target.unbiased},
          {"isotropic", r.target.isotropic}}},
        {"clt", clt},
        {"resampled", r.resampled},
        {"verdicts",
         {{"n_var", optional_bool(r.verdicts.n_var)},
          {"mean", optional_bool(r.verdicts.mean)},
          {"clt", optional_bool(r.verdicts.clt)}}},
        {"passed", r.verdicts.passed()}});
  }
  return Json{{"kind", "experiment"},
              {"seed", cfg.seed},
              {"source", source_json(cfg.source)},
              {"estimator", {{"name", to_string(cfg.estimator.kind)}, {"alpha", complex_json(cfg.estimator.alpha)}}},
              {"replications", cfg.replications},
              {"n_var_tolerance", cfg.n_var_tolerance},
              {"mean_standard_errors", cfg.mean_standard_errors},
              {"check_clt", cfg.check_clt},
              {"results", results},
              {"passed", report.passed()}};
}

Json to_json(const HarmonicCheckReport& r) {
  return Json{{"kind", "harmonic-check"},
              {"seed", r.seed},
              {"n", r.n},
              {"replications", r.replications},
              {"reference_sigma", r.reference_sigma},
              {"ks_statistic", r.ks_statistic},
              {"critical_value", r.critical_value},
              {"p_value", r.p_value},
              {"below_critical", r.below_critical},
              {"resampled", r.resampled},
              {"passed", r.below_critical}};
}

Json to_json(const VarianceTable& table) {
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    rows.push_back(Json{{"estimator", to_string(row.estimator)},
                        {"alpha", complex_json(row.limits.alpha)},
                        {"n_var_limit", row.limits.n_var_limit},
                        {"cramer_rao", row.cramer_rao},
                        {"efficiency", row.efficiency},
                        {"theta_alpha", row.limits.theta_alpha},
                        {"clt_scalar", row.limits.clt_scalar},
                        {"quadrature_error", row.limits.quadrature_error}});
  }
  return Json{{"kind", "variance-table"}, {"mu", table.mu}, {"sigma", table.sigma}, {"rows", rows}};
}

std::string to_csv(const EstimateRecord& r) {
  CsvWriter w{"estimator", "alpha_re", "alpha_im", "n", "mu_hat", "sigma_hat",
              "degenerate_imaginary", "unbiased_regime"};
  w.text(to_string(r.estimator)).num(r.alpha.real()).num(r.alpha.imag()).count(r.n);
  w.num(r.estimate.real()).num(r.estimate.imag()).flag(r.degenerate_imaginary).flag(r.unbiased_regime);
  w.end_row();
  return w.str();
}

std::string to_csv(const ExperimentReport& report) {
  CsvWriter w{"seed", "source", "mu", "sigma", "lo", "hi", "estimator", "alpha_re", "alpha_im",
              "replications", "n", "mean_re", "mean_im", "mean_se_re", "mean_se_im", "cov_re_re",
              "cov_re_im", "cov_im_im", "n_var", "n_var_se", "target_mean_re", "target_mean_im",
              "target_n_var", "target_clt_scalar", "clt_offdiag_correlation", "clt_re_variance_ratio",
              "clt_im_variance_ratio", "clt_re_qq_correlation", "clt_im_qq_correlation", "resampled",
              "verdict_n_var", "verdict_mean", "verdict_clt", "passed"};
  const auto& cfg = report.config;
  for (const auto& r : report.results) {
    w.count(cfg.seed);
    if (const auto* c = std::get_if<CauchyParams>(&cfg.source)) {
      w.text("cauchy").num(c->mu()).num(c->sigma()).blank().blank();
    } else {
      const auto& u = std::get<UniformSource>(cfg.source);
      w.text("uniform").blank().blank().num(u.lo).num(u.hi);
    }
    w.text(to_string(cfg.estimator.kind)).num(cfg.estimator.alpha.real()).num(cfg.estimator.alpha.imag());
    w.count(cfg.replications).count(r.n);
    w.num(r.mean.real()).num(r.mean.imag());
    w.num(r.mean_standard_error.real()).num(r.mean_standard_error.imag());
    w.num(r.covariance.re_re).num(r.covariance.re_im).num(r.covariance.im_im);
    w.num(r.n_var).num(r.n_var_standard_error);
    w.num(r.target.mean.real()).num(r.target.mean.imag()).num(r.target.n_var).num(r.target.clt_scalar);
    if (r.clt) {
      w.num(r.clt->offdiag_correlation).num(r.clt->re_variance_ratio).num(r.clt->im_variance_ratio);
      w.num(r.clt->re_qq_correlation).num(r.clt->im_qq_correlation);
    } else {
      w.blank().blank().blank().blank().blank();
    }
    w.count(r.resampled);
    w.flag(r.verdicts.n_var).flag(r.verdicts.mean).flag(r.verdicts.clt).flag(r.verdicts.passed());
    w.end_row();
  }
  return w.str();
}

std::string to_csv(const HarmonicCheckReport& r) {
  CsvWriter w{"seed", "n", "replications", "reference_sigma", "ks_statistic", "critical_value",
              "p_value", "below_critical", "resampled"};
  w.count(r.seed).count(r.n).count(r.replications).num(r.reference_sigma).num(r.ks_statistic);
  w.num(r.critical_value).num(r.p_value).flag(r.below_critical).count(r.resampled);
  w.end_row();
  return w.str();
}

std::string to_csv(const VarianceTable& table) {
  CsvWriter w{"mu", "sigma", "estimator", "alpha_re", "alpha_im", "n_var_limit", "cramer_rao",
              "efficiency", "theta_alpha", "clt_scalar", "quadrature_error"};
  for (const auto& row : table.rows) {
    w.num(table.mu).num(table.sigma).text(to_string(row.estimator));
    w.num(row.limits.alpha.real()).num(row.limits.alpha.imag());
    w.num(row.limits.n_var_limit).num(row.cramer_rao).num(row.efficiency);
    w.num(row.limits.theta_alpha).num(row.limits.clt_scalar).num(row.limits.quadrature_error);
    w.end_row();
  }
  return w.str();
}

}  // namespace qamc::cli
