#include "qamc/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "qamc/branch.hpp"
#include "qamc/compensated_sum.hpp"
#include "qamc/errors.hpp"

namespace qamc {
namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;

// Bisections allowed across all pieces before the tolerance is declared
// unreachable.
constexpr std::size_t kMaxSubdivisions = 4000;

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;

  bool operator<(const Panel& other) const { return error < other.error; }
};

template <typename F>
Panel evaluate(const F& f, double a, double b) {
  Panel p{a, b, 0.0, 0.0};
  p.value = Rule::integrate(f, a, b, 0, 0.0, &p.error);
  // Boost reports the unrefined error on the reference interval [-1, 1].
  p.error *= 0.5 * (b - a);
  return p;
}

// Globally adaptive: the panel with the largest error estimate is bisected
// until the summed estimate meets the tolerance.
template <typename F>
QuadratureResult integrate_pieces(const F& f, std::vector<double> cuts, double tolerance) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel> panels;
  std::vector<Panel> settled;
  double total_error = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Panel p = evaluate(f, cuts[k], cuts[k + 1]);
    total_error += p.error;
    panels.push(p);
  }

  for (std::size_t split = 0; split < kMaxSubdivisions && total_error > tolerance && !panels.empty();
       ++split) {
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      settled.push_back(worst);
      continue;
    }
    const Panel left = evaluate(f, worst.a, mid);
    const Panel right = evaluate(f, mid, worst.b);
    total_error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }

  QuadratureResult total;
  for (; !panels.empty(); panels.pop()) settled.push_back(panels.top());
  std::sort(settled.begin(), settled.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  CompensatedSum value;
  CompensatedSum error;
  for (const Panel& p : settled) {
    value.add(p.value);
    error.add(p.error);
  }
  total.value = value.value();
  total.error_estimate = error.value();

  if (!std::isfinite(total.value) || !std::isfinite(total.error_estimate)) {
    throw NumericalError("quadrature produced a non-finite value", total.value,
                         total.error_estimate);
  }
  if (total.error_estimate > tolerance) {
    std::ostringstream msg;
    msg << "quadrature refinement budget exhausted: error estimate " << total.error_estimate
        << " exceeds tolerance " << tolerance;
    throw NumericalError(msg.str(), total.value, total.error_estimate);
  }
  return total;
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

QuadratureResult integrate_real_line(const std::function<double(double)>& integrand,
                                     double tolerance, double center, double scale,
                                     std::span<const double> breakpoints) {
  require_positive(tolerance, "quadrature tolerance");
  require_positive(scale, "quadrature scale");

  std::vector<double> cuts{-kHalfPi, kHalfPi};
  for (double x : breakpoints) {
    if (!std::isfinite(x)) continue;
    cuts.push_back(std::atan((x - center) / scale));
  }

  auto transformed = [&](double t) {
    const double c = std::cos(t);
    const double jacobian = scale / (c * c);
    return integrand(center + scale * std::tan(t)) * jacobian;
  };
  return integrate_pieces(transformed, std::move(cuts), tolerance);
}

QuadratureResult integrate_interval(const std::function<double(double)>& integrand,
                                    double lower, double upper, double tolerance,
                                    std::span<const double> breakpoints) {
  require_positive(tolerance, "quadrature tolerance");
  if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
    throw DomainError("integration interval must be finite with lower < upper");
  }
  std::vector<double> cuts{lower, upper};
  for (double x : breakpoints) {
    if (x > lower && x < upper) cuts.push_back(x);
  }
  return integrate_pieces(integrand, std::move(cuts), tolerance);
}

}  // namespace qamc
