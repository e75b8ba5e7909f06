#include "qamc/ks.hpp"

#include <algorithm>
#include <cmath>

#include "qamc/errors.hpp"

namespace qamc {

double ks_two_sample_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("KS statistic needs two non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double m = static_cast<double>(a.size());
  const double n = static_cast<double>(b.size());

  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / m - static_cast<double>(j) / n));
  }
  return d;
}

double ks_critical_value(std::size_t m, std::size_t n, double level) {
  if (m == 0 || n == 0) throw DomainError("KS critical value needs non-empty samples");
  if (!(level > 0.0 && level < 1.0)) throw DomainError("KS level must lie in (0, 1)");
  const double c = std::sqrt(-std::log(level / 2.0) / 2.0);
  const double dm = static_cast<double>(m);
  const double dn = static_cast<double>(n);
  return c * std::sqrt((dm + dn) / (dm * dn));
}

double ks_p_value(double statistic, std::size_t m, std::size_t n) {
  const double dm = static_cast<double>(m);
  const double dn = static_cast<double>(n);
  const double t = statistic * std::sqrt(dm * dn / (dm + dn));
  if (t < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace qamc
