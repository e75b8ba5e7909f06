#pragma once

#include <cstddef>
#include <vector>

namespace qamc {

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|. Inputs are taken
/// by value and sorted.
double ks_two_sample_statistic(std::vector<double> a, std::vector<double> b);

/// Asymptotic critical value c(level) sqrt((m + n) / (m n)) with
/// c(level) = sqrt(-ln(level / 2) / 2); c(0.01) is about 1.628.
double ks_critical_value(std::size_t m, std::size_t n, double level);

/// Asymptotic p-value from the Kolmogorov distribution,
/// Q(t) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 t^2), t = D sqrt(m n / (m + n)).
double ks_p_value(double statistic, std::size_t m, std::size_t n);

}  // namespace qamc
