#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace qamc {

/// An argument lies outside the domain of the requested operation
/// (zero passed to the logarithm, a sample on a generator pole, an
/// illegal parameter).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what,
                       std::optional<std::size_t> sample_index = std::nullopt)
      : std::domain_error(what), sample_index_(sample_index) {}

  std::optional<std::size_t> sample_index() const { return sample_index_; }

 private:
  std::optional<std::size_t> sample_index_;
};

/// A numerical procedure could not reach its target accuracy, or produced a
/// non-finite value. Carries the best value and the achieved error estimate
/// when those are meaningful.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double best_value = 0.0,
                          double error_estimate = 0.0)
      : std::runtime_error(what), best_value_(best_value), error_estimate_(error_estimate) {}

  double best_value() const { return best_value_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double best_value_;
  double error_estimate_;
};

/// Invalid experiment or command configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qamc
