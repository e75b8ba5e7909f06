#pragma once

#include <string>
#include <variant>

#include "qamc/cauchy.hpp"
#include "qamc/rng.hpp"

namespace qamc {

/// Uniform distribution on (lo, hi).
struct UniformSource {
  double lo = 0.0;
  double hi = 1.0;

  friend bool operator==(const UniformSource&, const UniformSource&) = default;
};

/// Distribution the Monte Carlo harness draws samples from.
using SampleSource = std::variant<CauchyParams, UniformSource>;

/// Throws ConfigError for a Uniform source without finite lo < hi.
void validate(const SampleSource& source);

inline double draw(const SampleSource& source, Xoshiro256& rng) {
  if (const auto* cauchy = std::get_if<CauchyParams>(&source)) return draw(*cauchy, rng);
  const auto& u = std::get<UniformSource>(source);
  return u.lo + (u.hi - u.lo) * rng.uniform_open();
}

std::string describe(const SampleSource& source);

}  // namespace qamc
