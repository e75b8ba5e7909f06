#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "qamc/errors.hpp"
#include "qamc/kernels.hpp"

namespace qamc::kernels::detail {

inline void fill_samples(const SampleSource& source, std::uint64_t key,
                         std::vector<double>& buffer) {
  Xoshiro256 rng(key);
  for (auto& x : buffer) x = draw(source, rng);
}

struct Replica {
  Complex estimate{std::numeric_limits<double>::quiet_NaN(),
                   std::numeric_limits<double>::quiet_NaN()};
  unsigned failed_attempts = 0;
  bool ok = false;
};

// Domain errors (a sample on a singularity) are probability-zero events; the
// replication is redrawn from the next sub-stream.
inline Replica run_replication(const ReplicationBatch& batch, std::size_t rep,
                               std::vector<double>& buffer) {
  Replica out;
  for (unsigned attempt = 0; attempt < kMaxAttempts; ++attempt) {
    fill_samples(batch.source, replication_key(batch.seed, batch.n, rep, attempt), buffer);
    try {
      out.estimate = estimate(batch.estimator, buffer).estimate;
      out.ok = std::isfinite(out.estimate.real()) && std::isfinite(out.estimate.imag());
    } catch (const DomainError&) {
      out.ok = false;
    } catch (const NumericalError&) {
      out.ok = false;
    }
    if (out.ok) return out;
    ++out.failed_attempts;
  }
  out.estimate = {std::numeric_limits<double>::quiet_NaN(),
                  std::numeric_limits<double>::quiet_NaN()};
  return out;
}

}  // namespace qamc::kernels::detail
