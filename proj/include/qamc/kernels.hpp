#pragma once

// Replication kernels behind the Monte Carlo harness. Each kernel comes in an
// OpenMP version and a plain serial reference; both draw replication r of a
// batch from the stream keyed by (seed, n, r, attempt), so results do not
// depend on the thread count and the two versions are comparable.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qamc/estimators.hpp"
#include "qamc/moments.hpp"
#include "qamc/sources.hpp"

namespace qamc::kernels {

/// Resampling attempts per replication before the batch is declared failed.
inline constexpr unsigned kMaxAttempts = 16;

struct ReplicationBatch {
  SampleSource source;
  EstimatorSpec estimator;
  std::size_t n = 1;
  std::size_t replications = 0;
  std::uint64_t seed = 0;
};

struct BatchResult {
  /// estimates[r] belongs to replication r.
  std::vector<Complex> estimates;
  /// Replications that needed at least one fresh sub-stream.
  std::size_t resampled = 0;
  /// Replications that failed on every attempt (their estimate is NaN).
  std::size_t exhausted = 0;
};

/// Stream key of replication `rep`, attempt `attempt`.
std::uint64_t replication_key(std::uint64_t seed, std::size_t n, std::size_t rep,
                              unsigned attempt);

BatchResult replicate(const ReplicationBatch& batch, int workers);
BatchResult replicate_serial(const ReplicationBatch& batch);

/// Mobius estimates for every shift in `alphas` on the same sample sets
/// (common random numbers): one Moments2 per shift.
std::vector<Moments2> mobius_alpha_moments(const SampleSource& source,
                                           std::span<const Complex> alphas, std::size_t n,
                                           std::size_t replications, std::uint64_t seed,
                                           int workers);
std::vector<Moments2> mobius_alpha_moments_serial(const SampleSource& source,
                                                  std::span<const Complex> alphas,
                                                  std::size_t n, std::size_t replications,
                                                  std::uint64_t seed);

}  // namespace qamc::kernels
