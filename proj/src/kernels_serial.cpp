// Serial reference versions of the replication kernels. Kept deliberately
// plain: one loop, one accumulator, no blocking.

#include "qamc/kernels.hpp"
#include "replication.hpp"

namespace qamc::kernels {

BatchResult replicate_serial(const ReplicationBatch& batch) {
  BatchResult result;
  result.estimates.reserve(batch.replications);
  std::vector<double> buffer(batch.n);
  for (std::size_t rep = 0; rep < batch.replications; ++rep) {
    const auto replica = detail::run_replication(batch, rep, buffer);
    result.estimates.push_back(replica.estimate);
    if (replica.failed_attempts > 0) ++result.resampled;
    if (!replica.ok) ++result.exhausted;
  }
  return result;
}

std::vector<Moments2> mobius_alpha_moments_serial(const SampleSource& source,
                                                  std::span<const Complex> alphas,
                                                  std::size_t n, std::size_t replications,
                                                  std::uint64_t seed) {
  std::vector<Moments2> out(alphas.size());
  std::vector<double> buffer(n);
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    for (std::size_t rep = 0; rep < replications; ++rep) {
      detail::fill_samples(source, replication_key(seed, n, rep, 0), buffer);
      out[k].add(mobius_estimate(buffer, alphas[k]).estimate);
    }
  }
  return out;
}

}  // namespace qamc::kernels
