#include <omp.h>

#include <algorithm>

#include "qamc/kernels.hpp"
#include "replication.hpp"

namespace qamc::kernels {
namespace {

constexpr std::size_t kScanBlock = 128;

int clamp_workers(int workers) { return std::max(1, workers); }

}  // namespace

std::uint64_t replication_key(std::uint64_t seed, std::size_t n, std::size_t rep,
                              unsigned attempt) {
  return stream_key({seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(rep),
                     static_cast<std::uint64_t>(attempt)});
}

BatchResult replicate(const ReplicationBatch& batch, int workers) {
  BatchResult result;
  result.estimates.resize(batch.replications);
  const auto count = static_cast<std::int64_t>(batch.replications);
  std::size_t resampled = 0;
  std::size_t exhausted = 0;

#pragma omp parallel num_threads(clamp_workers(workers)) reduction(+ : resampled, exhausted)
  {
    std::vector<double> buffer(batch.n);
#pragma omp for schedule(static)
    for (std::int64_t rep = 0; rep < count; ++rep) {
      const auto replica = detail::run_replication(batch, static_cast<std::size_t>(rep), buffer);
      result.estimates[static_cast<std::size_t>(rep)] = replica.estimate;
      if (replica.failed_attempts > 0) ++resampled;
      if (!replica.ok) ++exhausted;
    }
  }

  result.resampled = resampled;
  result.exhausted = exhausted;
  return result;
}

std::vector<Moments2> mobius_alpha_moments(const SampleSource& source,
                                           std::span<const Complex> alphas, std::size_t n,
                                           std::size_t replications, std::uint64_t seed,
                                           int workers) {
  for (Complex a : alphas) validate(EstimatorSpec{EstimatorKind::Mobius, a});

  // Per-block partial moments merged afterwards in block order, so the result
  // is independent of how blocks are spread over threads.
  const std::size_t blocks = (replications + kScanBlock - 1) / kScanBlock;
  std::vector<std::vector<Moments2>> partial(blocks, std::vector<Moments2>(alphas.size()));
  const auto block_count = static_cast<std::int64_t>(blocks);

#pragma omp parallel num_threads(clamp_workers(workers))
  {
    std::vector<double> buffer(n);
#pragma omp for schedule(static)
    for (std::int64_t b = 0; b < block_count; ++b) {
      auto& local = partial[static_cast<std::size_t>(b)];
      const std::size_t first = static_cast<std::size_t>(b) * kScanBlock;
      const std::size_t last = std::min(replications, first + kScanBlock);
      for (std::size_t rep = first; rep < last; ++rep) {
        detail::fill_samples(source, replication_key(seed, n, rep, 0), buffer);
        for (std::size_t k = 0; k < alphas.size(); ++k) {
          local[k].add(mobius_estimate(buffer, alphas[k]).estimate);
        }
      }
    }
  }

  std::vector<Moments2> merged(alphas.size());
  for (const auto& block : partial) {
    for (std::size_t k = 0; k < alphas.size(); ++k) merged[k].merge(block[k]);
  }
  return merged;
}

}  // namespace qamc::kernels
