#pragma once

// Data-parallel kernels behind metrics-core. Every parallel kernel has a
// serial twin with the same signature; the two must agree bit-for-bit and the
// serial one is what the tests treat as the reference.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "polars/metrics.hpp"

namespace polars::kernels {

// Row-major joint counts: cell (i, j) = counts[i * bins_model + j], where i is
// the reference bin and j the model bin.
struct JointHistogram {
  std::size_t bins_ref = 0;
  std::size_t bins_model = 0;
  std::size_t total = 0;
  std::vector<std::uint64_t> counts;

  std::uint64_t at(std::size_t i, std::size_t j) const {
    return counts[i * bins_model + j];
  }
  std::vector<std::uint64_t> ref_marginal() const;
  std::vector<std::uint64_t> model_marginal() const;

  friend bool operator==(const JointHistogram&, const JointHistogram&) = default;
};

// Equal-width bin index of every value; edges span [min, max] of the series.
// A constant series lands entirely in bin 0. The maximum lands in the last bin.
std::vector<std::uint32_t> bin_indices(std::span<const double> values,
                                       std::size_t bins);

JointHistogram joint_histogram(std::span<const double> reference,
                               std::span<const double> model, std::size_t bins);
JointHistogram joint_histogram_serial(std::span<const double> reference,
                                      std::span<const double> model,
                                      std::size_t bins);

// Shannon entropy of a count vector, zero cells skipped, in `log_base` units.
double entropy_from_counts(std::span<const std::uint64_t> counts,
                           std::size_t total, double log_base);

// One metric set per model against the shared reference. Parallel over models.
std::vector<TaylorMetrics> taylor_batch(std::span<const double> reference,
                                        std::span<const SampleVector> models);
std::vector<TaylorMetrics> taylor_batch_serial(
    std::span<const double> reference, std::span<const SampleVector> models);

std::vector<InfoMetrics> info_batch(std::span<const double> reference,
                                    std::span<const SampleVector> models,
                                    const BinningConfig& cfg);
std::vector<InfoMetrics> info_batch_serial(std::span<const double> reference,
                                           std::span<const SampleVector> models,
                                           const BinningConfig& cfg);

}  // namespace polars::kernels
