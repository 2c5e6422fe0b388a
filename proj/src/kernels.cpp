#include "polars/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "polars/error.hpp"

namespace polars::kernels {

namespace {

void check_pair(std::span<const double> reference, std::span<const double> model,
                std::size_t bins) {
  if (reference.empty() || model.empty()) {
    throw Error(ErrorCode::kEmptyInput, "histogram input is empty");
  }
  if (reference.size() != model.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "series lengths differ: " + std::to_string(reference.size()) +
                    " vs " + std::to_string(model.size()));
  }
  if (bins == 0) {
    throw Error(ErrorCode::kInvalidConfig, "bin count must be positive");
  }
}

struct Range {
  double lo;
  double width;
};

Range value_range(std::span<const double> values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return {*lo, *hi - *lo};
}

std::uint32_t bin_of(double v, Range range, std::size_t bins) {
  if (!(range.width > 0.0)) return 0;
  const double t = (v - range.lo) / range.width * static_cast<double>(bins);
  const auto idx = static_cast<std::size_t>(std::max(0.0, t));
  return static_cast<std::uint32_t>(std::min(idx, bins - 1));
}

// Runs body(i) for every model and rethrows the first failure by index, so the
// error reported is the same one the serial loop would raise.
template <typename Body>
void for_each_model_parallel(std::size_t count, Body body) {
  std::vector<std::exception_ptr> failures(count);
  const auto n = static_cast<long>(count);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      failures[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
}

}  // namespace

std::vector<std::uint64_t> JointHistogram::ref_marginal() const {
  std::vector<std::uint64_t> out(bins_ref, 0);
  for (std::size_t i = 0; i < bins_ref; ++i) {
    for (std::size_t j = 0; j < bins_model; ++j) out[i] += at(i, j);
  }
  return out;
}

std::vector<std::uint64_t> JointHistogram::model_marginal() const {
  std::vector<std::uint64_t> out(bins_model, 0);
  for (std::size_t i = 0; i < bins_ref; ++i) {
    for (std::size_t j = 0; j < bins_model; ++j) out[j] += at(i, j);
  }
  return out;
}

std::vector<std::uint32_t> bin_indices(std::span<const double> values,
                                       std::size_t bins) {
  if (values.empty()) return {};
  const Range range = value_range(values);
  std::vector<std::uint32_t> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = bin_of(values[i], range, bins);
  }
  return out;
}

JointHistogram joint_histogram_serial(std::span<const double> reference,
                                      std::span<const double> model,
                                      std::size_t bins) {
  check_pair(reference, model, bins);
  JointHistogram h{bins, bins, reference.size(),
                   std::vector<std::uint64_t>(bins * bins, 0)};
  const auto ref_bins = bin_indices(reference, bins);
  const auto model_bins = bin_indices(model, bins);
  for (std::size_t k = 0; k < ref_bins.size(); ++k) {
    ++h.counts[ref_bins[k] * bins + model_bins[k]];
  }
  return h;
}

JointHistogram joint_histogram(std::span<const double> reference,
                               std::span<const double> model, std::size_t bins) {
  check_pair(reference, model, bins);
  JointHistogram h{bins, bins, reference.size(),
                   std::vector<std::uint64_t>(bins * bins, 0)};
  const Range ref_range = value_range(reference);
  const Range model_range = value_range(model);
  const auto n = static_cast<long>(reference.size());

#pragma omp parallel
  {
    std::vector<std::uint64_t> local(bins * bins, 0);
#pragma omp for schedule(static) nowait
    for (long k = 0; k < n; ++k) {
      const auto i = bin_of(reference[static_cast<std::size_t>(k)], ref_range, bins);
      const auto j = bin_of(model[static_cast<std::size_t>(k)], model_range, bins);
      ++local[i * bins + j];
    }
    // Integer counts: merge order cannot change the result.
#pragma omp critical(polars_joint_histogram_merge)
    for (std::size_t c = 0; c < local.size(); ++c) h.counts[c] += local[c];
  }
  return h;
}

double entropy_from_counts(std::span<const std::uint64_t> counts,
                           std::size_t total, double log_base) {
  if (total == 0) return 0.0;
  const double n = static_cast<double>(total);
  const bool base2 = log_base == 2.0;
  const double ln_base = std::log(log_base);
  double h = 0.0;
  for (const std::uint64_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * (base2 ? std::log2(p) : std::log(p) / ln_base);
  }
  // -p log p sums of a single full cell give -0.0.
  return h == 0.0 ? 0.0 : h;
}

std::vector<TaylorMetrics> taylor_batch_serial(
    std::span<const double> reference, std::span<const SampleVector> models) {
  std::vector<TaylorMetrics> out;
  out.reserve(models.size());
  for (const auto& m : models) out.push_back(taylor_metrics(reference, m.values()));
  return out;
}

std::vector<TaylorMetrics> taylor_batch(std::span<const double> reference,
                                        std::span<const SampleVector> models) {
  std::vector<TaylorMetrics> out(models.size());
  for_each_model_parallel(models.size(), [&](std::size_t i) {
    out[i] = taylor_metrics(reference, models[i].values());
  });
  return out;
}

std::vector<InfoMetrics> info_batch_serial(std::span<const double> reference,
                                           std::span<const SampleVector> models,
                                           const BinningConfig& cfg) {
  std::vector<InfoMetrics> out;
  out.reserve(models.size());
  for (const auto& m : models) {
    out.push_back(info_metrics(reference, m.values(), cfg));
  }
  return out;
}

std::vector<InfoMetrics> info_batch(std::span<const double> reference,
                                    std::span<const SampleVector> models,
                                    const BinningConfig& cfg) {
  std::vector<InfoMetrics> out(models.size());
  for_each_model_parallel(models.size(), [&](std::size_t i) {
    out[i] = info_metrics(reference, models[i].values(), cfg);
  });
  return out;
}

}  // namespace polars::kernels
