#include "polars/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "polars/error.hpp"
#include "polars/kernels.hpp"

namespace polars {

SampleVector::SampleVector(std::string name, std::vector<double> values)
    : name_(std::move(name)), values_(std::move(values)) {
  if (values_.size() < 2) {
    throw Error(ErrorCode::kInvalidSample,
                "series '" + name_ + "' needs at least 2 values");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::kInvalidSample, "series '" + name_ +
                                                 "' has a non-finite value at " +
                                                 std::to_string(i));
    }
  }
}

std::size_t ceil_sqrt(std::size_t n) {
  auto k = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (k * k < n) ++k;
  while (k > 0 && (k - 1) * (k - 1) >= n) --k;
  return k;
}

std::size_t BinningConfig::resolve(std::size_t n) const {
  if (!(log_base > 1.0) || !std::isfinite(log_base)) {
    throw Error(ErrorCode::kInvalidConfig, "log base must be a finite value > 1");
  }
  if (bin_count) {
    if (*bin_count == 0) {
      throw Error(ErrorCode::kInvalidConfig, "bin count must be positive");
    }
    return *bin_count;
  }
  if (n == 0) throw Error(ErrorCode::kEmptyInput, "cannot bin an empty series");
  return ceil_sqrt(n);
}

namespace {

void check_lengths(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::kEmptyInput, "series is empty");
  }
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "series lengths differ: " + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
  }
}

}  // namespace

TaylorMetrics taylor_metrics(std::span<const double> reference,
                             std::span<const double> model) {
  check_lengths(reference, model);
  const std::size_t n = reference.size();

  std::vector<std::pair<double, double>> pairs(n);
  for (std::size_t i = 0; i < n; ++i) pairs[i] = {reference[i], model[i]};
  std::sort(pairs.begin(), pairs.end());

  double sum_x = 0.0;
  double sum_y = 0.0;
  for (const auto& [x, y] : pairs) {
    sum_x += x;
    sum_y += y;
  }
  const double nd = static_cast<double>(n);
  const double mean_x = sum_x / nd;
  const double mean_y = sum_y / nd;

  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  double sdd = 0.0;
  for (const auto& [x, y] : pairs) {
    const double dx = x - mean_x;
    const double dy = y - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
    sdd += (dx - dy) * (dx - dy);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::kZeroVariance,
                "correlation undefined: a series is constant");
  }

  TaylorMetrics m;
  m.sigma_ref = std::sqrt(sxx / nd);
  m.sigma_model = std::sqrt(syy / nd);
  m.correlation = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  m.crmse = std::sqrt(sdd / nd);
  return m;
}

TaylorMetrics taylor_metrics(const SampleVector& reference,
                             const SampleVector& model) {
  return taylor_metrics(reference.values(), model.values());
}

InfoMetrics info_from_entropies(double h_ref, double h_model, double mi) {
  InfoMetrics m;
  m.h_ref = h_ref;
  m.h_model = h_model;
  m.mi = std::clamp(mi, 0.0, std::min(h_ref, h_model));
  m.vi = std::max(0.0, h_ref + h_model - 2.0 * m.mi);
  m.rvi = std::sqrt(m.vi);
  const double denom = h_ref * h_model;
  if (denom > 0.0) {
    m.smi = std::clamp(m.mi * (h_ref + h_model - m.mi) / denom, 0.0, 1.0);
    m.nmi = std::clamp(m.mi / std::sqrt(denom), 0.0, 1.0);
  } else {
    m.degenerate = true;
  }
  return m;
}

InfoMetrics info_metrics(std::span<const double> reference,
                         std::span<const double> model,
                         const BinningConfig& cfg) {
  check_lengths(reference, model);
  const std::size_t bins = cfg.resolve(reference.size());
  const auto joint = kernels::joint_histogram(reference, model, bins);

  const double h_joint =
      kernels::entropy_from_counts(joint.counts, joint.total, cfg.log_base);
  const double h_ref = kernels::entropy_from_counts(joint.ref_marginal(),
                                                    joint.total, cfg.log_base);
  const double h_model = kernels::entropy_from_counts(
      joint.model_marginal(), joint.total, cfg.log_base);
  return info_from_entropies(h_ref, h_model, h_ref + h_model - h_joint);
}

InfoMetrics info_metrics(const SampleVector& reference,
                         const SampleVector& model, const BinningConfig& cfg) {
  return info_metrics(reference.values(), model.values(), cfg);
}

}  // namespace polars
