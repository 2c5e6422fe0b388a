#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace polars {

// One named numeric series over the shared observations of a dataset.
// Construction validates: length >= 2 and every value finite.
class SampleVector {
 public:
  SampleVector(std::string name, std::vector<double> values);

  const std::string& name() const noexcept { return name_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  friend bool operator==(const SampleVector&, const SampleVector&) = default;

 private:
  std::string name_;
  std::vector<double> values_;
};

struct TaylorMetrics {
  double sigma_ref = 0.0;
  double sigma_model = 0.0;
  double correlation = 0.0;
  double crmse = 0.0;

  friend bool operator==(const TaylorMetrics&, const TaylorMetrics&) = default;
};

// Entropies and information quantities in units of log_base (bits by default);
// rvi is the square root of vi. `degenerate` marks h_ref * h_model == 0, where
// smi and nmi are pinned to 0.
struct InfoMetrics {
  double h_ref = 0.0;
  double h_model = 0.0;
  double mi = 0.0;
  double smi = 0.0;
  double nmi = 0.0;
  double vi = 0.0;
  double rvi = 0.0;
  bool degenerate = false;

  friend bool operator==(const InfoMetrics&, const InfoMetrics&) = default;
};

using MetricTriple = std::variant<TaylorMetrics, InfoMetrics>;

struct BinningConfig {
  std::optional<std::size_t> bin_count;  // nullopt = AUTO, ceil(sqrt(n))
  double log_base = 2.0;

  std::size_t resolve(std::size_t n) const;
};

// Smallest k with k * k >= n.
std::size_t ceil_sqrt(std::size_t n);

// Population standard deviations, Pearson correlation (clamped to [-1, 1]) and
// the centered RMSE computed directly from the mean-removed series.
// Observations are processed in a canonical (sorted) order, so the result is
// bit-identical under any permutation of the observation pairs.
TaylorMetrics taylor_metrics(std::span<const double> reference,
                             std::span<const double> model);
TaylorMetrics taylor_metrics(const SampleVector& reference,
                             const SampleVector& model);

// Histogram estimator: equal-width joint histogram with per-variable edges on
// [min, max]; marginal entropies come from the joint's marginals.
InfoMetrics info_metrics(std::span<const double> reference,
                         std::span<const double> model,
                         const BinningConfig& cfg = {});
InfoMetrics info_metrics(const SampleVector& reference,
                         const SampleVector& model,
                         const BinningConfig& cfg = {});

// Derives smi, nmi, vi, rvi from the three entropy terms.
InfoMetrics info_from_entropies(double h_ref, double h_model, double mi);

}  // namespace polars
