#include "polars/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "polars/error.hpp"
#include "polars/polar.hpp"

namespace polars {

namespace {

const TaylorMetrics& as_taylor(const MetricTriple& metrics) {
  const auto* t = std::get_if<TaylorMetrics>(&metrics);
  if (t == nullptr) {
    throw Error(ErrorCode::kFlavorMismatch,
                "Taylor diagram needs Taylor metrics, got information metrics");
  }
  return *t;
}

const InfoMetrics& as_info(const MetricTriple& metrics) {
  const auto* m = std::get_if<InfoMetrics>(&metrics);
  if (m == nullptr) {
    throw Error(ErrorCode::kFlavorMismatch,
                "mutual information diagram needs information metrics, got "
                "Taylor metrics");
  }
  return *m;
}

DiagramPoint make_point(std::string id, double r, double theta,
                        const MetricTriple& metrics, bool degenerate) {
  const Cartesian c = cartesian_from_polar(r, theta);
  // sin(pi) is a tiny positive number; pin the axis exactly.
  const double y = c.y < 0.0 ? 0.0 : c.y;
  return {std::move(id), r, theta, c.x, y, metrics, degenerate};
}

}  // namespace

std::string_view kind_name(DiagramKind kind) {
  switch (kind) {
    case DiagramKind::kTaylor: return "taylor";
    case DiagramKind::kSmi: return "smi";
    case DiagramKind::kNmi: return "nmi";
  }
  return "taylor";
}

DiagramKind parse_kind(std::string_view name) {
  if (name == "taylor") return DiagramKind::kTaylor;
  if (name == "smi") return DiagramKind::kSmi;
  if (name == "nmi") return DiagramKind::kNmi;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown diagram kind '" + std::string(name) +
                  "' (expected taylor, smi or nmi)");
}

double reference_radius(DiagramKind kind, const MetricTriple& metrics) {
  switch (kind) {
    case DiagramKind::kTaylor: return as_taylor(metrics).sigma_ref;
    case DiagramKind::kSmi: return as_info(metrics).h_ref;
    case DiagramKind::kNmi: return std::sqrt(as_info(metrics).h_ref);
  }
  return 0.0;
}

double model_radius(DiagramKind kind, const MetricTriple& metrics) {
  switch (kind) {
    case DiagramKind::kTaylor: return as_taylor(metrics).sigma_model;
    case DiagramKind::kSmi: return as_info(metrics).h_model;
    case DiagramKind::kNmi: return std::sqrt(as_info(metrics).h_model);
  }
  return 0.0;
}

double similarity(DiagramKind kind, const MetricTriple& metrics) {
  switch (kind) {
    case DiagramKind::kTaylor: return as_taylor(metrics).correlation;
    case DiagramKind::kSmi: return 2.0 * as_info(metrics).smi - 1.0;
    case DiagramKind::kNmi: return as_info(metrics).nmi;
  }
  return 0.0;
}

double distance_measure(DiagramKind kind, const MetricTriple& metrics) {
  switch (kind) {
    case DiagramKind::kTaylor: return as_taylor(metrics).crmse;
    case DiagramKind::kSmi: return as_info(metrics).vi;
    case DiagramKind::kNmi: return as_info(metrics).rvi;
  }
  return 0.0;
}

DiagramPoint place(DiagramKind kind, std::string model_id,
                   const MetricTriple& metrics) {
  const double r = model_radius(kind, metrics);
  if (kind != DiagramKind::kTaylor && as_info(metrics).degenerate) {
    return make_point(std::move(model_id), r, std::numbers::pi / 2.0, metrics,
                      true);
  }
  const double cosine = std::clamp(similarity(kind, metrics), -1.0, 1.0);
  return make_point(std::move(model_id), r, std::acos(cosine), metrics, false);
}

DiagramPoint reference_point(DiagramKind kind, std::string reference_id,
                             const MetricTriple& metrics) {
  return make_point(std::move(reference_id), reference_radius(kind, metrics),
                    0.0, metrics, false);
}

double angular_extent(DiagramKind kind, bool any_negative_similarity) {
  switch (kind) {
    case DiagramKind::kTaylor:
      return any_negative_similarity ? std::numbers::pi : std::numbers::pi / 2.0;
    case DiagramKind::kSmi: return std::numbers::pi;
    case DiagramKind::kNmi: return std::numbers::pi / 2.0;
  }
  return std::numbers::pi;
}

}  // namespace polars
