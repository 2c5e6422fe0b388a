#pragma once

#include <string>
#include <string_view>

#include "polars/metrics.hpp"

namespace polars {

enum class DiagramKind { kTaylor, kSmi, kNmi };

std::string_view kind_name(DiagramKind kind);  // "taylor" | "smi" | "nmi"
DiagramKind parse_kind(std::string_view name);  // throws kInvalidConfig

// A model (or the reference) positioned in diagram space. Angles are radians.
struct DiagramPoint {
  std::string model_id;
  double r = 0.0;
  double theta = 0.0;
  double x = 0.0;
  double y = 0.0;
  MetricTriple metrics;
  bool degenerate = false;

  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
};

// Every diagram embeds three values a, b, c with c^2 = a^2 + b^2 - 2ab cos(theta):
//   TAYLOR  r = sigma_model,   cos = correlation,  c = CRMSE
//   SMI     r = H_model,       cos = 2 SMI - 1,    c = VI
//   NMI     r = sqrt(H_model), cos = NMI,          c = RVI
// A zero-entropy pair (degenerate InfoMetrics) is placed at theta = pi/2.
DiagramPoint place(DiagramKind kind, std::string model_id,
                   const MetricTriple& metrics);

// The reference sits on the radial axis at theta = 0.
DiagramPoint reference_point(DiagramKind kind, std::string reference_id,
                             const MetricTriple& metrics);

double reference_radius(DiagramKind kind, const MetricTriple& metrics);
double model_radius(DiagramKind kind, const MetricTriple& metrics);
// The cosine term: R, 2 SMI - 1 or NMI.
double similarity(DiagramKind kind, const MetricTriple& metrics);
// CRMSE, VI or RVI: what the distance to the reference point encodes.
double distance_measure(DiagramKind kind, const MetricTriple& metrics);

// Angular extent drawn for a diagram: pi/2 (first quadrant) or pi (half disc).
// Taylor diagrams widen to the half disc when any correlation is negative.
double angular_extent(DiagramKind kind, bool any_negative_similarity);

}  // namespace polars
