#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "polars/geometry.hpp"

namespace polars {

// eps is in normalized diagram units (coordinates divided by the radial axis
// maximum). With min_pts == 1 every point is a core point.
struct ClusteringConfig {
  double eps = 0.1;
  std::size_t min_pts = 1;

  void validate() const;  // throws kInvalidConfig
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Mark sizing for cluster circles.
inline constexpr double kClusterMarkMinPx = 6.0;
inline constexpr double kClusterMarkMaxPx = 18.0;
inline constexpr int kClusterShadeMax = 220;

struct ClusterSummary {
  int cluster_id = 0;                    // 1..K, 1 = nearest the reference
  std::vector<std::string> member_ids;   // sorted
  DiagramPoint centroid;
  std::size_t count = 0;
  int shade = 0;                         // gray level, 0 = black
  double mark_radius_px = kClusterMarkMinPx;
  double distance = 0.0;                 // |centroid - reference|, diagram units

  friend bool operator==(const ClusterSummary&, const ClusterSummary&) = default;
};

// DBSCAN with Euclidean distance and closed eps balls (d <= eps). Returns one
// label per input point in 0..K-1. Noise points (possible only for
// min_pts > 1) get singleton labels. Labels are numbered by first appearance
// in (x, y) order, so the result does not depend on input order.
std::vector<int> dbscan(std::span<const Point2> points,
                        const ClusteringConfig& cfg);

double mark_radius_px(std::size_t count, std::size_t count_max);

// Builds one summary per label. Centroids average the members' metric fields
// and are placed again in polar space.
std::vector<ClusterSummary> summarize(DiagramKind kind,
                                      std::span<const DiagramPoint> points,
                                      std::span<const int> labels,
                                      const DiagramPoint& reference);

// Normalizes by radial_max, clusters and summarizes.
std::vector<ClusterSummary> aggregate(DiagramKind kind,
                                      std::span<const DiagramPoint> points,
                                      const DiagramPoint& reference,
                                      double radial_max,
                                      const ClusteringConfig& cfg);

}  // namespace polars
