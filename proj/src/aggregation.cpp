#include "polars/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "polars/error.hpp"

namespace polars {

void ClusteringConfig::validate() const {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::kInvalidConfig, "eps must be a finite value > 0");
  }
  if (min_pts < 1) {
    throw Error(ErrorCode::kInvalidConfig, "min_pts must be at least 1");
  }
}

std::vector<int> dbscan(std::span<const Point2> points,
                        const ClusteringConfig& cfg) {
  cfg.validate();
  if (points.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no points to cluster");
  }
  const std::size_t n = points.size();
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::kInvalidConfig, "cluster input is not finite");
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].x != points[b].x) return points[a].x < points[b].x;
    return points[a].y < points[b].y;
  });

  // Neighborhoods in canonical positions; each includes the point itself.
  const double eps2 = cfg.eps * cfg.eps;
  std::vector<std::vector<std::size_t>> neighbors(n);
  for (std::size_t a = 0; a < n; ++a) {
    const Point2& pa = points[order[a]];
    for (std::size_t b = 0; b < n; ++b) {
      const Point2& pb = points[order[b]];
      const double dx = pa.x - pb.x;
      const double dy = pa.y - pb.y;
      if (dx * dx + dy * dy <= eps2) neighbors[a].push_back(b);
    }
  }

  constexpr int kUnvisited = -1;
  std::vector<int> canon(n, kUnvisited);
  std::vector<bool> core(n);
  for (std::size_t a = 0; a < n; ++a) core[a] = neighbors[a].size() >= cfg.min_pts;

  int next = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (canon[a] != kUnvisited || !core[a]) continue;
    const int label = next++;
    canon[a] = label;
    std::deque<std::size_t> frontier{a};
    while (!frontier.empty()) {
      const std::size_t p = frontier.front();
      frontier.pop_front();
      if (!core[p]) continue;
      for (const std::size_t q : neighbors[p]) {
        if (canon[q] != kUnvisited) continue;
        canon[q] = label;
        frontier.push_back(q);
      }
    }
  }
  // Noise becomes singleton clusters.
  for (std::size_t a = 0; a < n; ++a) {
    if (canon[a] == kUnvisited) canon[a] = next++;
  }

  std::vector<int> labels(n);
  for (std::size_t a = 0; a < n; ++a) labels[order[a]] = canon[a];
  return labels;
}

double mark_radius_px(std::size_t count, std::size_t count_max) {
  if (count_max <= 1 || count <= 1) return kClusterMarkMinPx;
  const double t = static_cast<double>(count - 1) /
                   static_cast<double>(count_max - 1);
  return kClusterMarkMinPx + (kClusterMarkMaxPx - kClusterMarkMinPx) * std::sqrt(t);
}

namespace {

MetricTriple average_metrics(const std::vector<const MetricTriple*>& members) {
  const double n = static_cast<double>(members.size());
  if (std::holds_alternative<TaylorMetrics>(*members.front())) {
    TaylorMetrics sum;
    for (const auto* m : members) {
      const auto* t = std::get_if<TaylorMetrics>(m);
      if (t == nullptr) throw Error(ErrorCode::kFlavorMismatch, "mixed metric flavors in cluster");
      sum.sigma_ref += t->sigma_ref;
      sum.sigma_model += t->sigma_model;
      sum.correlation += t->correlation;
      sum.crmse += t->crmse;
    }
    sum.sigma_ref /= n;
    sum.sigma_model /= n;
    sum.correlation = std::clamp(sum.correlation / n, -1.0, 1.0);
    sum.crmse /= n;
    return sum;
  }
  InfoMetrics sum;
  for (const auto* m : members) {
    const auto* t = std::get_if<InfoMetrics>(m);
    if (t == nullptr) throw Error(ErrorCode::kFlavorMismatch, "mixed metric flavors in cluster");
    sum.h_ref += t->h_ref;
    sum.h_model += t->h_model;
    sum.mi += t->mi;
    sum.smi += t->smi;
    sum.nmi += t->nmi;
    sum.vi += t->vi;
    sum.rvi += t->rvi;
  }
  sum.h_ref /= n;
  sum.h_model /= n;
  sum.mi /= n;
  sum.smi /= n;
  sum.nmi /= n;
  sum.vi /= n;
  sum.rvi /= n;
  sum.degenerate = !(sum.h_ref * sum.h_model > 0.0);
  return sum;
}

}  // namespace

std::vector<ClusterSummary> summarize(DiagramKind kind,
                                      std::span<const DiagramPoint> points,
                                      std::span<const int> labels,
                                      const DiagramPoint& reference) {
  if (points.size() != labels.size()) {
    throw Error(ErrorCode::kLabelMismatch,
                "got " + std::to_string(labels.size()) + " labels for " +
                    std::to_string(points.size()) + " points");
  }
  if (points.empty()) return {};
  const int label_count = *std::max_element(labels.begin(), labels.end()) + 1;
  if (*std::min_element(labels.begin(), labels.end()) < 0) {
    throw Error(ErrorCode::kLabelMismatch, "negative cluster label");
  }

  // Members are collected in model-id order so averaging is order independent.
  std::vector<std::size_t> by_id(points.size());
  std::iota(by_id.begin(), by_id.end(), 0);
  std::sort(by_id.begin(), by_id.end(), [&](std::size_t a, std::size_t b) {
    return points[a].model_id < points[b].model_id;
  });
  std::vector<std::vector<std::size_t>> groups(static_cast<std::size_t>(label_count));
  for (const std::size_t i : by_id) groups[static_cast<std::size_t>(labels[i])].push_back(i);

  std::vector<ClusterSummary> out;
  std::size_t count_max = 0;
  for (const auto& g : groups) {
    if (g.empty()) continue;
    ClusterSummary s;
    std::vector<const MetricTriple*> metrics;
    for (const std::size_t i : g) {
      s.member_ids.push_back(points[i].model_id);
      metrics.push_back(&points[i].metrics);
    }
    s.count = g.size();
    s.centroid = place(kind, "", average_metrics(metrics));
    s.distance = std::hypot(s.centroid.x - reference.x, s.centroid.y - reference.y);
    count_max = std::max(count_max, s.count);
    out.push_back(std::move(s));
  }

  std::sort(out.begin(), out.end(), [](const ClusterSummary& a, const ClusterSummary& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.member_ids.front() < b.member_ids.front();
  });
  const double d_max = out.back().distance;
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto& s = out[k];
    s.cluster_id = static_cast<int>(k + 1);
    s.centroid.model_id = "cluster-" + std::to_string(s.cluster_id);
    s.mark_radius_px = mark_radius_px(s.count, count_max);
    // A lone cluster has no distance range to shade against: it stays black.
    s.shade = out.size() > 1 && d_max > 0.0
                  ? static_cast<int>(std::floor(kClusterShadeMax * s.distance / d_max))
                  : 0;
  }
  return out;
}

std::vector<ClusterSummary> aggregate(DiagramKind kind,
                                      std::span<const DiagramPoint> points,
                                      const DiagramPoint& reference,
                                      double radial_max,
                                      const ClusteringConfig& cfg) {
  if (!(radial_max > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "radial axis maximum must be positive");
  }
  std::vector<Point2> normalized;
  normalized.reserve(points.size());
  for (const auto& p : points) normalized.push_back({p.x / radial_max, p.y / radial_max});
  const auto labels = dbscan(normalized, cfg);
  return summarize(kind, points, labels, reference);
}

}  // namespace polars
