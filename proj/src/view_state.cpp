#include "polars/view_state.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "polars/error.hpp"
#include "polars/kernels.hpp"

namespace polars {

std::array<std::string, 3> linking_labels(DiagramKind kind) {
  switch (kind) {
    case DiagramKind::kTaylor:
      return {"standard deviation", "correlation", "CRMSE"};
    case DiagramKind::kSmi:
      return {"entropy", "scaled mutual information", "variation of information"};
    case DiagramKind::kNmi:
      return {"root entropy", "normalized mutual information",
              "root variation of information"};
  }
  return {};
}

std::array<double, 3> linking_values(DiagramKind kind, const MetricTriple& metrics) {
  switch (kind) {
    case DiagramKind::kTaylor: {
      const auto& t = std::get<TaylorMetrics>(metrics);
      return {t.sigma_model, t.correlation, t.crmse};
    }
    case DiagramKind::kSmi: {
      const auto& m = std::get<InfoMetrics>(metrics);
      return {m.h_model, m.smi, m.vi};
    }
    case DiagramKind::kNmi: {
      const auto& m = std::get<InfoMetrics>(metrics);
      return {model_radius(kind, metrics), m.nmi, m.rvi};
    }
  }
  return {};
}

namespace {

void check_model_count(std::size_t models) {
  if (models > kMaxModels) {
    throw Error(ErrorCode::kModelCapExceeded,
                std::to_string(models) + " models exceed the diagram limit of " +
                    std::to_string(kMaxModels) + " plus the reference");
  }
  if (models == 0) {
    throw Error(ErrorCode::kTooFewModels, "dataset has no model besides the reference");
  }
}

bool any_negative(DiagramKind kind, const std::vector<DiagramPoint>& points) {
  return std::any_of(points.begin(), points.end(), [&](const DiagramPoint& p) {
    return !p.degenerate && similarity(kind, p.metrics) < 0.0;
  });
}

std::vector<Warning> degenerate_warnings(const std::vector<DiagramPoint>& points) {
  std::vector<std::string> ids;
  for (const auto& p : points) {
    if (p.degenerate) ids.push_back(p.model_id);
  }
  if (ids.empty()) return {};
  return {{WarningCode::kDegenerateEntropy, ids,
           "zero entropy: similarity undefined, drawn at 90 degrees"}};
}

std::vector<Warning> cap_warnings(const std::vector<DiagramPoint>& points) {
  if (points.size() < kMaxModels) return {};
  std::vector<std::string> ids;
  for (const auto& p : points) ids.push_back(p.model_id);
  return {{WarningCode::kModelCap, ids,
           "diagram is at its capacity of " + std::to_string(kMaxModels + 1) +
               " models including the reference"}};
}

bool contains(const std::vector<std::string>& sorted, const std::string& id) {
  return std::binary_search(sorted.begin(), sorted.end(), id);
}

// Rebuilds detail, linking, selection and warnings from the recorded state.
void derive(ViewSet& v) {
  const auto& all = v.overview.points;
  std::vector<std::string> cluster_members;
  if (v.selected_cluster) {
    for (const auto& c : v.overview.clusters) {
      if (c.cluster_id == *v.selected_cluster) cluster_members = c.member_ids;
    }
  }

  std::vector<DiagramPoint> visible;
  for (const auto& p : all) {
    if (v.overview.brush && !v.overview.brush->contains(p.r)) continue;
    if (contains(v.hidden, p.model_id)) continue;
    if (v.selected_cluster && !contains(cluster_members, p.model_id)) continue;
    visible.push_back(p);
  }

  std::vector<std::string> selection;
  if (v.overview.brush || v.selected_cluster) {
    for (const auto& p : visible) selection.push_back(p.model_id);
  }

  DiagramView& d = v.detail;
  d.kind = v.overview.kind;
  d.role = ViewRole::kDetail;
  d.reference = v.overview.reference;
  d.points = std::move(visible);
  d.clusters.clear();
  d.brush = v.overview.brush;
  d.radial_min = v.overview.brush ? v.overview.brush->r0 : 0.0;
  d.radial_max = v.overview.brush ? v.overview.brush->r1 : v.overview.radial_max;
  d.angular_extent = v.overview.angular_extent;
  d.selection = selection;

  const double span = d.radial_max - d.radial_min;
  const double px_per_unit =
      v.screen.plot_radius_px / (span > 0.0 ? span : v.overview.radial_max);
  d.warnings = detect_occlusion(d, v.screen.mark_radius_px, px_per_unit);
  for (auto& w : degenerate_warnings(d.points)) d.warnings.push_back(std::move(w));
  for (auto& w : cap_warnings(all)) d.warnings.push_back(std::move(w));

  v.overview.selection = selection;

  LinkingAxes& l = v.linking;
  l.kind = v.overview.kind;
  const auto labels = linking_labels(l.kind);
  for (std::size_t a = 0; a < 3; ++a) {
    l.axes[a].label = labels[a];
    l.axes[a].entries.clear();
  }
  for (const auto& p : all) {
    if (contains(v.hidden, p.model_id)) continue;
    const auto values = linking_values(l.kind, p.metrics);
    for (std::size_t a = 0; a < 3; ++a) l.axes[a].entries.push_back({p.model_id, values[a]});
  }
  l.highlighted = selection;
}

const DiagramPoint* find_point(const ViewSet& v, const std::string& id) {
  for (const auto& p : v.overview.points) {
    if (p.model_id == id) return &p;
  }
  return nullptr;
}

}  // namespace

std::vector<DiagramPoint> compute_points(const Dataset& dataset, DiagramKind kind,
                                         const BinningConfig& binning,
                                         DiagramPoint* reference_out) {
  const auto models = dataset.models();
  check_model_count(models.size());
  const auto ref = dataset.reference().values();

  std::vector<MetricTriple> metrics;
  MetricTriple self;
  if (kind == DiagramKind::kTaylor) {
    for (auto& m : kernels::taylor_batch(ref, models)) metrics.emplace_back(m);
    self = taylor_metrics(ref, ref);
  } else {
    for (auto& m : kernels::info_batch(ref, models, binning)) metrics.emplace_back(m);
    self = info_metrics(ref, ref, binning);
  }

  std::vector<DiagramPoint> points;
  for (std::size_t i = 0; i < models.size(); ++i) {
    points.push_back(place(kind, models[i].name(), metrics[i]));
  }
  std::sort(points.begin(), points.end(),
            [](const DiagramPoint& a, const DiagramPoint& b) { return a.model_id < b.model_id; });
  if (reference_out != nullptr) {
    *reference_out = reference_point(kind, dataset.reference_name, self);
  }
  return points;
}

double radial_axis_max(const std::vector<DiagramPoint>& points,
                       const DiagramPoint& reference) {
  double r = reference.r;
  for (const auto& p : points) r = std::max(r, p.r);
  return r > 0.0 ? 1.1 * r : 1.0;
}

ViewSet build_views(const Dataset& dataset, DiagramKind kind,
                    const ClusteringConfig& clustering, const BinningConfig& binning,
                    const ScreenScale& screen) {
  clustering.validate();
  ViewSet v;
  v.dataset_id = dataset.id;
  v.screen = screen;

  DiagramView& o = v.overview;
  o.kind = kind;
  o.role = ViewRole::kOverview;
  o.points = compute_points(dataset, kind, binning, &o.reference);
  o.radial_min = 0.0;
  o.radial_max = radial_axis_max(o.points, o.reference);
  o.angular_extent = angular_extent(kind, any_negative(kind, o.points));
  o.clusters = aggregate(kind, o.points, o.reference, o.radial_max, clustering);
  derive(v);
  return v;
}

ViewSet apply_radial_brush(const ViewSet& views, double r0, double r1) {
  const double top = views.overview.radial_max;
  if (!std::isfinite(r0) || !std::isfinite(r1) || r0 < 0.0 || r0 > r1 || r1 > top) {
    throw Error(ErrorCode::kInvalidInterval,
                "brush [" + format_number(r0) + ", " + format_number(r1) +
                    "] must satisfy 0 <= r0 <= r1 <= " + format_number(top));
  }
  ViewSet v = views;
  v.overview.brush = RadialInterval{r0, r1};
  derive(v);
  return v;
}

ViewSet clear_radial_brush(const ViewSet& views) {
  ViewSet v = views;
  v.overview.brush.reset();
  derive(v);
  return v;
}

ViewSet apply_legend_action(const ViewSet& views, const LegendAction& action) {
  ViewSet v = views;
  if (std::holds_alternative<Reset>(action)) {
    v.overview.brush.reset();
    v.hidden.clear();
    v.selected_cluster.reset();
    derive(v);
    return v;
  }
  const std::string& id = std::holds_alternative<SingleClick>(action)
                              ? std::get<SingleClick>(action).model_id
                              : std::get<DoubleClick>(action).model_id;
  if (find_point(views, id) == nullptr) {
    throw Error(ErrorCode::kUnknownModelId, "unknown model '" + id + "'");
  }
  if (std::holds_alternative<SingleClick>(action)) {
    const auto it = std::lower_bound(v.hidden.begin(), v.hidden.end(), id);
    if (it != v.hidden.end() && *it == id) {
      v.hidden.erase(it);
    } else {
      v.hidden.insert(it, id);
    }
  } else {
    for (const auto& c : v.overview.clusters) {
      if (!contains(c.member_ids, id)) continue;
      if (v.selected_cluster == c.cluster_id) {
        v.selected_cluster.reset();
      } else {
        v.selected_cluster = c.cluster_id;
      }
    }
  }
  derive(v);
  return v;
}

std::vector<std::string> apply_rect_brush(const DiagramView& detail, const Rect& rect) {
  const bool finite = std::isfinite(rect.x0) && std::isfinite(rect.x1) &&
                      std::isfinite(rect.y0) && std::isfinite(rect.y1);
  if (!finite || rect.x0 > rect.x1 || rect.y0 > rect.y1) {
    throw Error(ErrorCode::kInvalidRect, "rectangle needs x0 <= x1 and y0 <= y1");
  }
  std::vector<std::string> out;
  for (const auto& p : detail.points) {
    if (rect.x0 <= p.x && p.x <= rect.x1 && rect.y0 <= p.y && p.y <= rect.y1) {
      out.push_back(p.model_id);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Warning> detect_occlusion(const DiagramView& detail, double mark_radius_px,
                                      double px_per_unit) {
  const double limit = 2.0 * kOcclusionOverlap * mark_radius_px;
  std::set<std::string> ids;
  std::string pairs;
  const auto& pts = detail.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double d = std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y) * px_per_unit;
      if (d < limit) {
        ids.insert(pts[i].model_id);
        ids.insert(pts[j].model_id);
        if (!pairs.empty()) pairs += ", ";
        pairs += pts[i].model_id + " / " + pts[j].model_id;
      }
    }
  }
  if (ids.empty()) return {};
  return {{WarningCode::kOcclusion, {ids.begin(), ids.end()},
           "overlapping marks: " + pairs}};
}

std::size_t grid_rows(std::size_t versions) {
  if (versions < 2) return 0;
  return (versions - 1 + kGridColumns - 1) / kGridColumns;
}

namespace {

std::vector<std::pair<std::string, std::string>> parse_params(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(';', start), text.size());
    const std::string item = text.substr(start, end - start);
    if (!item.empty()) {
      const std::size_t eq = item.find('=');
      if (eq == std::string::npos) {
        out.emplace_back(item, "");
      } else {
        out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
      }
    }
    start = end + 1;
  }
  return out;
}

}  // namespace

std::string changed_params(const std::string& before, const std::string& after) {
  const auto old_params = parse_params(before);
  std::map<std::string, std::string> old_map(old_params.begin(), old_params.end());
  std::string out;
  for (const auto& [key, value] : parse_params(after)) {
    const auto it = old_map.find(key);
    if (it != old_map.end() && it->second == value) continue;
    if (!out.empty()) out += ", ";
    out += value.empty() ? key : key + "=" + value;
  }
  return out;
}

GridLayout small_multiples(const VersionedDataset& versioned, DiagramKind kind,
                           const BinningConfig& binning) {
  const auto& versions = versioned.versions;
  if (versions.size() < 2) {
    throw Error(ErrorCode::kTooFewVersions,
                "small multiples need at least 2 versions, got " +
                    std::to_string(versions.size()));
  }
  std::vector<std::string> names;
  for (const auto& m : versions.front().data.models()) names.push_back(m.name());
  std::sort(names.begin(), names.end());
  for (const auto& ver : versions) {
    std::vector<std::string> these;
    for (const auto& m : ver.data.models()) these.push_back(m.name());
    std::sort(these.begin(), these.end());
    if (these != names || ver.data.reference_name != versions.front().data.reference_name) {
      throw Error(ErrorCode::kVersionMismatch,
                  "version '" + ver.label + "' does not share the models of '" +
                      versions.front().label + "'");
    }
  }

  std::vector<std::vector<DiagramPoint>> per_version;
  std::vector<DiagramPoint> references;
  double radial_max = 0.0;
  bool negative = false;
  for (const auto& ver : versions) {
    DiagramPoint ref;
    per_version.push_back(compute_points(ver.data, kind, binning, &ref));
    radial_max = std::max(radial_max, radial_axis_max(per_version.back(), ref));
    negative = negative || any_negative(kind, per_version.back());
    references.push_back(std::move(ref));
  }

  GridLayout g;
  g.rows = grid_rows(versions.size());
  g.cols = kGridColumns;
  g.legend = names;
  std::set<std::string> degenerate;
  for (std::size_t i = 0; i + 1 < versions.size(); ++i) {
    GridCell cell;
    const auto& later = versions[i + 1];
    const std::string changed = changed_params(versions[i].params, later.params);
    cell.annotation = changed.empty() ? later.label : later.label + ": " + changed;
    DiagramView& v = cell.view;
    v.kind = kind;
    v.role = ViewRole::kGridCell;
    v.reference = references[i + 1];
    v.points = per_version[i + 1];
    v.previous_points = per_version[i];
    v.radial_max = radial_max;
    v.angular_extent = angular_extent(kind, negative);
    v.warnings = degenerate_warnings(v.points);
    for (const auto& p : v.points) {
      if (p.degenerate) degenerate.insert(p.model_id);
    }
    g.cells.push_back(std::move(cell));
  }
  if (g.rows > kGridMaxRows) {
    g.warnings.push_back({WarningCode::kGridSize, {},
                          std::to_string(g.rows) + " grid rows; at most " +
                              std::to_string(kGridMaxRows) + " rows stay readable"});
  }
  if (!degenerate.empty()) {
    g.warnings.push_back({WarningCode::kDegenerateEntropy,
                          {degenerate.begin(), degenerate.end()},
                          "zero entropy: similarity undefined, drawn at 90 degrees"});
  }
  return g;
}

}  // namespace polars
