#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polars/aggregation.hpp"
#include "polars/data_io.hpp"
#include "polars/geometry.hpp"
#include "polars/metrics.hpp"

namespace polars {

enum class ViewRole { kOverview, kDetail, kGridCell };

enum class WarningCode { kOcclusion, kModelCap, kGridSize, kDegenerateEntropy };

struct Warning {
  WarningCode code = WarningCode::kOcclusion;
  std::vector<std::string> affected_ids;
  std::string message;

  friend bool operator==(const Warning&, const Warning&) = default;
};

struct RadialInterval {
  double r0 = 0.0;
  double r1 = 0.0;

  bool contains(double r) const { return r0 <= r && r <= r1; }
  friend bool operator==(const RadialInterval&, const RadialInterval&) = default;
};

struct DiagramView {
  DiagramKind kind = DiagramKind::kTaylor;
  ViewRole role = ViewRole::kDetail;
  DiagramPoint reference;
  std::vector<DiagramPoint> points;           // sorted by model id
  std::vector<DiagramPoint> previous_points;  // grid cells: the earlier version
  std::vector<ClusterSummary> clusters;       // overview only
  double radial_min = 0.0;                    // > 0 only in a zoomed detail
  double radial_max = 1.0;
  double angular_extent = 0.0;                // pi/2 or pi
  std::optional<RadialInterval> brush;
  std::vector<std::string> selection;         // sorted
  std::vector<Warning> warnings;

  friend bool operator==(const DiagramView&, const DiagramView&) = default;
};

struct AxisEntry {
  std::string model_id;
  double value = 0.0;

  friend bool operator==(const AxisEntry&, const AxisEntry&) = default;
};

struct LinkingAxis {
  std::string label;
  std::vector<AxisEntry> entries;

  friend bool operator==(const LinkingAxis&, const LinkingAxis&) = default;
};

// Three stacked 1-D axes: radius, similarity and distance measure.
struct LinkingAxes {
  DiagramKind kind = DiagramKind::kTaylor;
  std::array<LinkingAxis, 3> axes;
  std::vector<std::string> highlighted;  // sorted

  friend bool operator==(const LinkingAxes&, const LinkingAxes&) = default;
};

std::array<std::string, 3> linking_labels(DiagramKind kind);
// (radius, similarity, distance) exactly as encoded by the detail diagram.
std::array<double, 3> linking_values(DiagramKind kind, const MetricTriple& metrics);

// Screen parameters used for occlusion checks in the detail view.
struct ScreenScale {
  double plot_radius_px = 360.0;
  double mark_radius_px = 7.0;
  friend bool operator==(const ScreenScale&, const ScreenScale&) = default;
};

// Overview + detail + linking plus the interaction state that produced them.
// Every transformation below rebuilds the derived parts from
// (all points, brush, hidden, selected cluster), so any action sequence can be
// replayed from the recorded state.
struct ViewSet {
  std::string dataset_id;
  DiagramView overview;  // points = every model; clusters set
  DiagramView detail;
  LinkingAxes linking;
  std::vector<std::string> hidden;     // sorted
  std::optional<int> selected_cluster;
  ScreenScale screen;

  friend bool operator==(const ViewSet&, const ViewSet&) = default;
};

// Computes one metric set per model (parallel over models) and places it.
// Throws kModelCapExceeded for more than 20 models, kTooFewModels for none.
std::vector<DiagramPoint> compute_points(const Dataset& dataset, DiagramKind kind,
                                         const BinningConfig& binning,
                                         DiagramPoint* reference_out = nullptr);

// 10% headroom over the largest radius (reference included); 1 if all zero.
double radial_axis_max(const std::vector<DiagramPoint>& points,
                       const DiagramPoint& reference);

ViewSet build_views(const Dataset& dataset, DiagramKind kind,
                    const ClusteringConfig& clustering = {},
                    const BinningConfig& binning = {},
                    const ScreenScale& screen = {});

// Throws kInvalidInterval unless 0 <= r0 <= r1 <= overview.radial_max.
ViewSet apply_radial_brush(const ViewSet& views, double r0, double r1);
ViewSet clear_radial_brush(const ViewSet& views);

struct SingleClick { std::string model_id; };
struct DoubleClick { std::string model_id; };
struct Reset {};
using LegendAction = std::variant<SingleClick, DoubleClick, Reset>;

// SINGLE toggles one model's visibility; DOUBLE selects (or, repeated,
// deselects) the clicked model's cluster; RESET drops every filter.
ViewSet apply_legend_action(const ViewSet& views, const LegendAction& action);

struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;
};

// Ids of the detail points inside the closed rectangle, sorted.
std::vector<std::string> apply_rect_brush(const DiagramView& detail, const Rect& rect);

// Center distance below this fraction of two mark radii counts as occlusion.
inline constexpr double kOcclusionOverlap = 0.8;

// One OCCLUSION warning naming every model in an overlapping pair, or nothing.
std::vector<Warning> detect_occlusion(const DiagramView& detail, double mark_radius_px,
                                      double px_per_unit);

inline constexpr std::size_t kGridColumns = 3;
inline constexpr std::size_t kGridMaxRows = 3;

struct GridCell {
  std::string annotation;
  DiagramView view;

  friend bool operator==(const GridCell&, const GridCell&) = default;
};

struct GridLayout {
  std::size_t rows = 0;
  std::size_t cols = kGridColumns;
  std::vector<GridCell> cells;
  std::vector<std::string> legend;  // shared across cells, sorted model ids
  std::vector<Warning> warnings;

  friend bool operator==(const GridLayout&, const GridLayout&) = default;
};

std::size_t grid_rows(std::size_t versions);  // ceil((n - 1) / 3)

// Cell i pairs versions i and i+1: earlier as hollow marks, later filled.
GridLayout small_multiples(const VersionedDataset& versioned, DiagramKind kind,
                           const BinningConfig& binning = {});

// Keys whose value differs from `before`, rendered "k=v" in `after`'s order.
std::string changed_params(const std::string& before, const std::string& after);

}  // namespace polars
