#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "polars/view_state.hpp"

namespace polars {

struct RenderTheme {
  double width_px = 900.0;
  double height_px = 560.0;
  double margin_px = 60.0;
  std::string font_family = "sans-serif";
  double mark_radius_px = 7.0;
  int highlight_gray = 211;  // brushed region and recolored axes
  double fill_alpha = 0.7;   // model marks are semi-transparent
  // Index 0 colors the reference; models take 1.. in legend order.
  std::vector<std::string> palette = {
      "#000000", "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
      "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#ad494a", "#637939",
      "#8c6d31", "#843c39", "#7b4173", "#3182bd", "#e6550d", "#31a354", "#756bb1"};

  void validate() const;  // throws kInvalidConfig
};

// "key = value" lines; '#' starts a comment. Keys: width, height, margin,
// font_family, mark_radius, highlight_gray, fill_alpha, palette (comma list).
RenderTheme parse_theme(std::string_view text);

// Radius in px of the polar plotting area for an angular extent.
double plot_radius_px(const RenderTheme& theme, double angular_extent);
ScreenScale screen_scale(const RenderTheme& theme, double angular_extent);

// Canonical coordinate text: at most 6 decimals, trailing zeros dropped, no "-0".
std::string svg_number(double v);

// `legend` fixes color assignment (model i -> palette[i + 1]); when empty the
// view's own points are used. Throws kThemeCapacityExceeded when the palette
// is too short.
//
// Overview: cluster circles with ids, no ticks, labels or grid.
// Detail: grid arcs, radial and angular ticks, axis labels, distance arcs
// around the reference, one circle per visible model.
// Grid cell views are rendered through render(GridLayout).
std::string render(const DiagramView& view, const RenderTheme& theme,
                   const std::vector<std::string>& legend = {});
std::string render(const LinkingAxes& linking, const RenderTheme& theme,
                   const std::vector<std::string>& legend = {});
std::string render(const GridLayout& grid, const RenderTheme& theme);

// Static size legend: the cluster mark radius for count 1 and the largest count.
std::string render_size_legend(const std::vector<ClusterSummary>& clusters,
                               const RenderTheme& theme);

}  // namespace polars
