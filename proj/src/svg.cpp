#include "polars/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include "polars/error.hpp"

namespace polars {

namespace {

constexpr double kPi = std::numbers::pi;

std::string escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

// Element ids keep [A-Za-z0-9_-]; anything else becomes '_'.
std::string sanitize(std::string_view id) {
  std::string out;
  for (const char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-';
    out += ok ? c : '_';
  }
  return out;
}

std::string gray(int level) {
  const std::string v = std::to_string(std::clamp(level, 0, 255));
  return "rgb(" + v + "," + v + "," + v + ")";
}

std::string header(double w, double h, std::string_view font) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         svg_number(w) + "\" height=\"" + svg_number(h) + "\" viewBox=\"0 0 " +
         svg_number(w) + " " + svg_number(h) + "\" font-family=\"" + escape(font) +
         "\">\n";
}

// Maps diagram (r, theta) into pixels for one polar plotting area.
struct Frame {
  double cx = 0.0;
  double cy = 0.0;
  double radius = 0.0;
  double rmin = 0.0;
  double rmax = 1.0;
  double extent = kPi;

  double rho(double r) const {
    const double span = rmax - rmin;
    if (!(span > 0.0)) return r >= rmin ? radius : 0.0;
    return (r - rmin) / span * radius;
  }
  double px(double rho_px, double theta) const { return cx + rho_px * std::cos(theta); }
  double py(double rho_px, double theta) const { return cy - rho_px * std::sin(theta); }
  std::string at(double rho_px, double theta) const {
    return svg_number(px(rho_px, theta)) + " " + svg_number(py(rho_px, theta));
  }
  bool half() const { return extent > kPi / 2.0 + 1e-9; }
};

Frame frame_in(double x, double y, double w, double h, double margin, double extent,
               double rmin, double rmax) {
  Frame f;
  f.extent = extent;
  f.rmin = rmin;
  f.rmax = rmax;
  if (f.half()) {
    f.radius = std::max(1.0, std::min((w - 2.0 * margin) / 2.0, h - 2.0 * margin));
    f.cx = x + w / 2.0;
  } else {
    f.radius = std::max(1.0, std::min(w - 2.0 * margin, h - 2.0 * margin));
    f.cx = x + margin;
  }
  f.cy = y + h - margin;
  return f;
}

// Arc of radius rho_px from theta 0 to extent (counter-clockwise on screen).
std::string arc_path(const Frame& f, double rho_px) {
  return "M" + f.at(rho_px, 0.0) + " A" + svg_number(rho_px) + " " + svg_number(rho_px) +
         " 0 0 0 " + f.at(rho_px, f.extent);
}

// Closed annulus sector between two pixel radii over the full extent.
std::string sector_path(const Frame& f, double rho0, double rho1) {
  std::string d = "M" + f.at(rho1, 0.0) + " A" + svg_number(rho1) + " " +
                  svg_number(rho1) + " 0 0 0 " + f.at(rho1, f.extent);
  if (rho0 > 0.0) {
    d += " L" + f.at(rho0, f.extent) + " A" + svg_number(rho0) + " " + svg_number(rho0) +
         " 0 0 1 " + f.at(rho0, 0.0);
  } else {
    d += " L" + svg_number(f.cx) + " " + svg_number(f.cy);
  }
  return d + " Z";
}

std::string outline_path(const Frame& f) {
  return "M" + svg_number(f.cx) + " " + svg_number(f.cy) + " L" + f.at(f.radius, 0.0) +
         " A" + svg_number(f.radius) + " " + svg_number(f.radius) + " 0 0 0 " +
         f.at(f.radius, f.extent) + " Z";
}

std::string diamond(double x, double y, double s) {
  return "M" + svg_number(x) + " " + svg_number(y - s) + " L" + svg_number(x + s) + " " +
         svg_number(y) + " L" + svg_number(x) + " " + svg_number(y + s) + " L" +
         svg_number(x - s) + " " + svg_number(y) + " Z";
}

// 1, 2 or 5 times a power of ten, about `target` steps across span.
double nice_step(double span, int target) {
  if (!(span > 0.0)) return 1.0;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  const double unit = norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0;
  return unit * mag;
}

std::vector<double> nice_ticks(double lo, double hi, int target) {
  const double step = nice_step(hi - lo, target);
  std::vector<double> out;
  const auto first = static_cast<long>(std::ceil(lo / step - 1e-9));
  const auto last = static_cast<long>(std::floor(hi / step + 1e-9));
  for (long k = first; k <= last; ++k) out.push_back(static_cast<double>(k) * step);
  return out;
}

// Similarity tick values and their angles.
std::vector<std::pair<double, double>> angular_ticks(DiagramKind kind, double extent) {
  std::vector<double> values;
  switch (kind) {
    case DiagramKind::kTaylor: {
      const std::vector<double> pos = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6,
                                       0.7, 0.8, 0.9, 0.95, 0.99, 1.0};
      values = pos;
      if (extent > kPi / 2.0 + 1e-9) {
        for (const double v : pos) {
          if (v > 0.0) values.push_back(-v);
        }
      }
      break;
    }
    case DiagramKind::kSmi:
    case DiagramKind::kNmi:
      for (int k = 0; k <= 10; ++k) values.push_back(k / 10.0);
      break;
  }
  std::sort(values.begin(), values.end());
  std::vector<std::pair<double, double>> out;
  for (const double v : values) {
    const double c = kind == DiagramKind::kSmi ? 2.0 * v - 1.0 : v;
    out.emplace_back(v, std::acos(std::clamp(c, -1.0, 1.0)));
  }
  return out;
}

std::string anchor_for(double theta) {
  const double c = std::cos(theta);
  if (c > 0.1) return "start";
  if (c < -0.1) return "end";
  return "middle";
}

class ColorMap {
 public:
  ColorMap(const RenderTheme& theme, std::vector<std::string> legend)
      : theme_(theme) {
    if (legend.size() + 1 > theme.palette.size()) {
      throw Error(ErrorCode::kThemeCapacityExceeded,
                  std::to_string(legend.size()) + " models need " +
                      std::to_string(legend.size() + 1) + " palette colors, theme has " +
                      std::to_string(theme.palette.size()));
    }
    for (std::size_t i = 0; i < legend.size(); ++i) index_[legend[i]] = i + 1;
  }

  const std::string& reference() const { return theme_.palette.front(); }
  const std::string& operator()(const std::string& id) const {
    const auto it = index_.find(id);
    return it == index_.end() ? theme_.palette.front() : theme_.palette[it->second];
  }

 private:
  const RenderTheme& theme_;
  std::map<std::string, std::size_t> index_;
};

std::vector<std::string> ids_of(const DiagramView& view) {
  std::vector<std::string> ids;
  for (const auto& p : view.points) ids.push_back(p.model_id);
  for (const auto& p : view.previous_points) {
    if (std::find(ids.begin(), ids.end(), p.model_id) == ids.end()) ids.push_back(p.model_id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::string tooltip(DiagramKind kind, const DiagramPoint& p) {
  const auto labels = linking_labels(kind);
  const auto values = linking_values(kind, p.metrics);
  std::string t = p.model_id;
  for (std::size_t a = 0; a < 3; ++a) {
    t += (a == 0 ? ": " : ", ") + labels[a] + " " + svg_number(values[a]);
  }
  return t;
}

bool in_frame(const Frame& f, double r) {
  return r >= f.rmin - 1e-12 && r <= f.rmax + 1e-12;
}

// Level sets of the distance measure: circles around the reference, kept to
// the part that lies inside the plotted sector.
std::string distance_arcs(const Frame& f, const DiagramPoint& ref, const std::string& stroke) {
  std::string out;
  const double step = nice_step(f.rmax, 5);
  constexpr int kSamples = 240;
  for (int level = 1; level * step < 2.0 * f.rmax; ++level) {
    const double d = level * step;
    std::string path;
    bool pen = false;
    for (int s = 0; s <= kSamples; ++s) {
      const double phi = 2.0 * kPi * s / kSamples;
      const double x = ref.x + d * std::cos(phi);
      const double y = d * std::sin(phi);
      const double r = std::hypot(x, y);
      const double theta = std::atan2(y, x);
      const bool inside = y >= 0.0 && theta <= f.extent + 1e-12 && in_frame(f, r);
      if (!inside) {
        pen = false;
        continue;
      }
      path += (pen ? " L" : (path.empty() ? "M" : " M")) + f.at(f.rho(r), theta);
      pen = true;
    }
    if (path.empty()) continue;
    out += "<path class=\"distance-arc\" d=\"" + path +
           "\" fill=\"none\" stroke=\"" + stroke +
           "\" stroke-width=\"0.8\" stroke-dasharray=\"4 3\"/>\n";
  }
  return out;
}

std::string render_overview(const DiagramView& view, const RenderTheme& theme) {
  const Frame f = frame_in(0, 0, theme.width_px, theme.height_px, theme.margin_px,
                           view.angular_extent, 0.0, view.radial_max);
  std::string s = header(theme.width_px, theme.height_px, theme.font_family);
  s += "<rect id=\"background\" x=\"0\" y=\"0\" width=\"" + svg_number(theme.width_px) +
       "\" height=\"" + svg_number(theme.height_px) + "\" fill=\"white\"/>\n";
  if (view.brush) {
    s += "<path id=\"brush-sector\" d=\"" +
         sector_path(f, f.rho(view.brush->r0), f.rho(view.brush->r1)) + "\" fill=\"" +
         gray(theme.highlight_gray) + "\" fill-opacity=\"0.5\" stroke=\"none\"/>\n";
  }
  s += "<path id=\"outline\" d=\"" + outline_path(f) +
       "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  s += "<path id=\"reference-mark\" d=\"" +
       diamond(f.px(f.rho(view.reference.r), 0.0), f.py(f.rho(view.reference.r), 0.0), 6.0) +
       "\" fill=\"" + theme.palette.front() + "\"/>\n";

  auto clusters = view.clusters;
  std::sort(clusters.begin(), clusters.end(),
            [](const ClusterSummary& a, const ClusterSummary& b) { return a.cluster_id < b.cluster_id; });
  s += "<g id=\"clusters\">\n";
  for (const auto& c : clusters) {
    const double rho = f.rho(c.centroid.r);
    const double x = f.px(rho, c.centroid.theta);
    const double y = f.py(rho, c.centroid.theta);
    const std::string id = std::to_string(c.cluster_id);
    s += "<circle id=\"cluster-" + id + "\" class=\"cluster-mark\" cx=\"" + svg_number(x) +
         "\" cy=\"" + svg_number(y) + "\" r=\"" + svg_number(c.mark_radius_px) +
         "\" fill=\"white\" fill-opacity=\"0\" stroke=\"" + gray(c.shade) +
         "\" stroke-width=\"2\"><title>cluster " + id + ": " +
         std::to_string(c.count) + " models</title></circle>\n";
    s += "<text id=\"cluster-label-" + id + "\" x=\"" + svg_number(x) + "\" y=\"" +
         svg_number(y) + "\" dy=\"0.35em\" text-anchor=\"middle\" font-size=\"10\">" + id +
         "</text>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

std::string render_detail(const DiagramView& view, const RenderTheme& theme,
                          const ColorMap& colors) {
  const Frame f = frame_in(0, 0, theme.width_px, theme.height_px, theme.margin_px,
                           view.angular_extent, view.radial_min, view.radial_max);
  const bool brushed = view.brush.has_value();
  const std::string axis = brushed ? gray(theme.highlight_gray) : "black";
  const std::string grid = brushed ? gray(theme.highlight_gray) : gray(200);

  std::string s = header(theme.width_px, theme.height_px, theme.font_family);
  s += "<rect id=\"background\" x=\"0\" y=\"0\" width=\"" + svg_number(theme.width_px) +
       "\" height=\"" + svg_number(theme.height_px) + "\" fill=\"white\"/>\n";
  if (brushed) {
    s += "<path id=\"brush-sector\" d=\"" + sector_path(f, 0.0, f.radius) + "\" fill=\"" +
         gray(theme.highlight_gray) + "\" fill-opacity=\"0.35\" stroke=\"none\"/>\n";
  }

  const auto labels = linking_labels(view.kind);
  s += "<g id=\"grid\">\n";
  const auto rticks = nice_ticks(view.radial_min, view.radial_max, 5);
  for (const double t : rticks) {
    const double rho = f.rho(t);
    if (rho <= 0.0) continue;
    s += "<path class=\"grid-arc\" d=\"" + arc_path(f, rho) + "\" fill=\"none\" stroke=\"" +
         grid + "\" stroke-width=\"0.8\"/>\n";
  }
  const auto aticks = angular_ticks(view.kind, view.angular_extent);
  for (const auto& [value, theta] : aticks) {
    s += "<path class=\"grid-ray\" d=\"M" + f.at(0.0, theta) + " L" + f.at(f.radius, theta) +
         "\" stroke=\"" + grid + "\" stroke-width=\"0.6\"/>\n";
  }
  s += "</g>\n";

  s += "<g id=\"distance-arcs\">\n" + distance_arcs(f, view.reference, gray(150)) + "</g>\n";

  s += "<g id=\"axes\">\n";
  s += "<path id=\"outline\" d=\"" + outline_path(f) + "\" fill=\"none\" stroke=\"" + axis +
       "\" stroke-width=\"1.2\"/>\n";
  for (const double t : rticks) {
    const double rho = f.rho(t);
    s += "<path class=\"radial-tick\" d=\"M" + f.at(rho, 0.0) + " l0 5\" stroke=\"" + axis +
         "\"/>\n";
    s += "<text class=\"radial-tick-label\" x=\"" + svg_number(f.px(rho, 0.0)) + "\" y=\"" +
         svg_number(f.cy + 18.0) + "\" text-anchor=\"middle\" font-size=\"11\">" +
         svg_number(t) + "</text>\n";
  }
  for (const auto& [value, theta] : aticks) {
    const double rho = f.radius + 10.0;
    s += "<text class=\"angular-tick-label\" x=\"" + svg_number(f.px(rho, theta)) +
         "\" y=\"" + svg_number(f.py(rho, theta)) + "\" dy=\"0.35em\" text-anchor=\"" +
         anchor_for(theta) + "\" font-size=\"10\">" + svg_number(value) + "</text>\n";
  }
  const double label_x = f.half() ? f.cx + f.radius / 2.0 : f.cx + f.radius / 2.0;
  s += "<text id=\"radial-axis-label\" x=\"" + svg_number(label_x) + "\" y=\"" +
       svg_number(f.cy + 38.0) + "\" text-anchor=\"middle\" font-size=\"13\">" +
       escape(labels[0]) + "</text>\n";
  const double mid = f.extent / 2.0;
  const double lrho = f.radius + 40.0;
  s += "<text id=\"angular-axis-label\" x=\"" + svg_number(f.px(lrho, mid)) + "\" y=\"" +
       svg_number(f.py(lrho, mid)) + "\" text-anchor=\"middle\" font-size=\"13\">" +
       escape(labels[1]) + "</text>\n";
  s += "</g>\n";

  if (in_frame(f, view.reference.r)) {
    const double rho = f.rho(view.reference.r);
    s += "<path id=\"reference-mark\" d=\"" + diamond(f.px(rho, 0.0), f.py(rho, 0.0), 7.0) +
         "\" fill=\"" + colors.reference() + "\"><title>" + escape(view.reference.model_id) +
         " (reference)</title></path>\n";
  }

  s += "<g id=\"marks\">\n";
  for (const auto& p : view.points) {
    const double rho = f.rho(p.r);
    const std::string& color = colors(p.model_id);
    s += "<circle id=\"mark-" + sanitize(p.model_id) + "\" class=\"model-mark\" cx=\"" +
         svg_number(f.px(rho, p.theta)) + "\" cy=\"" + svg_number(f.py(rho, p.theta)) +
         "\" r=\"" + svg_number(theme.mark_radius_px) + "\" fill=\"" + color +
         "\" fill-opacity=\"" + svg_number(theme.fill_alpha) + "\" stroke=\"" + color +
         "\"><title>" + escape(tooltip(view.kind, p)) + "</title></circle>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace

void RenderTheme::validate() const {
  if (!(width_px > 0.0) || !(height_px > 0.0) || !(margin_px >= 0.0) ||
      !(mark_radius_px > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "theme sizes must be positive");
  }
  if (!(fill_alpha > 0.0 && fill_alpha < 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "fill_alpha must lie in (0, 1)");
  }
  if (highlight_gray < 0 || highlight_gray > 255) {
    throw Error(ErrorCode::kInvalidConfig, "highlight_gray must lie in 0..255");
  }
  if (palette.empty()) throw Error(ErrorCode::kInvalidConfig, "palette is empty");
}

RenderTheme parse_theme(std::string_view text) {
  RenderTheme theme;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto trim = [](std::string v) {
    const auto b = v.find_first_not_of(" \t\r");
    const auto e = v.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
  };
  auto number = [&](const std::string& v, const std::string& key) {
    try {
      std::size_t used = 0;
      const double d = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(key);
      return d;
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidConfig, "theme line " + std::to_string(line_no) +
                                                 ": '" + key + "' needs a number");
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos && line.find('=') > hash) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kInvalidConfig,
                  "theme line " + std::to_string(line_no) + " has no '='");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "width") {
      theme.width_px = number(value, key);
    } else if (key == "height") {
      theme.height_px = number(value, key);
    } else if (key == "margin") {
      theme.margin_px = number(value, key);
    } else if (key == "font_family") {
      theme.font_family = value;
    } else if (key == "mark_radius") {
      theme.mark_radius_px = number(value, key);
    } else if (key == "highlight_gray") {
      theme.highlight_gray = static_cast<int>(number(value, key));
    } else if (key == "fill_alpha") {
      theme.fill_alpha = number(value, key);
    } else if (key == "palette") {
      theme.palette.clear();
      std::istringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) {
        item = trim(item);
        if (!item.empty()) theme.palette.push_back(item);
      }
    } else {
      throw Error(ErrorCode::kInvalidConfig, "unknown theme key '" + key + "'");
    }
  }
  theme.validate();
  return theme;
}

double plot_radius_px(const RenderTheme& theme, double angular_extent) {
  return frame_in(0, 0, theme.width_px, theme.height_px, theme.margin_px, angular_extent,
                  0.0, 1.0)
      .radius;
}

ScreenScale screen_scale(const RenderTheme& theme, double angular_extent) {
  return {plot_radius_px(theme, angular_extent), theme.mark_radius_px};
}

std::string svg_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

std::string render(const DiagramView& view, const RenderTheme& theme,
                   const std::vector<std::string>& legend) {
  theme.validate();
  const ColorMap colors(theme, legend.empty() ? ids_of(view) : legend);
  switch (view.role) {
    case ViewRole::kOverview: return render_overview(view, theme);
    case ViewRole::kDetail:
    case ViewRole::kGridCell: return render_detail(view, theme, colors);
  }
  return {};
}

std::string render(const LinkingAxes& linking, const RenderTheme& theme,
                   const std::vector<std::string>& legend) {
  theme.validate();
  std::vector<std::string> ids = legend;
  if (ids.empty()) {
    for (const auto& e : linking.axes[0].entries) ids.push_back(e.model_id);
    std::sort(ids.begin(), ids.end());
  }
  const ColorMap colors(theme, ids);
  const double w = theme.width_px;
  const double h = theme.height_px;
  const double m = theme.margin_px;
  const double x0 = m;
  const double x1 = w - m;
  const double band = (h - 2.0 * m) / 3.0;

  std::string s = header(w, h, theme.font_family);
  s += "<rect id=\"background\" x=\"0\" y=\"0\" width=\"" + svg_number(w) + "\" height=\"" +
       svg_number(h) + "\" fill=\"white\"/>\n";
  const auto& hl = linking.highlighted;
  for (std::size_t a = 0; a < 3; ++a) {
    const auto& axis = linking.axes[a];
    double lo = 0.0;
    double hi = a == 1 ? 1.0 : 0.0;
    for (const auto& e : axis.entries) {
      lo = std::min(lo, e.value);
      hi = std::max(hi, e.value);
    }
    if (a == 1 && lo < 0.0) lo = -1.0;
    if (!(hi > lo)) hi = lo + 1.0;
    const double step = nice_step(hi - lo, 5);
    hi = std::ceil(hi / step - 1e-9) * step;
    lo = std::floor(lo / step + 1e-9) * step;
    auto xof = [&](double v) { return x0 + (v - lo) / (hi - lo) * (x1 - x0); };
    const double y = m + band * (static_cast<double>(a) + 0.5);

    s += "<g id=\"axis-" + std::to_string(a) + "\">\n";
    s += "<path class=\"axis-line\" d=\"M" + svg_number(x0) + " " + svg_number(y) + " L" +
         svg_number(x1) + " " + svg_number(y) + "\" stroke=\"black\"/>\n";
    for (const double t : nice_ticks(lo, hi, 5)) {
      s += "<path class=\"axis-tick\" d=\"M" + svg_number(xof(t)) + " " + svg_number(y) +
           " l0 5\" stroke=\"black\"/>\n";
      s += "<text class=\"axis-tick-label\" x=\"" + svg_number(xof(t)) + "\" y=\"" +
           svg_number(y + 18.0) + "\" text-anchor=\"middle\" font-size=\"10\">" +
           svg_number(t) + "</text>\n";
    }
    s += "<text class=\"axis-label\" x=\"" + svg_number(x0) + "\" y=\"" +
         svg_number(y - 16.0) + "\" text-anchor=\"start\" font-size=\"12\">" +
         escape(axis.label) + "</text>\n";
    auto entries = axis.entries;
    std::sort(entries.begin(), entries.end(),
              [](const AxisEntry& l, const AxisEntry& r) { return l.model_id < r.model_id; });
    for (const auto& e : entries) {
      const bool lit = hl.empty() || std::binary_search(hl.begin(), hl.end(), e.model_id);
      const std::string& color = colors(e.model_id);
      s += "<circle id=\"link-" + std::to_string(a) + "-" + sanitize(e.model_id) +
           "\" class=\"link-mark\" cx=\"" + svg_number(xof(e.value)) + "\" cy=\"" +
           svg_number(y) + "\" r=\"" + svg_number(theme.mark_radius_px * 0.8) + "\" fill=\"" +
           color + "\" fill-opacity=\"" + svg_number(lit ? theme.fill_alpha : 0.15) +
           "\" stroke=\"" + color + "\" stroke-opacity=\"" + (lit ? "1" : "0.15") +
           "\"><title>" + escape(e.model_id) + ": " + svg_number(e.value) +
           "</title></circle>\n";
    }
    s += "</g>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string render(const GridLayout& grid, const RenderTheme& theme) {
  theme.validate();
  const ColorMap colors(theme, grid.legend);
  const double cell_w = theme.width_px / static_cast<double>(grid.cols);
  const double cell_h = theme.height_px / 2.0;
  const double margin = theme.margin_px / 2.0;
  constexpr double kLegendRow = 18.0;
  constexpr double kLegendColumn = 150.0;
  const auto per_row =
      std::max<std::size_t>(1, static_cast<std::size_t>(theme.width_px / kLegendColumn));
  const std::size_t legend_rows = (grid.legend.size() + per_row - 1) / per_row;
  const double legend_top = static_cast<double>(grid.rows) * cell_h;
  const double h = legend_top + 16.0 + static_cast<double>(legend_rows) * kLegendRow;

  std::string s = header(theme.width_px, h, theme.font_family);
  s += "<rect id=\"background\" x=\"0\" y=\"0\" width=\"" + svg_number(theme.width_px) +
       "\" height=\"" + svg_number(h) + "\" fill=\"white\"/>\n";
  const double r = theme.mark_radius_px * 0.7;
  for (std::size_t i = 0; i < grid.cells.size(); ++i) {
    const auto& cell = grid.cells[i];
    const auto& v = cell.view;
    const double cx = static_cast<double>(i % grid.cols) * cell_w;
    const double cy = static_cast<double>(i / grid.cols) * cell_h;
    const Frame f = frame_in(cx, cy, cell_w, cell_h, margin, v.angular_extent,
                             v.radial_min, v.radial_max);
    s += "<g id=\"cell-" + std::to_string(i + 1) + "\">\n";
    s += "<path class=\"outline\" d=\"" + outline_path(f) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (const double t : nice_ticks(v.radial_min, v.radial_max, 4)) {
      const double rho = f.rho(t);
      if (rho <= 0.0) continue;
      s += "<path class=\"grid-arc\" d=\"" + arc_path(f, rho) +
           "\" fill=\"none\" stroke=\"" + gray(200) + "\" stroke-width=\"0.6\"/>\n";
    }
    s += "<text class=\"annotation\" x=\"" + svg_number(cx + cell_w - 8.0) + "\" y=\"" +
         svg_number(cy + 16.0) + "\" text-anchor=\"end\" font-size=\"11\">" +
         escape(cell.annotation) + "</text>\n";
    const double ref_rho = f.rho(v.reference.r);
    s += "<path class=\"reference-mark\" d=\"" +
         diamond(f.px(ref_rho, 0.0), f.py(ref_rho, 0.0), 5.0) + "\" fill=\"" +
         colors.reference() + "\"/>\n";

    std::map<std::string, const DiagramPoint*> before;
    for (const auto& p : v.previous_points) before[p.model_id] = &p;
    for (const auto& p : v.points) {
      const std::string& color = colors(p.model_id);
      const double rho = f.rho(p.r);
      const std::string now = svg_number(f.px(rho, p.theta)) + " " +
                              svg_number(f.py(rho, p.theta));
      const auto it = before.find(p.model_id);
      if (it != before.end()) {
        const DiagramPoint& q = *it->second;
        const double qrho = f.rho(q.r);
        s += "<path class=\"version-link\" d=\"M" + f.at(qrho, q.theta) + " L" + now +
             "\" stroke=\"" + color + "\" stroke-width=\"0.8\"/>\n";
        s += "<circle class=\"mark-previous\" data-model=\"" + escape(q.model_id) +
             "\" cx=\"" + svg_number(f.px(qrho, q.theta)) + "\" cy=\"" +
             svg_number(f.py(qrho, q.theta)) + "\" r=\"" + svg_number(r) +
             "\" fill=\"none\" stroke=\"" + color + "\"/>\n";
      }
      s += "<circle class=\"mark-current\" data-model=\"" + escape(p.model_id) +
           "\" cx=\"" + svg_number(f.px(rho, p.theta)) + "\" cy=\"" +
           svg_number(f.py(rho, p.theta)) + "\" r=\"" + svg_number(r) + "\" fill=\"" + color +
           "\" fill-opacity=\"" + svg_number(theme.fill_alpha) + "\" stroke=\"" + color +
           "\"><title>" + escape(tooltip(v.kind, p)) + "</title></circle>\n";
    }
    s += "</g>\n";
  }

  s += "<g id=\"legend\">\n";
  for (std::size_t k = 0; k < grid.legend.size(); ++k) {
    const double x = 8.0 + static_cast<double>(k % per_row) * kLegendColumn;
    const double y = legend_top + 16.0 + static_cast<double>(k / per_row) * kLegendRow;
    const auto& id = grid.legend[k];
    s += "<rect class=\"legend-swatch\" x=\"" + svg_number(x) + "\" y=\"" +
         svg_number(y - 10.0) + "\" width=\"10\" height=\"10\" fill=\"" + colors(id) + "\"/>\n";
    s += "<text class=\"legend-label\" x=\"" + svg_number(x + 14.0) + "\" y=\"" +
         svg_number(y) + "\" font-size=\"11\">" + escape(id) + "</text>\n";
  }
  s += "</g>\n</svg>\n";
  return s;
}

std::string render_size_legend(const std::vector<ClusterSummary>& clusters,
                               const RenderTheme& theme) {
  theme.validate();
  std::size_t count_max = 1;
  for (const auto& c : clusters) count_max = std::max(count_max, c.count);
  const double w = 160.0;
  const double h = 70.0;
  std::string s = header(w, h, theme.font_family);
  s += "<text x=\"8\" y=\"14\" font-size=\"11\">models per cluster</text>\n";
  std::vector<std::size_t> counts = {1};
  if (count_max > 1) counts.push_back(count_max);
  double x = 30.0;
  for (const std::size_t c : counts) {
    const double r = mark_radius_px(c, count_max);
    s += "<circle class=\"size-legend-mark\" cx=\"" + svg_number(x) + "\" cy=\"40\" r=\"" +
         svg_number(r) + "\" fill=\"none\" stroke=\"black\"/>\n";
    s += "<text x=\"" + svg_number(x) + "\" y=\"" + svg_number(40.0 + kClusterMarkMaxPx + 10.0) +
         "\" text-anchor=\"middle\" font-size=\"10\">" + std::to_string(c) + "</text>\n";
    x += 60.0;
  }
  s += "</svg>\n";
  return s;
}

}  // namespace polars
