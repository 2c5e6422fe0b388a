#include "polars/serialize.hpp"

#include <string>

#include "polars/error.hpp"

namespace polars {

namespace {

Json string_list(const std::vector<std::string>& ids) {
  Json a = Json::array();
  for (const auto& id : ids) a.push_back(id);
  return a;
}

std::vector<std::string> strings_from(const Json& j) {
  std::vector<std::string> out;
  for (const auto& v : j) out.push_back(v.get<std::string>());
  return out;
}

Json points_json(const std::vector<DiagramPoint>& points) {
  Json a = Json::array();
  for (const auto& p : points) a.push_back(to_json(p));
  return a;
}

std::vector<DiagramPoint> points_from(const Json& j) {
  std::vector<DiagramPoint> out;
  for (const auto& p : j) out.push_back(point_from_json(p));
  return out;
}

Json warnings_json(const std::vector<Warning>& warnings) {
  Json a = Json::array();
  for (const auto& w : warnings) a.push_back(to_json(w));
  return a;
}

std::vector<Warning> warnings_from(const Json& j) {
  std::vector<Warning> out;
  for (const auto& w : j) out.push_back(warning_from_json(w));
  return out;
}

}  // namespace

std::string_view warning_code_name(WarningCode code) {
  switch (code) {
    case WarningCode::kOcclusion: return "OCCLUSION";
    case WarningCode::kModelCap: return "MODEL_CAP";
    case WarningCode::kGridSize: return "GRID_SIZE";
    case WarningCode::kDegenerateEntropy: return "DEGENERATE_ENTROPY";
  }
  return "OCCLUSION";
}

WarningCode parse_warning_code(std::string_view name) {
  for (const auto c : {WarningCode::kOcclusion, WarningCode::kModelCap,
                       WarningCode::kGridSize, WarningCode::kDegenerateEntropy}) {
    if (warning_code_name(c) == name) return c;
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown warning code '" + std::string(name) + "'");
}

std::string_view role_name(ViewRole role) {
  switch (role) {
    case ViewRole::kOverview: return "overview";
    case ViewRole::kDetail: return "detail";
    case ViewRole::kGridCell: return "grid_cell";
  }
  return "detail";
}

ViewRole parse_role(std::string_view name) {
  for (const auto r : {ViewRole::kOverview, ViewRole::kDetail, ViewRole::kGridCell}) {
    if (role_name(r) == name) return r;
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown view role '" + std::string(name) + "'");
}

Json to_json(const MetricTriple& metrics) {
  Json j;
  if (const auto* t = std::get_if<TaylorMetrics>(&metrics)) {
    j["flavor"] = "taylor";
    j["sigma_ref"] = t->sigma_ref;
    j["sigma_model"] = t->sigma_model;
    j["correlation"] = t->correlation;
    j["crmse"] = t->crmse;
  } else {
    const auto& m = std::get<InfoMetrics>(metrics);
    j["flavor"] = "info";
    j["h_ref"] = m.h_ref;
    j["h_model"] = m.h_model;
    j["mi"] = m.mi;
    j["smi"] = m.smi;
    j["nmi"] = m.nmi;
    j["vi"] = m.vi;
    j["rvi"] = m.rvi;
    j["degenerate"] = m.degenerate;
  }
  return j;
}

MetricTriple metrics_from_json(const Json& j) {
  if (j.at("flavor") == "taylor") {
    return TaylorMetrics{j.at("sigma_ref"), j.at("sigma_model"), j.at("correlation"),
                         j.at("crmse")};
  }
  InfoMetrics m;
  m.h_ref = j.at("h_ref");
  m.h_model = j.at("h_model");
  m.mi = j.at("mi");
  m.smi = j.at("smi");
  m.nmi = j.at("nmi");
  m.vi = j.at("vi");
  m.rvi = j.at("rvi");
  m.degenerate = j.at("degenerate");
  return m;
}

Json to_json(const DiagramPoint& p) {
  Json j;
  j["model_id"] = p.model_id;
  j["r"] = p.r;
  j["theta"] = p.theta;
  j["x"] = p.x;
  j["y"] = p.y;
  j["degenerate"] = p.degenerate;
  j["metrics"] = to_json(p.metrics);
  return j;
}

DiagramPoint point_from_json(const Json& j) {
  DiagramPoint p;
  p.model_id = j.at("model_id");
  p.r = j.at("r");
  p.theta = j.at("theta");
  p.x = j.at("x");
  p.y = j.at("y");
  p.degenerate = j.at("degenerate");
  p.metrics = metrics_from_json(j.at("metrics"));
  return p;
}

Json to_json(const ClusterSummary& c) {
  Json j;
  j["cluster_id"] = c.cluster_id;
  j["member_ids"] = string_list(c.member_ids);
  j["count"] = c.count;
  j["shade"] = c.shade;
  j["mark_radius_px"] = c.mark_radius_px;
  j["distance"] = c.distance;
  j["centroid"] = to_json(c.centroid);
  return j;
}

ClusterSummary cluster_from_json(const Json& j) {
  ClusterSummary c;
  c.cluster_id = j.at("cluster_id");
  c.member_ids = strings_from(j.at("member_ids"));
  c.count = j.at("count");
  c.shade = j.at("shade");
  c.mark_radius_px = j.at("mark_radius_px");
  c.distance = j.at("distance");
  c.centroid = point_from_json(j.at("centroid"));
  return c;
}

Json to_json(const Warning& w) {
  Json j;
  j["code"] = warning_code_name(w.code);
  j["affected_ids"] = string_list(w.affected_ids);
  j["message"] = w.message;
  return j;
}

Warning warning_from_json(const Json& j) {
  return {parse_warning_code(j.at("code").get<std::string>()),
          strings_from(j.at("affected_ids")), j.at("message")};
}

Json to_json(const DiagramView& v) {
  Json j;
  j["kind"] = kind_name(v.kind);
  j["role"] = role_name(v.role);
  j["reference"] = to_json(v.reference);
  j["points"] = points_json(v.points);
  if (v.role == ViewRole::kGridCell) j["previous_points"] = points_json(v.previous_points);
  if (v.role == ViewRole::kOverview) {
    Json clusters = Json::array();
    for (const auto& c : v.clusters) clusters.push_back(to_json(c));
    j["clusters"] = clusters;
  }
  j["radial_min"] = v.radial_min;
  j["radial_max"] = v.radial_max;
  j["angular_extent"] = v.angular_extent;
  j["brush"] = v.brush ? Json::array({v.brush->r0, v.brush->r1}) : Json();
  j["selection"] = string_list(v.selection);
  j["warnings"] = warnings_json(v.warnings);
  // Overviews drop ticks, axis labels and grid lines.
  j["simplified"] = v.role == ViewRole::kOverview;
  return j;
}

DiagramView view_from_json(const Json& j) {
  DiagramView v;
  v.kind = parse_kind(j.at("kind").get<std::string>());
  v.role = parse_role(j.at("role").get<std::string>());
  v.reference = point_from_json(j.at("reference"));
  v.points = points_from(j.at("points"));
  if (j.contains("previous_points")) v.previous_points = points_from(j.at("previous_points"));
  if (j.contains("clusters")) {
    for (const auto& c : j.at("clusters")) v.clusters.push_back(cluster_from_json(c));
  }
  v.radial_min = j.at("radial_min");
  v.radial_max = j.at("radial_max");
  v.angular_extent = j.at("angular_extent");
  if (!j.at("brush").is_null()) v.brush = RadialInterval{j.at("brush")[0], j.at("brush")[1]};
  v.selection = strings_from(j.at("selection"));
  v.warnings = warnings_from(j.at("warnings"));
  return v;
}

Json to_json(const LinkingAxes& l) {
  Json j;
  j["kind"] = kind_name(l.kind);
  Json axes = Json::array();
  for (const auto& axis : l.axes) {
    Json a;
    a["label"] = axis.label;
    Json entries = Json::array();
    for (const auto& e : axis.entries) entries.push_back({{"model_id", e.model_id}, {"value", e.value}});
    a["entries"] = entries;
    axes.push_back(a);
  }
  j["axes"] = axes;
  j["highlighted"] = string_list(l.highlighted);
  return j;
}

LinkingAxes linking_from_json(const Json& j) {
  LinkingAxes l;
  l.kind = parse_kind(j.at("kind").get<std::string>());
  const auto& axes = j.at("axes");
  if (axes.size() != 3) throw Error(ErrorCode::kInvalidConfig, "linking needs 3 axes");
  for (std::size_t a = 0; a < 3; ++a) {
    l.axes[a].label = axes[a].at("label");
    for (const auto& e : axes[a].at("entries")) {
      l.axes[a].entries.push_back({e.at("model_id"), e.at("value")});
    }
  }
  l.highlighted = strings_from(j.at("highlighted"));
  return l;
}

Json to_json(const ViewSet& v) {
  Json j;
  j["dataset_id"] = v.dataset_id;
  j["kind"] = kind_name(v.overview.kind);
  Json state;
  state["brush"] = v.overview.brush ? Json::array({v.overview.brush->r0, v.overview.brush->r1}) : Json();
  state["hidden"] = string_list(v.hidden);
  state["selected_cluster"] = v.selected_cluster ? Json(*v.selected_cluster) : Json();
  state["screen"] = {{"plot_radius_px", v.screen.plot_radius_px},
                     {"mark_radius_px", v.screen.mark_radius_px}};
  j["state"] = state;
  j["overview"] = to_json(v.overview);
  j["detail"] = to_json(v.detail);
  j["linking"] = to_json(v.linking);

  // Exact values shown by hovering a detail mark, keyed by model id.
  Json tooltips = Json::object();
  const auto labels = linking_labels(v.overview.kind);
  for (const auto& p : v.overview.points) {
    const auto values = linking_values(v.overview.kind, p.metrics);
    Json t = Json::object();
    for (std::size_t a = 0; a < 3; ++a) t[labels[a]] = values[a];
    t["metrics"] = to_json(p.metrics);
    tooltips[p.model_id] = t;
  }
  j["tooltips"] = tooltips;

  Json legend = Json::array();
  for (const auto& p : v.overview.points) {
    int cluster = 0;
    for (const auto& c : v.overview.clusters) {
      if (std::binary_search(c.member_ids.begin(), c.member_ids.end(), p.model_id)) {
        cluster = c.cluster_id;
      }
    }
    legend.push_back({{"model_id", p.model_id},
                      {"cluster_id", cluster},
                      {"visible", !std::binary_search(v.hidden.begin(), v.hidden.end(), p.model_id)}});
  }
  j["legend"] = legend;
  j["warnings"] = warnings_json(v.detail.warnings);
  return j;
}

ViewSet viewset_from_json(const Json& j) {
  ViewSet v;
  v.dataset_id = j.at("dataset_id");
  const auto& state = j.at("state");
  v.hidden = strings_from(state.at("hidden"));
  if (!state.at("selected_cluster").is_null()) v.selected_cluster = state.at("selected_cluster").get<int>();
  v.screen.plot_radius_px = state.at("screen").at("plot_radius_px");
  v.screen.mark_radius_px = state.at("screen").at("mark_radius_px");
  v.overview = view_from_json(j.at("overview"));
  v.detail = view_from_json(j.at("detail"));
  v.linking = linking_from_json(j.at("linking"));
  return v;
}

Json to_json(const GridLayout& g) {
  Json j;
  j["rows"] = g.rows;
  j["cols"] = g.cols;
  Json cells = Json::array();
  for (const auto& c : g.cells) cells.push_back({{"annotation", c.annotation}, {"view", to_json(c.view)}});
  j["cells"] = cells;
  j["legend"] = string_list(g.legend);
  j["warnings"] = warnings_json(g.warnings);
  return j;
}

GridLayout grid_from_json(const Json& j) {
  GridLayout g;
  g.rows = j.at("rows");
  g.cols = j.at("cols");
  for (const auto& c : j.at("cells")) g.cells.push_back({c.at("annotation"), view_from_json(c.at("view"))});
  g.legend = strings_from(j.at("legend"));
  g.warnings = warnings_from(j.at("warnings"));
  return g;
}

}  // namespace polars
