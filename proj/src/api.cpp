#include "polars/api.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include <httplib.h>

#include "polars/error.hpp"

namespace polars {

namespace {

ApiResponse json_response(int status, const Json& j) {
  return {status, "application/json", j.dump()};
}

ApiResponse error_response(const Error& e) {
  Json body;
  body["error"] = {{"code", error_code_name(e.code())}, {"message", e.what()}};
  return json_response(http_status(e.code()), body);
}

// Wraps a handler body: polars::Error -> structured error, anything else the
// request carried that the JSON layer rejects -> 422 ParseError.
template <typename Fn>
ApiResponse guarded(Fn fn) {
  try {
    return fn();
  } catch (const Error& e) {
    return error_response(e);
  } catch (const nlohmann::json::exception& e) {
    return error_response(Error(ErrorCode::kParseError, std::string("bad request body: ") + e.what()));
  }
}

Json parse_body(std::string_view body) {
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("request body is not JSON: ") + e.what());
  }
}

double query_number(const std::string& key, const std::string& value) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidConfig, "query parameter '" + key + "' is not a number");
  }
  return v;
}

std::size_t positive_count(const Json& j, const char* key) {
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    throw Error(ErrorCode::kInvalidConfig, std::string(key) + " must be a positive integer");
  }
  return j.get<std::size_t>();
}

}  // namespace

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownDataset:
    case ErrorCode::kDatasetUnavailable:
      return 404;
    case ErrorCode::kModelCapExceeded:
    case ErrorCode::kTooManyModels:
      return 409;
    default:
      return 422;
  }
}

ViewRequest parse_view_request(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kParseError, "view request must be a JSON object");
  ViewRequest r;
  if (!j.contains("dataset_id") || !j["dataset_id"].is_string()) {
    throw Error(ErrorCode::kInvalidConfig, "dataset_id (string) is required");
  }
  r.dataset_id = j["dataset_id"].get<std::string>();
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw Error(ErrorCode::kInvalidConfig, "kind must be one of taylor, smi, nmi");
  }
  r.kind = parse_kind(j["kind"].get<std::string>());
  if (j.contains("brush") && !j["brush"].is_null()) {
    const auto& b = j["brush"];
    if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number()) {
      throw Error(ErrorCode::kInvalidInterval, "brush must be [r0, r1]");
    }
    r.brush = RadialInterval{b[0].get<double>(), b[1].get<double>()};
  }
  if (j.contains("hidden")) {
    for (const auto& id : j["hidden"]) {
      if (!id.is_string()) throw Error(ErrorCode::kUnknownModelId, "hidden ids must be strings");
      r.hidden.push_back(id.get<std::string>());
    }
  }
  if (j.contains("selected_cluster") && !j["selected_cluster"].is_null()) {
    if (!j["selected_cluster"].is_number_integer()) {
      throw Error(ErrorCode::kInvalidConfig, "selected_cluster must be an integer");
    }
    r.selected_cluster = j["selected_cluster"].get<int>();
  }
  if (j.contains("bins") && !j["bins"].is_null()) r.binning.bin_count = positive_count(j["bins"], "bins");
  if (j.contains("log_base")) r.binning.log_base = j["log_base"].get<double>();
  if (j.contains("eps")) r.clustering.eps = j["eps"].get<double>();
  if (j.contains("min_pts")) r.clustering.min_pts = positive_count(j["min_pts"], "min_pts");
  return r;
}

Api::Api(Catalog catalog, RenderTheme theme)
    : catalog_(std::move(catalog)), theme_(std::move(theme)) {
  theme_.validate();
}

const CatalogEntry& Api::entry(const std::string& id) const {
  const CatalogEntry* e = catalog_.find(id);
  if (e == nullptr) throw Error(ErrorCode::kUnknownDataset, "unknown dataset '" + id + "'");
  if (!e->available()) {
    if (*e->load_error == ErrorCode::kTooManyModels) {
      throw Error(ErrorCode::kModelCapExceeded, e->load_message);
    }
    throw Error(ErrorCode::kDatasetUnavailable,
                "dataset '" + id + "' is unavailable: " + e->load_message);
  }
  return *e;
}

ViewSet make_view_set(const Dataset& dataset, const ViewRequest& request,
                      const RenderTheme& theme) {
  ViewSet v = build_views(dataset, request.kind, request.clustering, request.binning,
                          screen_scale(theme, std::numbers::pi));
  const ScreenScale screen = screen_scale(theme, v.overview.angular_extent);
  if (screen != v.screen) {
    v = build_views(dataset, request.kind, request.clustering, request.binning, screen);
  }
  if (request.brush) v = apply_radial_brush(v, request.brush->r0, request.brush->r1);
  for (const auto& id : request.hidden) {
    if (std::binary_search(v.hidden.begin(), v.hidden.end(), id)) continue;
    v = apply_legend_action(v, SingleClick{id});
  }
  if (request.selected_cluster) {
    const ClusterSummary* target = nullptr;
    for (const auto& c : v.overview.clusters) {
      if (c.cluster_id == *request.selected_cluster) target = &c;
    }
    if (target == nullptr) {
      throw Error(ErrorCode::kInvalidConfig,
                  "no cluster " + std::to_string(*request.selected_cluster));
    }
    v = apply_legend_action(v, DoubleClick{target->member_ids.front()});
  }
  return v;
}

std::string render_view(const ViewSet& views, std::string_view which, const RenderTheme& theme) {
  std::vector<std::string> legend;
  for (const auto& p : views.overview.points) legend.push_back(p.model_id);
  if (which == "overview") return render(views.overview, theme, legend);
  if (which == "detail") return render(views.detail, theme, legend);
  if (which == "linking") return render(views.linking, theme, legend);
  if (which == "size-legend") return render_size_legend(views.overview.clusters, theme);
  throw Error(ErrorCode::kInvalidConfig, "unknown view '" + std::string(which) +
                                             "' (overview, detail, linking, grid, size-legend)");
}

ViewSet Api::compute_view(const ViewRequest& request) const {
  const CatalogEntry& e = entry(request.dataset_id);
  const auto* dataset = std::get_if<Dataset>(&e.data);
  if (dataset == nullptr) {
    throw Error(ErrorCode::kInvalidConfig,
                "dataset '" + request.dataset_id + "' is versioned; request /api/grid");
  }
  return make_view_set(*dataset, request, theme_);
}

GridLayout Api::compute_grid(const std::string& dataset_id, DiagramKind kind,
                             const BinningConfig& binning) const {
  const CatalogEntry& e = entry(dataset_id);
  const auto* versioned = std::get_if<VersionedDataset>(&e.data);
  if (versioned == nullptr) {
    throw Error(ErrorCode::kTooFewVersions, "dataset '" + dataset_id + "' has no versions");
  }
  return small_multiples(*versioned, kind, binning);
}

ApiResponse Api::datasets() const {
  Json list = Json::array();
  for (const auto& e : catalog_.entries()) {
    Json d;
    d["id"] = e.meta.id;
    d["title"] = e.meta.title;
    d["provenance"] = e.meta.provenance;
    d["model_count"] = e.model_count();
    d["versioned"] = e.versioned();
    d["available"] = e.available();
    if (const auto* v = std::get_if<VersionedDataset>(&e.data)) {
      d["version_count"] = v->versions.size();
    }
    if (!e.available()) {
      d["error"] = {{"code", error_code_name(*e.load_error)}, {"message", e.load_message}};
    }
    list.push_back(d);
  }
  return json_response(200, Json{{"datasets", list}});
}

ApiResponse Api::view(std::string_view body) const {
  return guarded([&] {
    const ViewRequest request = parse_view_request(parse_body(body));
    return json_response(200, to_json(compute_view(request)));
  });
}

ApiResponse Api::grid(std::string_view body) const {
  return guarded([&] {
    const Json j = parse_body(body);
    const ViewRequest request = parse_view_request(j);
    return json_response(200, to_json(compute_grid(request.dataset_id, request.kind, request.binning)));
  });
}

ApiResponse Api::export_svg(const std::map<std::string, std::string>& query) const {
  return guarded([&] {
    auto get = [&](const std::string& key) -> std::optional<std::string> {
      const auto it = query.find(key);
      if (it == query.end()) return std::nullopt;
      return it->second;
    };
    Json j;
    j["dataset_id"] = get("dataset").value_or("");
    j["kind"] = get("kind").value_or("taylor");
    if (get("r0") || get("r1")) {
      if (!get("r0") || !get("r1")) throw Error(ErrorCode::kInvalidInterval, "brush needs both r0 and r1");
      j["brush"] = {query_number("r0", *get("r0")), query_number("r1", *get("r1"))};
    }
    if (const auto hidden = get("hidden"); hidden && !hidden->empty()) {
      std::stringstream ss(*hidden);
      std::string id;
      Json ids = Json::array();
      while (std::getline(ss, id, ',')) ids.push_back(id);
      j["hidden"] = ids;
    }
    if (const auto c = get("cluster")) j["selected_cluster"] = static_cast<int>(query_number("cluster", *c));
    if (const auto b = get("bins")) j["bins"] = static_cast<long long>(query_number("bins", *b));
    if (const auto e = get("eps")) j["eps"] = query_number("eps", *e);
    if (const auto m = get("min_pts")) j["min_pts"] = static_cast<long long>(query_number("min_pts", *m));

    const std::string which = get("view").value_or("detail");
    const ViewRequest request = parse_view_request(j);
    std::string svg;
    if (which == "grid") {
      svg = render(compute_grid(request.dataset_id, request.kind, request.binning), theme_);
    } else {
      if (which != "overview" && which != "detail" && which != "linking" && which != "size-legend") {
        throw Error(ErrorCode::kInvalidConfig, "unknown view '" + which + "'");
      }
      svg = render_view(compute_view(request), which, theme_);
    }
    return ApiResponse{200, "image/svg+xml", std::move(svg)};
  });
}

void mount_routes(httplib::Server& server, const Api& api) {
  auto send = [](httplib::Response& res, const ApiResponse& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  server.Get("/api/datasets", [&api, send](const httplib::Request&, httplib::Response& res) {
    send(res, api.datasets());
  });
  server.Post("/api/view", [&api, send](const httplib::Request& req, httplib::Response& res) {
    send(res, api.view(req.body));
  });
  server.Post("/api/grid", [&api, send](const httplib::Request& req, httplib::Response& res) {
    send(res, api.grid(req.body));
  });
  server.Get("/api/export.svg", [&api, send](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query[k] = v;
    send(res, api.export_svg(query));
  });
}

}  // namespace polars
