#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polars/catalog.hpp"
#include "polars/serialize.hpp"
#include "polars/svg.hpp"
#include "polars/view_state.hpp"

namespace httplib {
class Server;
}

namespace polars {

struct ViewRequest {
  std::string dataset_id;
  DiagramKind kind = DiagramKind::kTaylor;
  std::optional<RadialInterval> brush;
  std::vector<std::string> hidden;
  std::optional<int> selected_cluster;
  BinningConfig binning;
  ClusteringConfig clustering;
};

// Accepts {"dataset_id", "kind", "brush"?: [r0, r1], "hidden"?: [ids],
// "selected_cluster"?: id, "bins"?: n, "log_base"?: b, "eps"?: e,
// "min_pts"?: k}. Throws Error(kParseError | kInvalidConfig).
ViewRequest parse_view_request(const Json& j);

// Builds the view set for a request the way the service does: screen scale
// from the theme, then brush, hidden models and cluster selection in that
// order. Unknown hidden ids and cluster ids throw.
ViewSet make_view_set(const Dataset& dataset, const ViewRequest& request,
                      const RenderTheme& theme);

// which: overview | detail | linking | size-legend.
std::string render_view(const ViewSet& views, std::string_view which, const RenderTheme& theme);

struct ApiResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

// 404 unknown dataset, 409 model cap, 422 everything else the client sent.
int http_status(ErrorCode code);

// Request handling without sockets. Every method is const and the catalog is
// read-only, so one Api serves concurrent requests.
class Api {
 public:
  Api(Catalog catalog, RenderTheme theme);

  ApiResponse datasets() const;
  ApiResponse view(std::string_view body) const;
  ApiResponse grid(std::string_view body) const;
  // Query keys: dataset, kind, view (overview | detail | linking | grid |
  // size-legend), r0, r1, hidden (comma list), cluster, bins, eps, min_pts.
  ApiResponse export_svg(const std::map<std::string, std::string>& query) const;

  // Throw polars::Error; the handlers above map it to a status.
  ViewSet compute_view(const ViewRequest& request) const;
  GridLayout compute_grid(const std::string& dataset_id, DiagramKind kind,
                          const BinningConfig& binning) const;

  const Catalog& catalog() const { return catalog_; }
  const RenderTheme& theme() const { return theme_; }

 private:
  const CatalogEntry& entry(const std::string& id) const;

  Catalog catalog_;
  RenderTheme theme_;
};

// Routes: GET /api/datasets, POST /api/view, POST /api/grid,
// GET /api/export.svg.
void mount_routes(httplib::Server& server, const Api& api);

}  // namespace polars
