#pragma once

// JSON wire format for the HTTP API (schema: docs/api-schema.json). Every
// to_json has a from_json twin; serialize -> parse -> serialize is the
// identity on payloads.

#include <json.hpp>

#include "polars/view_state.hpp"

namespace polars {

using Json = nlohmann::ordered_json;

std::string_view warning_code_name(WarningCode code);
WarningCode parse_warning_code(std::string_view name);
std::string_view role_name(ViewRole role);
ViewRole parse_role(std::string_view name);

Json to_json(const MetricTriple& metrics);
MetricTriple metrics_from_json(const Json& j);

Json to_json(const DiagramPoint& p);
DiagramPoint point_from_json(const Json& j);

Json to_json(const ClusterSummary& c);
ClusterSummary cluster_from_json(const Json& j);

Json to_json(const Warning& w);
Warning warning_from_json(const Json& j);

Json to_json(const DiagramView& v);
DiagramView view_from_json(const Json& j);

Json to_json(const LinkingAxes& l);
LinkingAxes linking_from_json(const Json& j);

// The /api/view payload: both diagrams, linking axes, the interaction state,
// tooltip tables (exact metric values per model) and all warnings.
Json to_json(const ViewSet& v);
ViewSet viewset_from_json(const Json& j);

Json to_json(const GridLayout& g);
GridLayout grid_from_json(const Json& j);

}  // namespace polars
