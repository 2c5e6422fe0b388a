// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "polars/aggregation.hpp"
#include "polars/api.hpp"
#include "polars/geometry.hpp"
#include "polars/metrics.hpp"
#include "polars/serialize.hpp"
#include "polars/svg.hpp"
#include "polars/view_state.hpp"

using namespace polars;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string data(const std::string& f) { return std::string(POLARS_TEST_DATA_DIR) + "/" + f; }
std::string golden(const std::string& f) { return std::string(POLARS_TEST_GOLDEN_DIR) + "/" + f; }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-3});
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Dataset wine() { return load_csv(read_file(data("wine_subset.csv")), "median", {"wine", "", "", true}); }

Outcome taylor_identity() {
  Outcome o;
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  const auto t0 = Clock::now();
  for (int i = 0; i < 1000; ++i) {
    const auto [x, y] = oracle::random_pair(rng, 100);
    const TaylorMetrics m = taylor_metrics(x, y);
    const double sx = m.sigma_ref, sy = m.sigma_model;
    const double residual =
        std::abs(m.crmse * m.crmse - (sx * sx + sy * sy - 2.0 * sx * sy * m.correlation));
    worst = std::max(worst, residual / std::max(1.0, sx * sx));
    o.require(residual <= 1e-9 * std::max(1.0, sx * sx), "identity residual at pair " + std::to_string(i));
    o.require(close_rel(m.crmse, oracle::crmse(x, y), 1e-9), "crmse differs from direct oracle");
  }
  const double secs = seconds_since(t0);
  o.require(secs < 1.0, "runtime " + fmt(secs) + " s");
  if (o.pass) o.detail = "worst scaled residual " + fmt(worst) + ", " + fmt(secs) + " s";
  return o;
}

Outcome information_identities() {
  Outcome o;
  std::mt19937_64 rng(2002);
  int used = 0;
  for (int i = 0; used < 1000 && i < 5000; ++i) {
    const auto [x, y] = oracle::random_pair(rng, 100);
    const InfoMetrics m = info_metrics(x, y, {});
    if (!(m.h_ref > 0.0 && m.h_model > 0.0)) continue;
    ++used;
    const double h1 = m.h_ref, h2 = m.h_model;
    const double eq_nmi = h1 + h2 - 2.0 * std::sqrt(h1 * h2) * m.nmi;
    const double eq_smi = h1 * h1 + h2 * h2 - 2.0 * h1 * h2 * (2.0 * m.smi - 1.0);
    o.require(std::abs(m.vi - eq_nmi) <= 1e-9 * std::max(1.0, m.vi), "root-entropy identity residual");
    o.require(std::abs(m.vi * m.vi - eq_smi) <= 1e-9 * std::max(1.0, m.vi * m.vi), "entropy identity residual");
    o.require(m.smi >= 0.0 && m.smi <= 1.0 && m.nmi >= 0.0 && m.nmi <= 1.0, "similarity out of [0, 1]");
    o.require(m.mi <= std::min(h1, h2) + 1e-12, "mi exceeds min entropy");
    const auto ref = oracle::information(x, y, ceil_sqrt(x.size()));
    o.require(std::abs(ref.mi - m.mi) <= 1e-9 && std::abs(ref.h_x - h1) <= 1e-9, "histogram oracle mismatch");
    o.require(std::abs(oracle::smi_from_vi(h1, h2, m.vi) - m.smi) <= 1e-9, "smi != solved value");
    o.require(std::abs(oracle::nmi_from_vi(h1, h2, m.vi) - m.nmi) <= 1e-9, "nmi != solved value");
  }
  o.require(used == 1000, "only " + std::to_string(used) + " pairs with positive entropy");
  if (o.pass) o.detail = "1000 pairs";
  return o;
}

Outcome analytic_information() {
  Outcome o;
  const std::vector<double> x = {0.1, 3.2, 1.7, 2.2, 0.9, 4.0, 2.8, 1.1, 3.5};
  const InfoMetrics same = info_metrics(x, x, {});
  o.require(std::abs(same.vi) <= 1e-12 && std::abs(same.smi - 1.0) <= 1e-12 &&
                std::abs(same.nmi - 1.0) <= 1e-12,
            "identical series");
  const std::vector<double> a = {0, 0, 1, 1, 0, 0, 1, 1};
  const std::vector<double> b = {0, 1, 0, 1, 0, 1, 0, 1};
  BinningConfig two;
  two.bin_count = 2;
  const InfoMetrics ind = info_metrics(a, b, two);
  o.require(std::abs(ind.h_ref - 1.0) <= 1e-12 && std::abs(ind.h_model - 1.0) <= 1e-12 &&
                std::abs(ind.mi) <= 1e-12 && std::abs(ind.vi - 2.0) <= 1e-12 &&
                std::abs(ind.smi) <= 1e-12 && std::abs(ind.nmi) <= 1e-12,
            "independent binary pair");
  if (o.pass) o.detail = "identical (0, 1, 1); independent (1, 0, 2, 0, 0)";
  return o;
}

Outcome geometry_distances() {
  Outcome o;
  std::mt19937_64 rng(4004);
  for (const auto kind : {DiagramKind::kTaylor, DiagramKind::kSmi, DiagramKind::kNmi}) {
    int done = 0;
    while (done < 500) {
      const auto [x, y] = oracle::random_pair(rng, 120);
      MetricTriple m = kind == DiagramKind::kTaylor ? MetricTriple(taylor_metrics(x, y))
                                                   : MetricTriple(info_metrics(x, y, {}));
      const DiagramPoint p = place(kind, "m", m);
      const DiagramPoint r = reference_point(kind, "ref", m);
      if (p.degenerate) continue;
      ++done;
      double expected;
      if (kind == DiagramKind::kTaylor) {
        expected = oracle::crmse(x, y);
      } else {
        const auto info = oracle::information(x, y, ceil_sqrt(x.size()));
        const double vi = std::max(0.0, info.h_x + info.h_y - 2.0 * info.mi);
        expected = kind == DiagramKind::kSmi ? vi : std::sqrt(vi);
      }
      const double d = std::hypot(p.x - r.x, p.y - r.y);
      const double tol = std::max(1e-9 * std::abs(expected), 1e-12);
      o.require(std::abs(d - expected) <= tol,
                std::string(kind_name(kind)) + " distance " + fmt(d) + " vs " + fmt(expected));
      if (kind == DiagramKind::kNmi) o.require(p.x >= 0.0 && p.y >= 0.0, "nmi point outside first quadrant");
    }
  }
  if (o.pass) o.detail = "500 triples per kind";
  return o;
}

Outcome dbscan_components() {
  Outcome o;
  std::mt19937_64 rng(5005);
  const auto t0 = Clock::now();
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t n = 1 + rng() % 20;
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double eps = 0.05 + 0.3 * u(rng);
    std::vector<Point2> pts;
    std::vector<std::pair<double, double>> raw;
    for (std::size_t i = 0; i < n; ++i) {
      // Snap a quarter of the points onto a coarse lattice to create exact ties.
      double x = u(rng), y = u(rng);
      if (rng() % 4 == 0) {
        x = std::round(x * 4) / 4;
        y = std::round(y * 4) / 4;
      }
      pts.push_back({x, y});
      raw.emplace_back(x, y);
    }
    const auto labels = dbscan(pts, ClusteringConfig{eps, 1});
    o.require(oracle::same_partition(labels, oracle::eps_components(raw, eps)),
              "instance " + std::to_string(inst));
  }
  const double secs = seconds_since(t0);
  o.require(secs < 2.0, "runtime " + fmt(secs) + " s");
  if (o.pass) o.detail = "200 instances, " + fmt(secs) + " s";
  return o;
}

Outcome wine_reproduction() {
  Outcome o;
  const ViewSet v = build_views(wine(), DiagramKind::kSmi);
  o.require(v.overview.clusters.size() == 6, std::to_string(v.overview.clusters.size()) + " clusters");
  o.require(v.detail.points.size() == 19, std::to_string(v.detail.points.size()) + " detail points");
  std::string csv = "ref";
  for (int c = 1; c <= 21; ++c) csv += ",m" + std::to_string(c);
  csv += "\n";
  for (int r = 0; r < 5; ++r) {
    csv += std::to_string(r);
    for (int c = 1; c <= 21; ++c) csv += "," + std::to_string((r * c) % 7);
    csv += "\n";
  }
  bool rejected = false;
  try {
    load_csv(csv, "ref");
  } catch (const Error& e) {
    rejected = e.code() == ErrorCode::kTooManyModels;
  }
  o.require(rejected, "21-model table accepted");
  if (o.pass) o.detail = "6 clusters, 19 detail points, 21 models rejected";
  return o;
}

Outcome grid_formula() {
  Outcome o;
  for (std::size_t n = 2; n <= 12; ++n) {
    VersionedDataset vd;
    for (std::size_t i = 0; i < n; ++i) {
      Dataset d;
      d.reference_name = "ref";
      std::vector<double> ref, a, b;
      for (int k = 0; k < 16; ++k) {
        ref.push_back(std::sin(0.4 * k));
        a.push_back(std::sin(0.4 * k + 0.05 * static_cast<double>(i)));
        b.push_back(std::cos(0.4 * k) * (1.0 + 0.1 * static_cast<double>(i)));
      }
      d.vectors = {SampleVector("ref", ref), SampleVector("a", a), SampleVector("b", b)};
      vd.versions.push_back({"v" + std::to_string(i + 1), "", d});
    }
    const GridLayout g = small_multiples(vd, DiagramKind::kTaylor);
    const std::size_t rows = (n - 1 + 2) / 3;
    o.require(g.cells.size() == n - 1 && g.rows == rows && g.cols == 3, "n = " + std::to_string(n));
    const bool warned = std::any_of(g.warnings.begin(), g.warnings.end(),
                                    [](const Warning& w) { return w.code == WarningCode::kGridSize; });
    o.require(warned == (rows > 3), "grid-size warning at n = " + std::to_string(n));
    if (n == 7) o.require(g.rows == 2 && g.cells.size() == 6, "n = 7 is not 2 x 3");
  }
  if (o.pass) o.detail = "n = 2..12";
  return o;
}

Outcome brush_and_selection() {
  Outcome o;
  const ViewSet base = build_views(wine(), DiagramKind::kSmi);
  std::mt19937_64 rng(8008);
  std::uniform_real_distribution<double> u(0.0, base.overview.radial_max);
  for (int i = 0; i < 300; ++i) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    const ViewSet v = apply_radial_brush(base, a, b);
    std::vector<std::string> scan, got;
    for (const auto& p : base.overview.points) {
      if (a <= p.r && p.r <= b) scan.push_back(p.model_id);
    }
    for (const auto& p : v.detail.points) got.push_back(p.model_id);
    o.require(got == scan, "radial brush " + std::to_string(i));
  }
  const double top = base.overview.radial_max;
  std::uniform_real_distribution<double> ux(-top, top), uy(0.0, top);
  for (int i = 0; i < 300; ++i) {
    Rect r{ux(rng), uy(rng), ux(rng), uy(rng)};
    if (r.x0 > r.x1) std::swap(r.x0, r.x1);
    if (r.y0 > r.y1) std::swap(r.y0, r.y1);
    std::vector<std::string> scan;
    for (const auto& p : base.detail.points) {
      if (r.x0 <= p.x && p.x <= r.x1 && r.y0 <= p.y && p.y <= r.y1) scan.push_back(p.model_id);
    }
    o.require(apply_rect_brush(base.detail, r) == scan, "rectangle " + std::to_string(i));
  }
  for (const auto& c : base.overview.clusters) {
    const ViewSet v = apply_legend_action(base, DoubleClick{c.member_ids.back()});
    o.require(v.detail.selection == c.member_ids && v.linking.highlighted == c.member_ids,
              "double click on cluster " + std::to_string(c.cluster_id));
  }
  const std::string initial = to_json(base).dump();
  ViewSet v = apply_radial_brush(base, 0.1, 0.8 * top);
  v = apply_legend_action(v, SingleClick{base.overview.points[3].model_id});
  v = apply_legend_action(v, DoubleClick{base.overview.points[0].model_id});
  o.require(to_json(apply_legend_action(v, Reset{})).dump() == initial, "reset state differs");
  if (o.pass) o.detail = "300 brushes, 300 rectangles, " + std::to_string(base.overview.clusters.size()) +
                         " cluster selections, reset";
  return o;
}

Outcome rendering_determinism() {
  Outcome o;
  const RenderTheme theme;
  const Catalog catalog = Catalog::from_directory(POLARS_TEST_DATA_DIR);
  std::size_t views = 0;
  for (const auto& e : catalog.entries()) {
    for (const auto kind : {DiagramKind::kTaylor, DiagramKind::kSmi, DiagramKind::kNmi}) {
      if (const auto* d = std::get_if<Dataset>(&e.data)) {
        const ViewSet v = build_views(*d, kind);
        const ViewSet b = apply_radial_brush(v, 0.25 * v.overview.radial_max, 0.75 * v.overview.radial_max);
        for (const DiagramView* dv : {&v.overview, &v.detail, &b.detail}) {
          o.require(render(*dv, theme) == render(*dv, theme), e.meta.id + " view");
          ++views;
        }
        o.require(render(v.linking, theme) == render(v.linking, theme), e.meta.id + " linking");
        o.require(render_size_legend(v.overview.clusters, theme) ==
                      render_size_legend(v.overview.clusters, theme),
                  e.meta.id + " size legend");
        views += 2;
      } else if (const auto* vd = std::get_if<VersionedDataset>(&e.data)) {
        const GridLayout g = small_multiples(*vd, kind);
        o.require(render(g, theme) == render(g, theme), e.meta.id + " grid");
        ++views;
      }
    }
  }
  const ViewSet w = build_views(wine(), DiagramKind::kSmi, {}, {}, screen_scale(theme, std::numbers::pi));
  const std::string overview = render(w.overview, theme);
  o.require(overview == read_file(golden("wine_overview.svg")), "wine overview golden");
  std::size_t circles = 0;
  for (auto p = overview.find("<circle"); p != std::string::npos; p = overview.find("<circle", p + 1)) ++circles;
  o.require(circles == 6, std::to_string(circles) + " overview circles");
  for (int id = 1; id <= 6; ++id) {
    o.require(overview.find(">" + std::to_string(id) + "</text>") != std::string::npos, "cluster label");
  }
  const ViewSet brushed = apply_radial_brush(w, 0.3, 1.2);
  o.require(render(brushed.detail, theme) == read_file(golden("wine_detail_brush.svg")), "detail golden");
  o.require(render(w.linking, theme) == read_file(golden("wine_linking.svg")), "linking golden");
  const GridLayout gp = small_multiples(
      load_versioned_csv(read_file(data("gp_versions.csv")), "truth", "version", "params"),
      DiagramKind::kTaylor);
  o.require(gp.rows == 2 && gp.cells.size() == 6, "gp grid shape");
  o.require(render(gp, theme) == read_file(golden("gp_grid.svg")), "grid golden");
  if (o.pass) o.detail = std::to_string(views) + " views stable, 4 goldens match";
  return o;
}

Outcome api_contract() {
  Outcome o;
  const Api api(Catalog::from_directory(POLARS_TEST_DATA_DIR), RenderTheme{});
  const std::string req = R"({"dataset_id": "wine", "kind": "smi", "brush": [0.2, 1.0], "hidden": ["q7_r1453"]})";
  const ApiResponse first = api.view(req);
  o.require(first.status == 200, "view status");
  for (int i = 0; i < 3; ++i) o.require(api.view(req).body == first.body, "repeat differs");
  o.require(api.view(R"({"dataset_id": "wine", "kind": "nmi"})").status == 200, "interleaved request");
  o.require(api.view(req).body == first.body, "response changed after another request");

  const Json payload = Json::parse(first.body);
  o.require(to_json(viewset_from_json(payload)).dump() == first.body, "view round trip");
  const ApiResponse grid = api.grid(R"({"dataset_id": "gp", "kind": "smi"})");
  o.require(grid.status == 200 && to_json(grid_from_json(Json::parse(grid.body))).dump() == grid.body,
            "grid round trip");

  o.require(api.view(R"({"dataset_id": "unknown", "kind": "smi"})").status == 404, "unknown dataset");
  o.require(api.view(R"({"dataset_id": "wine", "kind": "smi", "brush": [1, 0]})").status == 422, "bad brush");
  o.require(api.view(R"({"dataset_id": "wine", "kind": "smi", "hidden": ["x"]})").status == 422, "bad id");
  o.require(api.grid(R"({"dataset_id": "wine", "kind": "smi"})").status == 422, "too few versions");
  o.require(api.export_svg({{"dataset", "wine"}, {"view", "nope"}}).status == 422, "bad view selector");

  Dataset big = wine();
  for (int i = 0; i < 2; ++i) {
    const auto values = big.vectors[1].values();
    big.vectors.emplace_back("extra" + std::to_string(i), std::vector<double>(values.begin(), values.end()));
  }
  bool capped = false;
  try {
    build_views(big, DiagramKind::kSmi);
  } catch (const Error& e) {
    capped = http_status(e.code()) == 409;
  }
  o.require(capped, "model cap status");
  o.require(http_status(ErrorCode::kTooManyModels) == 409, "load-time cap status");
  if (o.pass) o.detail = "deterministic, round trip, 404/409/422";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Taylor law-of-cosines identity", taylor_identity},
      {"entropy identities and bounds", information_identities},
      {"analytic information cases", analytic_information},
      {"geometry distance correspondence", geometry_distances},
      {"DBSCAN matches eps-graph components", dbscan_components},
      {"wine subset reproduction and model cap", wine_reproduction},
      {"small-multiples grid formula", grid_formula},
      {"brush and selection soundness", brush_and_selection},
      {"rendering determinism and goldens", rendering_determinism},
      {"API contract", api_contract},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s criterion %2zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
