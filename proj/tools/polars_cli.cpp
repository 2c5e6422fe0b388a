#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include <CLI11.hpp>
#include <httplib.h>

#include "polars/api.hpp"
#include "polars/catalog.hpp"
#include "polars/data_io.hpp"
#include "polars/error.hpp"
#include "polars/geometry.hpp"
#include "polars/svg.hpp"
#include "polars/view_state.hpp"

namespace fs = std::filesystem;
using namespace polars;

namespace {

struct Source {
  std::string input;
  std::string manifest;
  std::string dataset;
  std::string reference;
  std::string version_column;
  std::string params_column;
};

struct Options {
  Source source;
  std::string kind = "taylor";
  std::string view = "detail";
  std::optional<std::size_t> bins;
  double eps = ClusteringConfig{}.eps;
  std::size_t min_pts = ClusteringConfig{}.min_pts;
  std::optional<double> r0, r1;
  std::string theme;
  std::string out;
  std::string strata = "quality";
  std::size_t per_stratum = 4;
  std::uint64_t seed = 1;
  std::string host = "127.0.0.1";
  int port = 8080;
};

std::string data_dir() {
  const char* env = std::getenv("POLARS_DATA_DIR");
  return env != nullptr && *env != '\0' ? env : "data";
}

std::string manifest_path(const Source& s) {
  return s.manifest.empty() ? (fs::path(data_dir()) / "manifest.json").string() : s.manifest;
}

using Loaded = std::variant<Dataset, VersionedDataset>;

Loaded load(const Source& s) {
  if (!s.input.empty()) {
    if (s.reference.empty()) throw Error(ErrorCode::kInvalidConfig, "--reference is required with --input");
    const std::string text = read_file(s.input);
    const LoadOptions opts{fs::path(s.input).stem().string(), s.input, "", true};
    if (!s.version_column.empty()) {
      std::optional<std::string_view> params;
      if (!s.params_column.empty()) params = s.params_column;
      return load_versioned_csv(text, s.reference, s.version_column, params, opts);
    }
    return load_csv(text, s.reference, opts);
  }
  if (s.dataset.empty()) throw Error(ErrorCode::kInvalidConfig, "give --input or --dataset");
  const Catalog catalog = Catalog::from_manifest(manifest_path(s));
  const CatalogEntry* e = catalog.find(s.dataset);
  if (e == nullptr) throw Error(ErrorCode::kUnknownDataset, "unknown dataset '" + s.dataset + "'");
  if (!e->available()) throw Error(*e->load_error, e->load_message);
  if (const auto* d = std::get_if<Dataset>(&e->data)) return *d;
  return std::get<VersionedDataset>(e->data);
}

BinningConfig binning(const Options& o) {
  BinningConfig b;
  b.bin_count = o.bins;
  return b;
}

RenderTheme theme(const Options& o) {
  if (o.theme.empty()) return RenderTheme{};
  return parse_theme(read_file(o.theme));
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  f << text;
  if (!f) throw Error(ErrorCode::kIoError, "cannot write " + o.out);
}

std::string metrics_header(DiagramKind kind) {
  return kind == DiagramKind::kTaylor
             ? "model,sigma_ref,sigma_model,correlation,crmse,r,theta"
             : "model,h_ref,h_model,mi,smi,nmi,vi,rvi,degenerate,r,theta";
}

std::string metrics_row(const DiagramPoint& p) {
  std::string row = p.model_id;
  auto add = [&](double v) { row += ',' + format_number(v); };
  if (const auto* t = std::get_if<TaylorMetrics>(&p.metrics)) {
    add(t->sigma_ref);
    add(t->sigma_model);
    add(t->correlation);
    add(t->crmse);
  } else {
    const auto& m = std::get<InfoMetrics>(p.metrics);
    for (const double v : {m.h_ref, m.h_model, m.mi, m.smi, m.nmi, m.vi, m.rvi}) add(v);
    row += m.degenerate ? ",1" : ",0";
  }
  add(p.r);
  add(p.theta);
  return row;
}

void compute(const Options& o) {
  const DiagramKind kind = parse_kind(o.kind);
  const Loaded data = load(o.source);
  std::string out;
  if (const auto* d = std::get_if<Dataset>(&data)) {
    out = metrics_header(kind) + '\n';
    for (const auto& p : compute_points(*d, kind, binning(o), nullptr)) out += metrics_row(p) + '\n';
  } else {
    out = "version," + metrics_header(kind) + '\n';
    for (const auto& v : std::get<VersionedDataset>(data).versions) {
      for (const auto& p : compute_points(v.data, kind, binning(o), nullptr)) {
        out += v.label + ',' + metrics_row(p) + '\n';
      }
    }
  }
  emit(o, out);
}

void render_cmd(const Options& o) {
  const DiagramKind kind = parse_kind(o.kind);
  const RenderTheme t = theme(o);
  const Loaded data = load(o.source);
  if (o.view == "grid") {
    const auto* versioned = std::get_if<VersionedDataset>(&data);
    if (versioned == nullptr) {
      throw Error(ErrorCode::kTooFewVersions, "grid view needs a versioned dataset (--version-column)");
    }
    emit(o, render(small_multiples(*versioned, kind, binning(o)), t));
    return;
  }
  const auto* dataset = std::get_if<Dataset>(&data);
  if (dataset == nullptr) throw Error(ErrorCode::kInvalidConfig, "versioned data renders only as --view grid");
  ViewRequest request;
  request.kind = kind;
  request.binning = binning(o);
  request.clustering = ClusteringConfig{o.eps, o.min_pts};
  if (o.r0 || o.r1) {
    if (!o.r0 || !o.r1) throw Error(ErrorCode::kInvalidInterval, "--r0 and --r1 go together");
    request.brush = RadialInterval{*o.r0, *o.r1};
  }
  emit(o, render_view(make_view_set(*dataset, request, t), o.view, t));
}

void sample(const Options& o) {
  if (o.source.input.empty()) throw Error(ErrorCode::kInvalidConfig, "--input is required");
  const Table table = parse_numeric_table(read_file(o.source.input));
  const StratifiedSample s = stratified_sample(table, o.strata, o.per_stratum, o.seed);
  for (const auto& notice : s.notices) std::cerr << "notice: " << notice << '\n';
  emit(o, write_csv(s.samples));
}

void serve(const Options& o) {
  Catalog catalog = o.source.manifest.empty() ? Catalog::from_directory(data_dir())
                                              : Catalog::from_manifest(o.source.manifest);
  for (const auto& e : catalog.entries()) {
    if (!e.available()) std::cerr << "dataset " << e.meta.id << " unavailable: " << e.load_message << '\n';
  }
  const Api api(std::move(catalog), theme(o));
  httplib::Server server;
  mount_routes(server, api);
  std::cerr << "listening on http://" << o.host << ':' << o.port << '\n';
  if (!server.listen(o.host, o.port)) throw Error(ErrorCode::kIoError, "cannot bind port " + std::to_string(o.port));
}

void add_source(CLI::App* cmd, Options& o, bool versioned) {
  cmd->add_option("--input", o.source.input, "CSV file");
  cmd->add_option("--manifest", o.source.manifest, "Dataset manifest (default $POLARS_DATA_DIR/manifest.json)");
  cmd->add_option("--dataset", o.source.dataset, "Dataset id from the manifest");
  cmd->add_option("--reference", o.source.reference, "Reference column");
  if (versioned) {
    cmd->add_option("--version-column", o.source.version_column, "Version label column (long format)");
    cmd->add_option("--params-column", o.source.params_column, "Changed-parameters column");
  }
}

void add_kind(CLI::App* cmd, Options& o) {
  cmd->add_option("--kind", o.kind, "Diagram kind")->check(CLI::IsMember({"taylor", "smi", "nmi"}));
  cmd->add_option("--bins", o.bins, "Histogram bins per variable (default ceil(sqrt(n)))")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Summary polar diagrams: metrics, views and SVG export"};
  app.require_subcommand(1);
  Options o;

  auto* compute_cmd = app.add_subcommand("compute", "Write per-model metrics and polar coordinates as CSV");
  add_source(compute_cmd, o, true);
  add_kind(compute_cmd, o);
  compute_cmd->add_option("--out", o.out, "Output file (default stdout)");

  auto* render_sub = app.add_subcommand("render", "Render one view as SVG");
  add_source(render_sub, o, true);
  add_kind(render_sub, o);
  render_sub->add_option("--view", o.view)
      ->check(CLI::IsMember({"overview", "detail", "linking", "grid", "size-legend"}));
  render_sub->add_option("--eps", o.eps, "DBSCAN radius in normalized diagram units");
  render_sub->add_option("--min-pts", o.min_pts, "DBSCAN core-point threshold")->check(CLI::PositiveNumber);
  render_sub->add_option("--r0", o.r0, "Radial brush start");
  render_sub->add_option("--r1", o.r1, "Radial brush end");
  render_sub->add_option("--theme", o.theme, "key=value theme file");
  render_sub->add_option("--out", o.out, "Output file (default stdout)");

  auto* sample_cmd = app.add_subcommand("sample", "Stratified sample of a table plus its median row");
  sample_cmd->add_option("--input", o.source.input, "Numeric CSV table")->required();
  sample_cmd->add_option("--strata", o.strata, "Stratum column");
  sample_cmd->add_option("--per-stratum", o.per_stratum)->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", o.seed, "SplitMix64 seed");
  sample_cmd->add_option("--out", o.out, "Output file (default stdout)");

  auto* serve_cmd = app.add_subcommand("serve", "Start the HTTP API");
  serve_cmd->add_option("--manifest", o.source.manifest, "Dataset manifest (default $POLARS_DATA_DIR/manifest.json)");
  serve_cmd->add_option("--host", o.host);
  serve_cmd->add_option("--port", o.port)->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--theme", o.theme, "key=value theme file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*compute_cmd) compute(o);
    if (*render_sub) render_cmd(o);
    if (*sample_cmd) sample(o);
    if (*serve_cmd) serve(o);
  } catch (const Error& e) {
    std::cerr << "error: " << error_code_name(e.code()) << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
