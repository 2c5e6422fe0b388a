// Regenerates the bundled datasets under data/ from fixed seeds.
//
//   polars_make_datasets <out-dir>
//
// All three tables are synthetic stand-ins shaped like the published sources
// (monthly near-surface air temperature from seven climate models, the red
// wine physicochemical table, Gaussian-process regressors under seven
// hyper-parameter settings). The wine sampling seed is searched so the frozen
// subset aggregates into six clusters under the default clustering settings.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "polars/data_io.hpp"
#include "polars/rng.hpp"
#include "polars/view_state.hpp"

namespace fs = std::filesystem;
using namespace polars;

namespace {

constexpr double kPi = std::numbers::pi;

double round_to(double v, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

Dataset climate() {
  constexpr std::size_t kMonths = 312;  // 1980-2005
  SplitMix64 root(0x5EA50);
  SplitMix64 obs_rng = root.split(0);
  std::vector<double> obs(kMonths);
  for (std::size_t m = 0; m < kMonths; ++m) {
    const double season = 12.0 * std::cos(2.0 * kPi * (static_cast<double>(m % 12) - 6.5) / 12.0);
    obs[m] = 9.0 - season + 0.0015 * static_cast<double>(m) + 0.8 * obs_rng.normal();
  }
  struct Spec {
    const char* name;
    double amplitude, phase_months, bias, noise;
  };
  const Spec models[] = {
      {"ACCESS1-0", 1.02, 0.10, 0.4, 0.9},  {"CanESM2", 1.10, 0.25, 1.1, 1.1},
      {"CCSM4", 0.97, -0.05, -0.3, 0.8},    {"GFDL-CM3", 1.18, 0.40, 0.9, 1.4},
      {"HadGEM2-ES", 1.00, 0.00, 0.2, 0.7}, {"MIROC5", 0.86, -0.30, -1.2, 1.2},
      {"MPI-ESM-LR", 1.05, 0.15, 0.6, 1.0},
  };
  Dataset d;
  d.reference_name = "observation";
  std::vector<double> rounded;
  for (const double v : obs) rounded.push_back(round_to(v, 3));
  d.vectors.emplace_back("observation", rounded);
  std::uint64_t stream = 1;
  for (const auto& s : models) {
    SplitMix64 rng = root.split(stream++);
    std::vector<double> v(kMonths);
    for (std::size_t m = 0; m < kMonths; ++m) {
      const double month = static_cast<double>(m % 12) - 6.5 - s.phase_months;
      const double season = 12.0 * s.amplitude * std::cos(2.0 * kPi * month / 12.0);
      v[m] = round_to(9.0 + s.bias - season + 0.0015 * static_cast<double>(m) +
                          0.55 * obs_rng.split(m).normal() + s.noise * rng.normal(),
                      3);
    }
    d.vectors.emplace_back(s.name, v);
  }
  return d;
}

// Quality levels 4..8. The top stratum holds three wines, so sampling four
// rows per stratum gives 4 * 4 + 3 = 19 samples.
Table wine_table() {
  struct Feature {
    const char* name;
    double mean, sd, lo, quality_slope;
    int decimals;
  };
  const Feature features[] = {
      {"fixed_acidity", 8.32, 1.74, 4.6, 0.15, 1},
      {"volatile_acidity", 0.528, 0.179, 0.12, -0.08, 3},
      {"citric_acid", 0.271, 0.195, 0.0, 0.04, 2},
      {"residual_sugar", 2.54, 1.41, 0.9, 0.0, 1},
      {"chlorides", 0.087, 0.047, 0.012, -0.006, 3},
      {"free_sulfur_dioxide", 15.9, 10.5, 1.0, -0.5, 0},
      {"total_sulfur_dioxide", 46.5, 32.9, 6.0, -6.0, 0},
      {"density", 0.99675, 0.00189, 0.99007, -0.0004, 5},
      {"pH", 3.311, 0.154, 2.74, -0.01, 2},
      {"sulphates", 0.658, 0.170, 0.33, 0.05, 2},
      {"alcohol", 10.42, 1.07, 8.4, 0.55, 1},
  };
  const std::pair<int, std::size_t> strata[] = {
      {4, 63}, {5, 681}, {6, 638}, {7, 199}, {8, 3}};
  Table t;
  for (const auto& f : features) t.headers.emplace_back(f.name);
  t.headers.emplace_back("quality");
  t.columns.resize(t.headers.size());
  SplitMix64 rng(0x3A1E);
  for (const auto& [quality, count] : strata) {
    for (std::size_t i = 0; i < count; ++i) {
      const double shift = static_cast<double>(quality) - 5.64;
      for (std::size_t c = 0; c < std::size(features); ++c) {
        const auto& f = features[c];
        double v = f.mean + f.quality_slope * shift + f.sd * rng.normal();
        v = std::max(v, f.lo);
        t.columns[c].push_back(round_to(v, f.decimals));
      }
      t.columns.back().push_back(quality);
    }
  }
  return t;
}

std::string write_table(const Table& t) {
  std::string out;
  for (std::size_t c = 0; c < t.headers.size(); ++c) out += (c ? "," : "") + t.headers[c];
  out += '\n';
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      out += (c ? "," : "") + format_number(t.columns[c][r]);
    }
    out += '\n';
  }
  return out;
}

std::string gp_versions() {
  constexpr std::size_t kPoints = 64;
  struct Version {
    const char* label;
    double sigma_f, sigma_l;
  };
  const Version versions[] = {{"v1", 1.0, 1.0}, {"v2", 1.0, 0.5}, {"v3", 0.5, 0.5},
                              {"v4", 0.5, 0.25}, {"v5", 2.0, 0.25}, {"v6", 2.0, 1.0},
                              {"v7", 1.0, 2.0}};
  struct Model {
    const char* name;
    double smoothing, noise;
  };
  const Model models[] = {{"GP", 0.00, 0.05}, {"PoE", 0.35, 0.12}, {"gPoE", 0.25, 0.10},
                          {"BCM", 0.15, 0.15}, {"rBCM", 0.10, 0.08}, {"MoE", 0.45, 0.20}};
  std::string out = "version,params,truth";
  for (const auto& m : models) out += std::string(",") + m.name;
  out += '\n';
  SplitMix64 root(0x69);
  std::uint64_t stream = 0;
  std::string previous;
  for (const auto& v : versions) {
    char params[64];
    std::snprintf(params, sizeof params, "sigma_f=%s;sigma_l=%s",
                  format_number(v.sigma_f).c_str(), format_number(v.sigma_l).c_str());
    // Misfit grows as the length scale departs from the true one (0.5) and the
    // signal variance from 1.
    const double misfit = std::abs(std::log2(v.sigma_l / 0.5)) + 0.5 * std::abs(std::log2(v.sigma_f));
    std::vector<SplitMix64> rngs;
    for (std::size_t m = 0; m < std::size(models); ++m) rngs.push_back(root.split(stream++));
    for (std::size_t i = 0; i < kPoints; ++i) {
      const double x = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(kPoints - 1);
      const double truth = std::sin(x) + 0.3 * std::sin(3.0 * x);
      out += v.label;
      out += ',';
      out += params;
      out += ',' + format_number(round_to(truth, 5));
      for (std::size_t m = 0; m < std::size(models); ++m) {
        const double damp = 1.0 - models[m].smoothing * (0.3 + 0.4 * misfit);
        const double y = std::sin(x) + 0.3 * damp * damp * std::sin(3.0 * x);
        const double pred = damp * y + models[m].noise * (0.5 + misfit) * rngs[m].normal();
        out += ',' + format_number(round_to(pred, 5));
      }
      out += '\n';
    }
  }
  return out;
}

std::size_t cluster_count(const Dataset& d) {
  return build_views(d, DiagramKind::kSmi, ClusteringConfig{}, BinningConfig{}, ScreenScale{})
      .overview.clusters.size();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: polars_make_datasets <out-dir>\n";
    return 2;
  }
  try {
    const fs::path dir = argv[1];
    fs::create_directories(dir);

    write_text(dir / "climate.csv", write_csv(climate()));

    const Table wine = wine_table();
    write_text(dir / "wine_full.csv", write_table(wine));
    std::uint64_t seed = 1;
    for (;; ++seed) {
      if (seed > 100000) throw std::runtime_error("no wine seed gives six clusters");
      const StratifiedSample s = stratified_sample(wine, "quality", 4, seed);
      if (s.samples.model_count() != 19) throw std::runtime_error("unexpected wine sample size");
      if (cluster_count(s.samples) == 6) {
        write_text(dir / "wine_subset.csv", write_csv(s.samples));
        break;
      }
    }
    std::cout << "wine sampling seed: " << seed << '\n';

    write_text(dir / "gp_versions.csv", gp_versions());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
