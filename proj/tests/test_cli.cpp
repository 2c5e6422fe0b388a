#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"

namespace fs = std::filesystem;

namespace {

fs::path out_dir() {
  const fs::path dir = fs::path(POLARS_TEST_SCRATCH_DIR) / "cli";
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(POLARS_CLI) + " " + args + " 2>" +
                          (out_dir() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return status == 0 ? 0 : 1;
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("cli compute: wine SMI metrics, one row per sample") {
  const fs::path a = out_dir() / "wine_a.csv";
  const fs::path b = out_dir() / "wine_b.csv";
  const std::string args = "compute --input " + support::data_path("wine_subset.csv") +
                           " --reference median --kind smi --out ";
  REQUIRE(run(args + a.string()) == 0);
  REQUIRE(run(args + b.string()) == 0);
  const std::string text = polars::read_file(a.string());
  CHECK(line_count(text) == 20);
  CHECK(text.rfind("model,h_ref,h_model,mi,smi,nmi,vi,rvi,degenerate,r,theta\n", 0) == 0);
  CHECK(text == polars::read_file(b.string()));
}

TEST_CASE("cli compute: versioned input and manifest lookup") {
  const fs::path out = out_dir() / "gp.csv";
  REQUIRE(run("compute --input " + support::data_path("gp_versions.csv") +
              " --reference truth --version-column version --params-column params --kind taylor --out " +
              out.string()) == 0);
  CHECK(line_count(polars::read_file(out.string())) == 1 + 7 * 6);

  const fs::path climate = out_dir() / "climate.csv";
  REQUIRE(run("compute --manifest " + support::data_path("manifest.json") +
              " --dataset climate --kind nmi --bins 12 --out " + climate.string()) == 0);
  CHECK(line_count(polars::read_file(climate.string())) == 8);
}

TEST_CASE("cli render: single-model dataset gives a valid SVG") {
  const fs::path csv = out_dir() / "one.csv";
  std::ofstream(csv) << "ref,model\n1,2\n2,2.5\n3,2.9\n4,4.4\n";
  const fs::path svg = out_dir() / "one.svg";
  REQUIRE(run("render --input " + csv.string() + " --reference ref --kind taylor --view detail --out " +
              svg.string()) == 0);
  const std::string text = polars::read_file(svg.string());
  CHECK(text.rfind("<?xml", 0) == 0);
  CHECK(text.find("</svg>") != std::string::npos);
  CHECK(text.find("id=\"mark-model\"") != std::string::npos);
}

TEST_CASE("cli render: grid and brushed detail") {
  const fs::path grid = out_dir() / "grid.svg";
  REQUIRE(run("render --manifest " + support::data_path("manifest.json") +
              " --dataset gp --kind smi --view grid --out " + grid.string()) == 0);
  CHECK(polars::read_file(grid.string()).find("id=\"cell-6\"") != std::string::npos);

  const fs::path detail = out_dir() / "detail.svg";
  REQUIRE(run("render --manifest " + support::data_path("manifest.json") +
              " --dataset wine --kind smi --view detail --r0 0.2 --r1 1.2 --out " + detail.string()) == 0);
  CHECK(polars::read_file(detail.string()).find("brush-sector") != std::string::npos);
}

TEST_CASE("cli sample reproduces the frozen subset") {
  const fs::path out = out_dir() / "subset.csv";
  REQUIRE(run("sample --input " + support::data_path("wine_full.csv") +
              " --strata quality --per-stratum 4 --seed 1 --out " + out.string()) == 0);
  CHECK(polars::read_file(out.string()) == polars::read_file(support::data_path("wine_subset.csv")));
}

TEST_CASE("cli errors exit non-zero with a message") {
  CHECK(run("compute --input " + support::data_path("wine_subset.csv") + " --reference nope") != 0);
  CHECK(polars::read_file((out_dir() / "stderr.txt").string()).find("MissingReference") != std::string::npos);
  CHECK(run("compute --input /no/such/file.csv --reference ref") != 0);
  CHECK(run("render --manifest " + support::data_path("manifest.json") +
            " --dataset wine --view detail --r0 3 --r1 1") != 0);
  CHECK(run("compute --kind polar") != 0);
  CHECK(run("") != 0);
}
