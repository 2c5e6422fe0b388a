#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracles.hpp"
#include "polars/aggregation.hpp"
#include "polars/error.hpp"

using namespace polars;

namespace {

std::vector<Point2> to_points(const std::vector<std::pair<double, double>>& raw) {
  std::vector<Point2> out;
  for (const auto& [x, y] : raw) out.push_back({x, y});
  return out;
}

DiagramPoint taylor_point(const std::string& id, double sigma, double rho) {
  return place(DiagramKind::kTaylor, id, TaylorMetrics{1.0, sigma, rho, 0.0});
}

}  // namespace

TEST_CASE("dbscan: two separated groups") {
  const std::vector<std::pair<double, double>> raw = {
      {0.0, 0.0}, {0.05, 0.0}, {0.1, 0.02}, {0.8, 0.8}, {0.85, 0.8}, {0.8, 0.88}};
  const auto labels = dbscan(to_points(raw), {0.1, 1});
  CHECK(std::set<int>(labels.begin(), labels.end()).size() == 2);
  CHECK(oracle::same_partition(labels, oracle::eps_components(raw, 0.1)));
}

TEST_CASE("dbscan: isolated points are their own clusters") {
  const std::vector<std::pair<double, double>> raw = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  const auto labels = dbscan(to_points(raw), {0.5, 1});
  CHECK(std::set<int>(labels.begin(), labels.end()).size() == 4);
}

TEST_CASE("dbscan: noise under min_pts > 1 becomes singletons") {
  const std::vector<std::pair<double, double>> raw = {
      {0, 0}, {0.05, 0}, {0.1, 0}, {5, 5}};
  const auto labels = dbscan(to_points(raw), {0.06, 2});
  CHECK(labels[0] == labels[1]);
  CHECK(labels[1] == labels[2]);
  CHECK(labels[3] != labels[0]);
}

TEST_CASE("dbscan errors") {
  CHECK_THROWS_AS(dbscan({}, {}), Error);
  const std::vector<Point2> one = {{0, 0}};
  CHECK_THROWS_AS(dbscan(one, {0.0, 1}), Error);
  CHECK_THROWS_AS(dbscan(one, {0.1, 0}), Error);
}

TEST_CASE("dbscan with min_pts 1 equals eps-graph components") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 20;
    const double eps = 0.05 + 0.25 * uni(rng);
    std::vector<std::pair<double, double>> raw;
    for (std::size_t i = 0; i < n; ++i) raw.emplace_back(uni(rng), uni(rng));
    const auto labels = dbscan(to_points(raw), {eps, 1});
    CHECK(oracle::same_partition(labels, oracle::eps_components(raw, eps)));
  }
}

TEST_CASE("dbscan labels do not depend on input order") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point2> pts;
    for (int i = 0; i < 15; ++i) pts.push_back({uni(rng), uni(rng)});
    const auto labels = dbscan(pts, {0.2, 3});
    std::vector<std::size_t> perm(pts.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Point2> shuffled;
    for (const auto k : perm) shuffled.push_back(pts[k]);
    const auto relabeled = dbscan(shuffled, {0.2, 3});
    for (std::size_t i = 0; i < perm.size(); ++i) CHECK(relabeled[i] == labels[perm[i]]);
  }
}

TEST_CASE("mark radius law") {
  CHECK(mark_radius_px(1, 1) == kClusterMarkMinPx);
  CHECK(mark_radius_px(1, 9) == kClusterMarkMinPx);
  CHECK(mark_radius_px(9, 9) == kClusterMarkMaxPx);
  CHECK(mark_radius_px(5, 9) == doctest::Approx(6.0 + 12.0 * std::sqrt(0.5)));
}

TEST_CASE("summarize: single cluster") {
  const auto ref = reference_point(DiagramKind::kTaylor, "ref", TaylorMetrics{1.0, 1.0, 1.0, 0.0});
  const std::vector<DiagramPoint> pts = {taylor_point("a", 0.9, 0.9), taylor_point("b", 1.1, 0.8)};
  const std::vector<int> labels = {0, 0};
  const auto clusters = summarize(DiagramKind::kTaylor, pts, labels, ref);
  REQUIRE(clusters.size() == 1);
  CHECK(clusters[0].cluster_id == 1);
  CHECK(clusters[0].shade == 0);
  CHECK(clusters[0].count == 2);
  CHECK(clusters[0].member_ids == std::vector<std::string>{"a", "b"});
  CHECK(clusters[0].mark_radius_px == kClusterMarkMaxPx);
  const auto& c = std::get<TaylorMetrics>(clusters[0].centroid.metrics);
  CHECK(c.sigma_model == doctest::Approx(1.0));
  CHECK(c.correlation == doctest::Approx(0.85));
}

TEST_CASE("summarize: singleton centroid is the model itself; ids ordered by distance") {
  const auto ref = reference_point(DiagramKind::kTaylor, "ref", TaylorMetrics{1.0, 1.0, 1.0, 0.0});
  const std::vector<DiagramPoint> pts = {taylor_point("far", 2.0, 0.1),
                                         taylor_point("near", 1.0, 0.99),
                                         taylor_point("mid1", 1.2, 0.7),
                                         taylor_point("mid2", 1.25, 0.7)};
  const std::vector<int> labels = {0, 1, 2, 2};
  const auto clusters = summarize(DiagramKind::kTaylor, pts, labels, ref);
  REQUIRE(clusters.size() == 3);
  CHECK(clusters[0].member_ids == std::vector<std::string>{"near"});
  CHECK(clusters[0].centroid.x == pts[1].x);
  CHECK(clusters[0].centroid.y == pts[1].y);
  CHECK(clusters[0].mark_radius_px == kClusterMarkMinPx);
  CHECK(clusters[2].member_ids == std::vector<std::string>{"far"});
  CHECK(clusters[2].shade == kClusterShadeMax);
  for (std::size_t k = 1; k < clusters.size(); ++k) {
    CHECK(clusters[k].cluster_id == static_cast<int>(k + 1));
    CHECK(clusters[k].distance >= clusters[k - 1].distance);
    CHECK(clusters[k].shade >= clusters[k - 1].shade);
  }
  CHECK(clusters[1].mark_radius_px > clusters[0].mark_radius_px);
}

TEST_CASE("summarize: label mismatch") {
  const auto ref = reference_point(DiagramKind::kTaylor, "ref", TaylorMetrics{1.0, 1.0, 1.0, 0.0});
  const std::vector<DiagramPoint> pts = {taylor_point("a", 1.0, 0.5)};
  const std::vector<int> labels = {0, 1};
  CHECK_THROWS_AS(summarize(DiagramKind::kTaylor, pts, labels, ref), Error);
}

TEST_CASE("aggregate partitions the models") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> sigma(0.2, 2.0);
  std::uniform_real_distribution<double> rho(-0.9, 1.0);
  const auto ref = reference_point(DiagramKind::kTaylor, "ref", TaylorMetrics{1.0, 1.0, 1.0, 0.0});
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<DiagramPoint> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(taylor_point("m" + std::to_string(i), sigma(rng), rho(rng)));
    const auto clusters = aggregate(DiagramKind::kTaylor, pts, ref, 2.2, {0.1, 1});
    std::multiset<std::string> seen;
    for (const auto& c : clusters) {
      CHECK(c.count == c.member_ids.size());
      seen.insert(c.member_ids.begin(), c.member_ids.end());
    }
    CHECK(seen.size() == 20);
    CHECK(std::set<std::string>(seen.begin(), seen.end()).size() == 20);
  }
}
