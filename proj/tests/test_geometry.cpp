#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "polars/error.hpp"
#include "polars/geometry.hpp"

using namespace polars;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("place: perfect Taylor model sits on the reference") {
  const TaylorMetrics t{1.5, 1.5, 1.0, 0.0};
  const auto p = place(DiagramKind::kTaylor, "m", t);
  const auto r = reference_point(DiagramKind::kTaylor, "ref", t);
  CHECK(p.theta == 0.0);
  CHECK(p.r == r.r);
  CHECK(p.x == doctest::Approx(r.x));
  CHECK(p.y == 0.0);
}

TEST_CASE("place: independent SMI model lies on the negative axis") {
  const InfoMetrics m = info_from_entropies(1.0, 1.0, 0.0);
  const auto p = place(DiagramKind::kSmi, "m", m);
  CHECK(p.theta == doctest::Approx(kPi));
  CHECK(p.x == doctest::Approx(-1.0));
  CHECK(p.y == doctest::Approx(0.0));
  CHECK(p.y >= 0.0);
}

TEST_CASE("reference_point radii per kind") {
  CHECK(reference_point(DiagramKind::kTaylor, "r", TaylorMetrics{1.0, 2.0, 0.5, 1.0}).r == 1.0);
  const auto info = info_from_entropies(2.0, 1.0, 0.5);
  const auto smi = reference_point(DiagramKind::kSmi, "r", info);
  CHECK(smi.r == 2.0);
  CHECK(smi.theta == 0.0);
  const auto info4 = info_from_entropies(4.0, 1.0, 0.5);
  CHECK(reference_point(DiagramKind::kNmi, "r", info4).r == 2.0);
}

TEST_CASE("flavor mismatch is rejected") {
  CHECK_THROWS_AS(place(DiagramKind::kSmi, "m", TaylorMetrics{1, 1, 1, 0}), Error);
  CHECK_THROWS_AS(reference_point(DiagramKind::kTaylor, "m", InfoMetrics{}), Error);
  try {
    place(DiagramKind::kNmi, "m", TaylorMetrics{1, 1, 1, 0});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kFlavorMismatch);
  }
}

TEST_CASE("degenerate information metrics are placed at 90 degrees") {
  const auto m = info_from_entropies(1.5, 0.0, 0.0);
  const auto p = place(DiagramKind::kSmi, "m", m);
  CHECK(p.degenerate);
  CHECK(p.r == 0.0);
  CHECK(p.theta == doctest::Approx(kPi / 2));
  const auto q = place(DiagramKind::kNmi, "m", info_from_entropies(0.0, 2.0, 0.0));
  CHECK(q.degenerate);
  CHECK(q.theta == doctest::Approx(kPi / 2));
}

TEST_CASE("distance to the reference equals the distance measure") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    const auto [x, y] = oracle::random_pair(rng, 100);
    const MetricTriple taylor = taylor_metrics(x, y);
    const MetricTriple info = info_metrics(x, y);
    for (const auto kind : {DiagramKind::kTaylor, DiagramKind::kSmi, DiagramKind::kNmi}) {
      const MetricTriple& m = kind == DiagramKind::kTaylor ? taylor : info;
      const auto p = place(kind, "m", m);
      const auto r = reference_point(kind, "ref", m);
      const double d = std::hypot(p.x - r.x, p.y - r.y);
      const double c = distance_measure(kind, m);
      CHECK(std::abs(d - c) <= 1e-9 * std::max(d, c) + 1e-12);
      CHECK(p.y >= 0.0);
      CHECK(p.theta >= 0.0);
      CHECK(p.theta <= kPi);
      if (kind == DiagramKind::kNmi) {
        CHECK(p.x >= 0.0);
        CHECK(p.theta <= kPi / 2);
      }
    }
  }
}

TEST_CASE("theta decreases as similarity grows") {
  double last = 10.0;
  for (int k = -10; k <= 10; ++k) {
    const double rho = k / 10.0;
    const auto p = place(DiagramKind::kTaylor, "m", TaylorMetrics{1.0, 1.0, rho, 0.0});
    CHECK(p.theta < last);
    last = p.theta;
  }
  last = 10.0;
  double last_nmi = 10.0;
  for (int k = 1; k <= 10; ++k) {
    InfoMetrics m = info_from_entropies(2.0, 2.0, 0.2 * k);
    const auto p = place(DiagramKind::kSmi, "m", m);
    const auto q = place(DiagramKind::kNmi, "m", m);
    CHECK(p.theta < last);
    CHECK(q.theta < last_nmi);
    last = p.theta;
    last_nmi = q.theta;
  }
}

TEST_CASE("angular extent rule") {
  CHECK(angular_extent(DiagramKind::kTaylor, false) == doctest::Approx(kPi / 2));
  CHECK(angular_extent(DiagramKind::kTaylor, true) == doctest::Approx(kPi));
  CHECK(angular_extent(DiagramKind::kSmi, false) == doctest::Approx(kPi));
  CHECK(angular_extent(DiagramKind::kNmi, true) == doctest::Approx(kPi / 2));
}

TEST_CASE("kind names round-trip") {
  for (const auto kind : {DiagramKind::kTaylor, DiagramKind::kSmi, DiagramKind::kNmi}) {
    CHECK(parse_kind(kind_name(kind)) == kind);
  }
  CHECK_THROWS_AS(parse_kind("polar"), Error);
}
