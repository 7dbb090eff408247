#include <cmath>
#include <random>

#include <doctest.h>

#include "gschur/crossings.hpp"
#include "gschur/errors.hpp"
#include "gschur/schur_order.hpp"
#include "gschur/verify.hpp"
#include "oracles.hpp"

using gschur::crossing_points;
using gschur::CrossingReport;
using gschur::default_scan_range;
using gschur::scan_difference;
using gschur::WeightVector;

TEST_CASE("the textbook exponential pair crosses exactly once") {
  WeightVector mu({0.5, 0.5});
  WeightVector lambda({1.0, 0.0});
  CrossingReport rep =
      crossing_points(mu, lambda, 1.0, 1.0, 0.01, 10.0, 512, 1e-9);
  REQUIRE(rep.crossings.size() == 1);

  // Independent oracle: the crossing solves ln(1+2x) = x on (0, inf);
  // 50-digit root 1.256431208626169676983.
  double root = oracle::bisect_root(
      [](double x) { return std::log1p(2.0 * x) - x; }, 0.5, 4.0, 1e-12);
  CHECK(root == doctest::Approx(1.256431208626169676983).epsilon(1e-10));
  CHECK(std::fabs(rep.crossings[0].x - root) < 1e-7);
  CHECK(rep.crossings[0].bracket_width <= 1e-9);
}

TEST_CASE("permutations are rejected") {
  CHECK_THROWS_AS(crossing_points(WeightVector({0.5, 0.5}), WeightVector({0.5, 0.5}),
                                  1.0, 1.0, 0.01, 10.0, 64, 1e-8),
                  gschur::DomainError);
  CHECK_THROWS_AS(crossing_points(WeightVector({1.0, 0.0}), WeightVector({0.5, 0.5}),
                                  1.0, 1.0, 0.01, 10.0, 64, 1e-8),
                  gschur::DomainError);
  CHECK_THROWS_AS(crossing_points(WeightVector({0.5, 0.5}), WeightVector({1.0, 0.0}),
                                  1.0, 1.0, 0.01, 10.0, 8, 1e-8),
                  gschur::DomainError);
}

TEST_CASE("default scan range spans both threshold regions") {
  WeightVector mu({0.5, 0.5});
  WeightVector lambda({1.0, 0.0});
  auto r = default_scan_range(mu, lambda, 2.0, 1.0);
  CHECK(r.x_lo == doctest::Approx(0.01));
  CHECK(r.x_hi == doctest::Approx(5.0));
}

TEST_CASE("random n=2 strict pairs cross exactly once") {
  std::mt19937_64 rng(606);
  for (int rep = 0; rep < 10; ++rep) {
    double alpha = gschur::verify::uniform(rng, 0.5, 5.0);
    double s = gschur::verify::uniform(rng, 0.5, 2.0);
    auto [mu, lambda] = gschur::verify::random_strict_pair(rng, 2, s);
    auto range = default_scan_range(mu, lambda, alpha, 1.0);
    CrossingReport report = crossing_points(mu, lambda, alpha, 1.0, range.x_lo,
                                            range.x_hi, 512, 1e-8 * s);
    CAPTURE(alpha);
    CHECK(report.crossings.size() == 1);
  }
}

TEST_CASE("existence for larger n, with sign agreement beyond the thresholds") {
  std::mt19937_64 rng(707);
  for (int rep = 0; rep < 8; ++rep) {
    std::size_t n = 3 + rng() % 4;
    double alpha = gschur::verify::uniform(rng, 0.5, 5.0);
    double s = 1.0;
    auto [mu, lambda] = gschur::verify::random_strict_pair(rng, n, s);
    auto range = default_scan_range(mu, lambda, alpha, 1.0);
    // When no convex threshold exists, scan down to 1e-3 s.
    gschur::Thresholds t = gschur::theorem1_thresholds(n, alpha, 1.0, s, s, false);
    double x_lo = t.convex ? range.x_lo : 1e-3 * s;
    CrossingReport report =
        crossing_points(mu, lambda, alpha, 1.0, x_lo, range.x_hi, 512, 1e-8 * s);
    CAPTURE(n);
    CAPTURE(alpha);
    CHECK(report.crossings.size() >= 1);

    auto pts = scan_difference(mu, lambda, alpha, 1.0, x_lo, range.x_hi, 256);
    for (const auto& p : pts) {
      if (p.x > *t.concave) CHECK(p.d >= -4e-10);
      if (t.convex && p.x < *t.convex) CHECK(p.d <= 4e-10);
    }
  }
}

TEST_CASE("threaded scan matches the serial scan exactly") {
  WeightVector mu({0.45, 0.35, 0.2});
  WeightVector lambda({0.7, 0.2, 0.1});
  auto a = scan_difference(mu, lambda, 1.5, 1.0, 0.05, 6.0, 200, 1);
  auto b = scan_difference(mu, lambda, 1.5, 1.0, 0.05, 6.0, 200, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].d == b[i].d);
  }
}

TEST_CASE("report fields are coherent") {
  WeightVector mu({0.5, 0.5});
  WeightVector lambda({1.0, 0.0});
  CrossingReport rep = crossing_points(mu, lambda, 1.0, 1.0, 0.01, 10.0, 128, 1e-8);
  CHECK(rep.x_lo == 0.01);
  CHECK(rep.x_hi == 10.0);
  CHECK(rep.resolution == 128);
  CHECK(rep.min_gap_detected > 0.0);
  for (std::size_t i = 1; i < rep.crossings.size(); ++i)
    CHECK(rep.crossings[i - 1].x < rep.crossings[i].x);
}
