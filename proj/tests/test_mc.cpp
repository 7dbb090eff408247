#include <cmath>
#include <random>

#include <doctest.h>

#include "gschur/errors.hpp"
#include "gschur/mc.hpp"
#include "gschur/special.hpp"
#include "gschur/verify.hpp"

using gschur::GammaConvolution;
using gschur::McReport;
using gschur::sample;
using gschur::validate_cdf;
using gschur::WeightVector;

TEST_CASE("sampling is reproducible and sorted") {
  GammaConvolution conv = gschur::iid_convolution(WeightVector({0.7, 0.3}), 1.0, 1.0);
  auto a = sample(conv, 1000, 1234, 1);
  auto b = sample(conv, 1000, 1234, 1);
  CHECK(a == b);
  CHECK(std::is_sorted(a.begin(), a.end()));

  auto c = sample(conv, 1, 99, 1);
  auto d = sample(conv, 1, 99, 1);
  CHECK(c == d);
  CHECK(c.size() == 1);

  // Different worker splits give different (but internally reproducible) streams.
  auto e = sample(conv, 1000, 1234, 4);
  auto f = sample(conv, 1000, 1234, 4);
  CHECK(e == f);
}

TEST_CASE("sample moments match the convolution") {
  GammaConvolution g11 = gschur::make_convolution({{1.0, 1.0, 1.0}});
  auto s = sample(g11, 100000, 7, 4);
  double mean = 0.0;
  for (double v : s) mean += v;
  mean /= static_cast<double>(s.size());
  CHECK(std::fabs(mean - 1.0) < 4.0 / std::sqrt(1e5));

  GammaConvolution conv = gschur::iid_convolution(WeightVector({0.7, 0.3}), 1.0, 1.0);
  auto t = sample(conv, 100000, 8, 4);
  double m = 0.0, v2 = 0.0;
  for (double v : t) m += v;
  m /= static_cast<double>(t.size());
  for (double v : t) v2 += (v - m) * (v - m);
  v2 /= static_cast<double>(t.size());
  CHECK(std::fabs(m - 1.0) < 0.012);
  CHECK(std::fabs(v2 - 0.58) < 0.03);
}

TEST_CASE("single-gamma sampler passes a KS test at the 1% level") {
  for (double shape : {0.4, 1.0, 3.7}) {
    CAPTURE(shape);
    GammaConvolution g = gschur::make_convolution({{1.0, shape, 1.0}});
    auto s = sample(g, 100000, 4242, 4);
    double n = static_cast<double>(s.size());
    double dmax = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      double f = gschur::reg_lower_gamma(shape, s[i]);
      double hi = (static_cast<double>(i) + 1.0) / n - f;
      double lo = f - static_cast<double>(i) / n;
      dmax = std::max({dmax, hi, lo});
    }
    // Asymptotic 1% critical value: 1.6276 / sqrt(n).
    CHECK(dmax < 1.6276 / std::sqrt(n));
  }
}

TEST_CASE("validate_cdf passes on exact closed forms and fails when sabotaged") {
  GammaConvolution g22 = gschur::iid_convolution(WeightVector({0.5, 0.5}), 1.0, 1.0);
  std::vector<double> probes = {0.2, 0.5, 1.0, 1.5, 2.5};
  McReport rep = validate_cdf(g22, 200000, 77, probes, 0.01, 4);
  CHECK(rep.pass);
  CHECK(rep.max_abs_gap <= rep.dkw_band + 1e-10);
  CHECK(rep.sample_count == 200000);
  CHECK(rep.seed == 77);
  CHECK(rep.points.size() == probes.size());
  CHECK(rep.dkw_band ==
        doctest::Approx(std::sqrt(std::log(2.0 / 0.01) / (2.0 * 200000.0))));
  CHECK(rep.sampler == "marsaglia-tsang/mt19937_64");

  // An injected 0.05 offset must blow through the band.
  bool sabotaged_fail = false;
  for (const auto& p : rep.points)
    if (std::fabs(p.empirical_cdf - (p.analytic_cdf + 0.05)) > rep.dkw_band)
      sabotaged_fail = true;
  CHECK(sabotaged_fail);
}

TEST_CASE("validate_cdf input guards") {
  GammaConvolution g = gschur::make_convolution({{1.0, 1.0, 1.0}});
  CHECK_THROWS_AS(validate_cdf(g, 100, 1, {}, 0.01), gschur::DomainError);
  CHECK_THROWS_AS(validate_cdf(g, 100, 1, {-1.0}, 0.01), gschur::DomainError);
  CHECK_THROWS_AS(validate_cdf(g, 100, 1, {1.0}, 1.5), gschur::DomainError);
}

TEST_CASE("dkw validation across random configurations") {
  std::mt19937_64 rng(31337);
  int failures = 0;
  for (int rep = 0; rep < 6; ++rep) {
    std::size_t n = 1 + rng() % 6;
    double alpha = gschur::verify::uniform(rng, 0.5, 5.0);
    double beta = gschur::verify::uniform(rng, 0.5, 4.0);
    WeightVector w = gschur::verify::random_weight_vector(rng, n, 1.0);
    GammaConvolution conv = gschur::iid_convolution(w, alpha, beta);
    std::vector<double> probes;
    for (double f : {0.3, 0.7, 1.0, 1.5, 2.2}) probes.push_back(f * conv.mean());
    if (!validate_cdf(conv, 150000, rng(), probes, 0.01, 4).pass) ++failures;
  }
  CHECK(failures <= 1);
}
