#ifndef GSCHUR_MC_HPP
#define GSCHUR_MC_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gschur/convolution.hpp"

namespace gschur {

struct McPoint {
  double x;
  double empirical_cdf;
  double analytic_cdf;
  double dkw_band;
};

// Comparison of the empirical CDF of a sampled convolution against the
// series CDF, with a distribution-free acceptance band.
struct McReport {
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
  std::vector<McPoint> points;
  double max_abs_gap = 0.0;
  double band_alpha = 0.0;
  double dkw_band = 0.0;  // sqrt(ln(2/band_alpha) / (2 n))
  bool pass = false;
  std::string sampler;  // algorithm + generator, recorded for audit
  unsigned worker_count = 1;
};

// One Gamma(shape, 1) draw (Marsaglia-Tsang squeeze; shapes below 1 are
// boosted through Gamma(shape+1) and a uniform power). Uniform and normal
// variates are generated explicitly from the engine's 64-bit output so the
// stream is identical across standard libraries.
double gamma_variate(std::mt19937_64& rng, double shape);

// n_samples iid draws of sum_i weight_i X_i, sorted ascending. The stream is
// split into `workers` pre-seeded substreams, so the output depends only on
// (seed, n_samples, workers), not on scheduling.
std::vector<double> sample(const GammaConvolution& conv, std::size_t n_samples,
                           std::uint64_t seed, unsigned workers = 1);

// Empirical-vs-analytic CDF comparison at the probe points; passes when the
// largest gap stays within the DKW band plus the evaluation tolerance.
McReport validate_cdf(const GammaConvolution& conv, std::size_t n_samples,
                      std::uint64_t seed, const std::vector<double>& probe_points,
                      double band_alpha, unsigned workers = 1);

}  // namespace gschur

#endif  // GSCHUR_MC_HPP
