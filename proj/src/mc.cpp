#include "gschur/mc.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "gschur/errors.hpp"

namespace gschur {

namespace {

double uniform01(std::mt19937_64& rng) {
  // 53-bit mantissa in (0, 1]; never returns 0 so logs are safe.
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
}

// Marsaglia polar method; second variate of each pair is discarded to keep
// the per-draw stream position independent of call history.
double normal_variate(std::mt19937_64& rng) {
  for (;;) {
    double u = 2.0 * uniform01(rng) - 1.0;
    double v = 2.0 * uniform01(rng) - 1.0;
    double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

double gamma_variate(std::mt19937_64& rng, double shape) {
  if (!(shape > 0.0)) raise(Errc::NonpositiveShapeOrRate, "gamma_variate: shape > 0");
  if (shape < 1.0) {
    double g = gamma_variate(rng, shape + 1.0);
    return g * std::pow(uniform01(rng), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal_variate(rng);
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    double u = uniform01(rng);
    double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::vector<double> sample(const GammaConvolution& conv, std::size_t n_samples,
                           std::uint64_t seed, unsigned workers) {
  if (n_samples < 1) raise(Errc::InvalidArgument, "sample: n_samples >= 1");
  if (workers < 1) workers = 1;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_samples));

  const std::vector<GammaTerm>& terms = conv.terms();
  std::vector<double> out(n_samples);

  auto fill = [&](unsigned w, std::size_t lo, std::size_t hi) {
    std::mt19937_64 rng(splitmix64(seed ^ (0xA5A5A5A500000000ULL + w)));
    for (std::size_t i = lo; i < hi; ++i) {
      double y = 0.0;
      for (const GammaTerm& t : terms)
        y += t.weight * gamma_variate(rng, t.shape) / t.rate;
      out[i] = y;
    }
  };

  if (workers == 1) {
    fill(0, 0, n_samples);
  } else {
    std::vector<std::thread> pool;
    std::size_t per = n_samples / workers, extra = n_samples % workers;
    std::size_t lo = 0;
    for (unsigned w = 0; w < workers; ++w) {
      std::size_t hi = lo + per + (w < extra ? 1 : 0);
      pool.emplace_back(fill, w, lo, hi);
      lo = hi;
    }
    for (auto& t : pool) t.join();
  }
  // Canonical merged order.
  std::sort(out.begin(), out.end());
  return out;
}

McReport validate_cdf(const GammaConvolution& conv, std::size_t n_samples,
                      std::uint64_t seed, const std::vector<double>& probe_points,
                      double band_alpha, unsigned workers) {
  if (probe_points.empty())
    raise(Errc::InvalidArgument, "validate_cdf: probe points required");
  for (double x : probe_points)
    if (!(x > 0.0)) raise(Errc::InvalidArgument, "validate_cdf: probes must be positive");
  if (!(band_alpha > 0.0 && band_alpha < 1.0))
    raise(Errc::InvalidArgument, "validate_cdf: band_alpha in (0,1)");

  std::vector<double> draws = sample(conv, n_samples, seed, workers);

  McReport rep;
  rep.sample_count = n_samples;
  rep.seed = seed;
  rep.band_alpha = band_alpha;
  rep.worker_count = std::max(1u, std::min<unsigned>(
                                      workers, static_cast<unsigned>(n_samples)));
  rep.dkw_band =
      std::sqrt(std::log(2.0 / band_alpha) / (2.0 * static_cast<double>(n_samples)));
  rep.sampler = "marsaglia-tsang/mt19937_64";

  double worst = 0.0;
  for (double x : probe_points) {
    auto it = std::lower_bound(draws.begin(), draws.end(), x);
    double ecdf = static_cast<double>(it - draws.begin()) /
                  static_cast<double>(n_samples);
    double acdf = conv.cdf(x);
    rep.points.push_back({x, ecdf, acdf, rep.dkw_band});
    worst = std::max(worst, std::fabs(ecdf - acdf));
  }
  rep.max_abs_gap = worst;
  rep.pass = worst <= rep.dkw_band + conv.eval_tolerance();
  return rep;
}

}  // namespace gschur
