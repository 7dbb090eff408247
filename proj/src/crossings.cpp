#include "gschur/crossings.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "gschur/convolution.hpp"
#include "gschur/errors.hpp"
#include "gschur/majorization.hpp"
#include "gschur/schur_order.hpp"

namespace gschur {

namespace {

void run_partitioned(std::size_t count, unsigned threads,
                     const std::function<void(std::size_t, std::size_t)>& body) {
  if (threads <= 1 || count < 2 * threads) {
    body(0, count);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t per = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t lo = t * per, hi = std::min(count, lo + per);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::vector<ScanPoint> scan_difference(const WeightVector& mu, const WeightVector& lambda,
                                       double alpha, double beta, double x_lo,
                                       double x_hi, std::size_t grid, unsigned threads,
                                       double eval_tol) {
  if (!(x_lo > 0.0) || !(x_hi > x_lo))
    raise(Errc::InvalidArgument, "scan_difference: need 0 < x_lo < x_hi");
  if (grid < 2) raise(Errc::InvalidArgument, "scan_difference: grid too small");

  GammaConvolution cm = GammaConvolution::iid(mu, alpha, beta, eval_tol);
  GammaConvolution cl = GammaConvolution::iid(lambda, alpha, beta, eval_tol);

  std::vector<ScanPoint> pts(grid + 1);
  const double step = (x_hi - x_lo) / static_cast<double>(grid);
  run_partitioned(pts.size(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      double x = (i == grid) ? x_hi : x_lo + step * static_cast<double>(i);
      double pm = cm.cdf(x);
      double pl = cl.cdf(x);
      pts[i] = {x, pm, pl, pm - pl};
    }
  });
  return pts;
}

ScanRange default_scan_range(const WeightVector& mu, const WeightVector& lambda,
                             double alpha, double beta) {
  std::size_t n = std::max<std::size_t>(2, std::max(mu.size(), lambda.size()));
  Thresholds t = theorem1_thresholds(n, alpha, beta, lambda.sum(), mu.sum(), true);
  double s = lambda.sum();
  double lo = 0.01 * s;
  if (t.convex) lo = std::min(lo, 0.5 * *t.convex);
  return {lo, 2.0 * *t.concave};
}

CrossingReport crossing_points(const WeightVector& mu, const WeightVector& lambda,
                               double alpha, double beta, double x_lo, double x_hi,
                               std::size_t grid, double refine_tol, unsigned threads,
                               double eval_tol) {
  if (grid < 16) raise(Errc::InvalidArgument, "crossing_points: grid >= 16 required");
  if (!(refine_tol > 0.0))
    raise(Errc::InvalidArgument, "crossing_points: refine_tol must be positive");
  MajorizationRelation rel = is_majorized(mu, lambda);
  if (rel.kind != MajorKind::Strict)
    raise(Errc::NotStrictlyMajorized,
          "crossing_points: mu must be strictly majorized by lambda and not a "
          "permutation of it");

  std::vector<ScanPoint> pts =
      scan_difference(mu, lambda, alpha, beta, x_lo, x_hi, grid, threads, eval_tol);

  GammaConvolution cm = GammaConvolution::iid(mu, alpha, beta, eval_tol);
  GammaConvolution cl = GammaConvolution::iid(lambda, alpha, beta, eval_tol);
  auto D = [&](double x) { return cm.cdf(x) - cl.cdf(x); };

  const double band = 4.0 * eval_tol;
  auto sgn = [band](double d) { return d > band ? 1 : (d < -band ? -1 : 0); };

  CrossingReport rep;
  rep.x_lo = x_lo;
  rep.x_hi = x_hi;
  rep.resolution = grid;

  // Bracket every decisive sign change; collect inconclusive runs.
  int last_sign = 0;
  double last_x = x_lo;
  std::size_t inconcl_start = pts.size();
  std::vector<double> seg_max;  // max |D| per segment between crossings
  double cur_max = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    int s = sgn(pts[i].d);
    cur_max = std::max(cur_max, std::fabs(pts[i].d));
    if (s == 0) {
      if (inconcl_start == pts.size()) inconcl_start = i;
      continue;
    }
    if (inconcl_start != pts.size()) {
      rep.inconclusive.push_back({pts[inconcl_start].x, pts[i].x});
      inconcl_start = pts.size();
    }
    if (last_sign != 0 && s != last_sign) {
      double a = last_x, b = pts[i].x;
      double da = (last_sign > 0) ? 1.0 : -1.0;
      while (b - a > refine_tol) {
        double mid = 0.5 * (a + b);
        double dm = D(mid);
        if ((dm >= 0.0 ? 1.0 : -1.0) == da)
          a = mid;
        else
          b = mid;
      }
      rep.crossings.push_back({0.5 * (a + b), b - a});
      seg_max.push_back(cur_max);
      cur_max = std::fabs(pts[i].d);
    }
    last_sign = s;
    last_x = pts[i].x;
  }
  if (inconcl_start != pts.size())
    rep.inconclusive.push_back({pts[inconcl_start].x, pts.back().x});
  seg_max.push_back(cur_max);

  rep.min_gap_detected = seg_max.empty()
                             ? 0.0
                             : *std::min_element(seg_max.begin(), seg_max.end());
  return rep;
}

}  // namespace gschur
