#ifndef GSCHUR_CROSSINGS_HPP
#define GSCHUR_CROSSINGS_HPP

#include <cstddef>
#include <vector>

#include "gschur/weight_vector.hpp"

namespace gschur {

// One located sign change of D(x) = P(mu;a,b,x) - P(lambda;a,b,x).
struct Crossing {
  double x;
  double bracket_width;
};

// Grid stretch where |D| never exceeded the decision band 4 * eval_tol.
struct InconclusiveSegment {
  double x_lo;
  double x_hi;
};

struct ScanPoint {
  double x;
  double p_mu;
  double p_lambda;
  double d;
};

struct CrossingReport {
  std::vector<Crossing> crossings;  // sorted by x
  double x_lo = 0.0;
  double x_hi = 0.0;
  std::size_t resolution = 0;
  // Smallest, over the segments between consecutive crossings (and the scan
  // boundaries), of the largest |D| observed inside the segment. A small
  // value flags a near-tangency worth rescanning at finer resolution.
  double min_gap_detected = 0.0;
  std::vector<InconclusiveSegment> inconclusive;
};

// Evaluates D on a uniform grid of `grid` intervals over [x_lo, x_hi].
// Grid points are independent; `threads` > 1 splits them across workers.
std::vector<ScanPoint> scan_difference(const WeightVector& mu, const WeightVector& lambda,
                                       double alpha, double beta, double x_lo,
                                       double x_hi, std::size_t grid,
                                       unsigned threads = 1, double eval_tol = 1e-10);

// Locates all sign changes of D over [x_lo, x_hi]: grid scan, then bisection
// of every bracket whose endpoints clear the 4 * eval_tol decision band on
// both sides. Grid runs inside the band are reported as inconclusive rather
// than counted; series error could otherwise manufacture crossings.
// Requires mu strictly majorized by (and not a permutation of) lambda.
CrossingReport crossing_points(const WeightVector& mu, const WeightVector& lambda,
                               double alpha, double beta, double x_lo, double x_hi,
                               std::size_t grid, double refine_tol,
                               unsigned threads = 1, double eval_tol = 1e-10);

// Spec default range: covers both order-reversal regions,
//   x_lo = min(0.01 s, 0.5 convex_threshold), x_hi = 2 concave_threshold.
struct ScanRange {
  double x_lo;
  double x_hi;
};
ScanRange default_scan_range(const WeightVector& mu, const WeightVector& lambda,
                             double alpha, double beta);

}  // namespace gschur

#endif  // GSCHUR_CROSSINGS_HPP
