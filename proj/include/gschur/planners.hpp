#ifndef GSCHUR_PLANNERS_HPP
#define GSCHUR_PLANNERS_HPP

#include <cstdint>

#include "gschur/weight_vector.hpp"

namespace gschur {

// Sample-size plan for keeping the Type-I error of the mean-absolute-SNR
// detector below delta.
struct SignalPlan {
  double threshold_x = 0.0;   // detection cutoff
  double delta = 0.0;         // Type-I tolerance
  long min_samples = 0;       // smallest N with tail <= delta
  double type1_at_min = 0.0;  // tail probability at min_samples
  bool monotone_region = false;  // x > 3/(2 sqrt 2): tail non-increasing in N
};

// Pr(Q(N) >= x) where Q(N) averages N iid absolute unit-variance Laplace
// draws under the null; each scaled draw is Gamma(1, sqrt 2), so the tail
// collapses to 1 - P(N, N sqrt(2) x).
double signal_type1_prob(long n_samples, double x);

// Smallest N with signal_type1_prob(N, x) <= delta, by doubling then
// bisection. Inside the monotone region the bisection is already certified
// minimal; outside it minimality is verified exhaustively below the
// candidate. Throws Unreachable when no N up to 10^6 works (x at or below
// the mean 1/sqrt 2 forces the tail toward 1).
SignalPlan signal_min_samples(double x, double delta);

// Sample-size plan for the Gaussian trace estimator of an SPSD matrix.
struct TracePlan {
  WeightVector spectrum;     // eigenvalues, non-increasing
  double trace = 0.0;        // spectrum sum
  double spectral_norm = 0.0;  // largest eigenvalue
  double epsilon = 0.0;      // relative accuracy
  double delta = 0.0;        // per-tail failure probability
  long bound_samples = 0;    // sufficient N from the effective-rank bound
  long exact_samples = 0;    // smallest N passing both tail checks
  double effective_rank = 0.0;  // trace / spectral_norm
};

enum class TailSide { Lower, Upper };

// Exact tail of the N-probe Gaussian trace estimate:
//   Lower: Pr(estimate <= (1-eps) trace) = cdf(iid(spectrum, N/2, N/2), (1-eps) trace)
//   Upper: Pr(estimate >= (1+eps) trace)
double trace_tail(const WeightVector& spectrum, long n_samples, double epsilon,
                  TailSide side, double eval_tol = 1e-10);

// Smallest integer N strictly above (norm/trace) (8/eps^2) ln(1/delta).
long trace_bound_samples(double trace, double spectral_norm, double epsilon,
                         double delta);

// Smallest N with both tails <= delta (doubling + bisection, minimality
// rechecked below the candidate); includes bound_samples for comparison.
TracePlan trace_exact_min_samples(const WeightVector& spectrum, double epsilon,
                                  double delta, double eval_tol = 1e-10);

enum class SkewnessRelation { OrderedByTheorem1, Equal, IncomparableByTheorem };

// Majorization-as-skewness comparison of two equal-trace spectra. When
// spectrum2 ≺ spectrum1 and N > 2/eps, the lower-tail probabilities are
// provably ordered: the more skewed spectrum (1) concentrates less,
//   Pr(est_2 <= (1-eps) tr) <= Pr(est_1 <= (1-eps) tr).
// Both tails are computed numerically regardless of whether the theorem
// applies.
struct SkewnessReport {
  SkewnessRelation relation = SkewnessRelation::IncomparableByTheorem;
  double lower_tail_1 = 0.0;
  double lower_tail_2 = 0.0;
  bool sample_size_ok = false;  // N > 2/eps
};
SkewnessReport skewness_compare(const WeightVector& spectrum1,
                                const WeightVector& spectrum2, long n_samples,
                                double epsilon, double eval_tol = 1e-10);

const char* skewness_relation_name(SkewnessRelation r);

}  // namespace gschur

#endif  // GSCHUR_PLANNERS_HPP
