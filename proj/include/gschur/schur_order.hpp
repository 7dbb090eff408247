#ifndef GSCHUR_SCHUR_ORDER_HPP
#define GSCHUR_SCHUR_ORDER_HPP

#include <cstddef>
#include <functional>
#include <optional>

#include "gschur/weight_vector.hpp"

namespace gschur {

enum class Relation { MuGE, MuLE, Equal, Undecided };
enum class DecidedBy { Theorem1, Corollary2, Corollary3, Bock, Bakirov, Numeric, None };

const char* relation_name(Relation r);
const char* decided_by_name(DecidedBy d);

// Outcome of a Schur comparison of P(mu; alpha, beta, x) against
// P(lambda; alpha, beta, x).
//   MuGE: P(mu) >= P(lambda)    MuLE: P(mu) <= P(lambda)
struct OrderVerdict {
  Relation relation = Relation::Undecided;
  DecidedBy decided_by = DecidedBy::None;
  std::optional<double> concave_threshold;  // MuGE holds for x above this
  std::optional<double> convex_threshold;   // MuLE holds for x below this
  std::optional<double> numeric_gap;        // cdf(mu) - cdf(lambda)
  std::optional<double> numeric_gap_error;  // certified bound on the gap error
};

// Region thresholds for n iid Gamma(alpha, beta) summands:
//   concave = (2 alpha + 1) s_lambda / (2 beta)                 (always)
//   convex  = alpha s_mu / beta            for n = 2
//             (alpha - 1) s_mu / beta      for n >= 3, alpha > 1
//             absent                       for n >= 3, alpha <= 1
// The strict order uses s_lambda = s_mu = s; the weak order keeps the two
// sums separate. The strict call rejects mismatched sums.
struct Thresholds {
  std::optional<double> concave;
  std::optional<double> convex;
};
Thresholds theorem1_thresholds(std::size_t n, double alpha, double beta,
                               double s_lambda, double s_mu, bool weak);

// Analytic verdict with rule precedence: majorization-based thresholds
// first, then the chi-squared special case (alpha = beta = 1/2, x > 2s),
// then the componentwise thresholds requiring n >= 3 and all lambda_i > 0.
// n is the common (padded) length of the two supplied vectors.
// Throws NotComparable when mu is neither strictly nor weakly majorized by
// lambda.
OrderVerdict analytic_verdict(const WeightVector& mu, const WeightVector& lambda,
                              double alpha, double beta, double x);

// Where the majorization-based thresholds beat the componentwise ones for
// n >= 3 (lambda sorted, n = lambda.size()):
//   concave_sharper: max_i lambda_i > (s/n)(alpha + 1/2)/(alpha + 1/n)
//   convex_sharper:  min_i lambda_i < (s/n)(alpha - 1)/(alpha + 1/n)
//   bock_applicable: all entries strictly positive
struct ImprovementRegion {
  bool concave_sharper;
  bool convex_sharper;
  bool bock_applicable;
};
ImprovementRegion improvement_region(const WeightVector& lambda, double alpha,
                                     std::size_t n);

// Numerical fallback: evaluates both CDFs at eval_tol and decides by the
// sign of the difference when it exceeds twice the certified error.
OrderVerdict compare_numeric(const WeightVector& mu, const WeightVector& lambda,
                             double alpha, double beta, double x,
                             double eval_tol = 1e-10);

// A nonnegative summable sequence given by a generator plus a certified
// tail bound: tail_bound(m) >= sum of entry(i) for i >= m, decreasing to 0.
struct SummableSequence {
  std::function<double(std::size_t)> entry;
  std::function<double(std::size_t)> tail_bound;
};

// Countably infinite version: truncates both sequences at declared tail
// mass <= tail_tol and applies the infinite-collection thresholds with the
// truncated sums widened by the tail intervals. Undecided when the weak
// dominance of the truncated prefixes cannot be certified.
OrderVerdict infinite_verdict(const SummableSequence& mu, const SummableSequence& lambda,
                              double alpha, double beta, double x, double tail_tol);

}  // namespace gschur

#endif  // GSCHUR_SCHUR_ORDER_HPP
