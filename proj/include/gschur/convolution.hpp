#ifndef GSCHUR_CONVOLUTION_HPP
#define GSCHUR_CONVOLUTION_HPP

#include <cstddef>
#include <memory>
#include <vector>

#include "gschur/weight_vector.hpp"

namespace gschur {

namespace detail {
struct SeriesCache;
}

// One summand of Y = sum_i weight_i * X_i with X_i ~ Gamma(shape_i, rate_i).
struct GammaTerm {
  double weight;
  double shape;
  double rate;
};

// Finite convolution of weighted gamma variables.
//
// Construction drops zero-weight terms and merges terms whose effective
// scales (weight/rate) agree to relative 1e-12 (gamma additivity holds only
// at equal scales; near-equal scales destabilize the series coefficients).
// Immutable after construction; cdf/pdf/mode are safe to call concurrently.
//
// cdf/pdf use a common-scale gamma series expansion with nonnegative mixture
// coefficients: the density is sum_k d_k * gammapdf(rho + k, 1/theta_min),
// d_k >= 0, sum_k d_k = 1, which yields a computable remainder bound.
// Truncation stops once the certified remainder falls below eval_tolerance;
// exceeding the term cap raises SeriesDivergence instead of returning an
// uncertified value.
class GammaConvolution {
 public:
  static constexpr double kDefaultEvalTol = 1e-10;
  static constexpr std::size_t kMaxSeriesTerms = 1000000;

  static GammaConvolution make(const std::vector<GammaTerm>& terms,
                               double eval_tolerance = kDefaultEvalTol);
  static GammaConvolution iid(const WeightVector& weights, double shape, double rate,
                              double eval_tolerance = kDefaultEvalTol);

  const std::vector<GammaTerm>& terms() const noexcept { return terms_; }
  double total_weight() const noexcept { return total_weight_; }
  double total_shape() const noexcept { return total_shape_; }
  double eval_tolerance() const noexcept { return eval_tol_; }

  double mean() const noexcept { return mean_; }
  double variance() const noexcept { return var_; }
  double stddev() const noexcept;

  // Pr(Y < x); 0 for x <= 0, clamped to [0,1]; absolute error <= eval_tolerance.
  double cdf(double x) const;

  // Density at x; 0 for x < 0; absolute error <= eval_tolerance.
  // At x == 0 returns the limit (0 for total_shape > 1, +inf for < 1).
  double pdf(double x) const;

  // Unique maximizer of the density on [0, inf); 0 when the density is
  // non-increasing. Located to absolute accuracy mode_tolerance(), or to a
  // caller-supplied positive tolerance.
  double mode() const { return mode(mode_tolerance()); }
  double mode(double mode_tol) const;
  double mode_tolerance() const noexcept { return 1e-8 * mean_; }

  // Same convolution with a different certified evaluation tolerance.
  // Shares the cached series state.
  GammaConvolution with_tolerance(double eval_tolerance) const;

 private:
  GammaConvolution() = default;

  double series_cdf(double x, double* terms_used) const;
  double series_pdf(double x, double* terms_used) const;
  // Truncated-series density with a fixed term count: a smooth function of x,
  // used by the mode search and finite-difference work where the adaptive
  // truncation's per-point term count would add step noise.
  double pdf_fixed_terms(double x, std::size_t n_terms) const;
  std::size_t adaptive_pdf_terms(double x) const;

  friend double derivative_identity_residual(const GammaConvolution&, double, double,
                                             double, double);

  std::vector<GammaTerm> terms_;
  double total_weight_ = 0.0;
  double total_shape_ = 0.0;
  double eval_tol_ = kDefaultEvalTol;
  double mean_ = 0.0;
  double var_ = 0.0;
  std::shared_ptr<detail::SeriesCache> cache_;  // null for single-term closed forms
};

// Spec-facing constructors.
inline GammaConvolution make_convolution(const std::vector<GammaTerm>& terms,
                                         double eval_tolerance =
                                             GammaConvolution::kDefaultEvalTol) {
  return GammaConvolution::make(terms, eval_tolerance);
}
inline GammaConvolution iid_convolution(const WeightVector& weights, double shape,
                                        double rate,
                                        double eval_tolerance =
                                            GammaConvolution::kDefaultEvalTol) {
  return GammaConvolution::iid(weights, shape, rate, eval_tolerance);
}

// Residual of the density-difference identity at k = 1:
//   f_{X + a psi1}(x) - f_{X + b psi2}(x)
//     - (1/psi_rate) (b - a) d/dx f_{X + a psi1 + b psi2}(x),
// with psi_i ~ Gamma(1, psi_rate) appended to the base convolution.
// The x-derivative is a central finite difference with step
// max(1e-6, 1e-6 x), both sides evaluated at a matched truncation depth.
double derivative_identity_residual(const GammaConvolution& base, double a, double b,
                                    double psi_rate, double x);

}  // namespace gschur

#endif  // GSCHUR_CONVOLUTION_HPP
