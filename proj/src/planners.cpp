#include "gschur/planners.hpp"

#include <cmath>

#include "gschur/convolution.hpp"
#include "gschur/errors.hpp"
#include "gschur/majorization.hpp"
#include "gschur/special.hpp"

namespace gschur {

namespace {
constexpr long kSampleCap = 1000000;
const double kSqrt2 = std::sqrt(2.0);
}  // namespace

double signal_type1_prob(long n_samples, double x) {
  if (n_samples < 1) raise(Errc::InvalidArgument, "signal_type1_prob: N >= 1");
  if (!(x > 0.0)) raise(Errc::InvalidArgument, "signal_type1_prob: x > 0");
  double n = static_cast<double>(n_samples);
  return reg_upper_gamma(n, n * kSqrt2 * x);
}

SignalPlan signal_min_samples(double x, double delta) {
  if (!(x > 0.0)) raise(Errc::InvalidArgument, "signal_min_samples: x > 0");
  if (!(delta > 0.0 && delta < 1.0))
    raise(Errc::InvalidArgument, "signal_min_samples: delta in (0,1)");

  SignalPlan plan;
  plan.threshold_x = x;
  plan.delta = delta;
  plan.monotone_region = x > 3.0 / (2.0 * kSqrt2);

  auto ok = [&](long n) { return signal_type1_prob(n, x) <= delta; };

  long hi = 1;
  while (!ok(hi)) {
    if (hi >= kSampleCap)
      raise(Errc::Unreachable,
            "signal_min_samples: tail stays above delta up to the sample cap");
    hi = std::min(kSampleCap, hi * 2);
  }
  long lo = hi / 2;  // ok(hi), !ok(lo) when lo >= 1
  while (hi - lo > 1 && lo >= 1) {
    long mid = lo + (hi - lo) / 2;
    if (ok(mid))
      hi = mid;
    else
      lo = mid;
  }
  long n_min = hi;
  if (!plan.monotone_region) {
    // The tail need not be monotone in N here; scan for an earlier success.
    for (long n = 1; n < n_min; ++n) {
      if (ok(n)) {
        n_min = n;
        break;
      }
    }
  }
  plan.min_samples = n_min;
  plan.type1_at_min = signal_type1_prob(n_min, x);
  return plan;
}

double trace_tail(const WeightVector& spectrum, long n_samples, double epsilon,
                  TailSide side, double eval_tol) {
  if (n_samples < 1) raise(Errc::InvalidArgument, "trace_tail: N >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0))
    raise(Errc::InvalidArgument, "trace_tail: epsilon in (0,1)");
  if (!(spectrum.sum() > 0.0))
    raise(Errc::AllWeightsZero, "trace_tail: spectrum sum must be positive");

  double half_n = 0.5 * static_cast<double>(n_samples);
  GammaConvolution conv = GammaConvolution::iid(spectrum, half_n, half_n, eval_tol);
  double tr = spectrum.sum();
  if (side == TailSide::Lower) return conv.cdf((1.0 - epsilon) * tr);
  return 1.0 - conv.cdf((1.0 + epsilon) * tr);
}

long trace_bound_samples(double trace, double spectral_norm, double epsilon,
                         double delta) {
  if (!(trace > 0.0) || !(spectral_norm > 0.0))
    raise(Errc::InvalidArgument, "trace_bound_samples: trace and norm must be positive");
  // epsilon = 1 is a degenerate but well-defined plug-in of the bound.
  if (!(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0))
    raise(Errc::InvalidArgument, "trace_bound_samples: epsilon > 0, delta in (0,1)");
  double bound = (spectral_norm / trace) * (8.0 / (epsilon * epsilon)) *
                 std::log(1.0 / delta);
  double c = std::ceil(bound);
  if (c == bound) c += 1.0;  // strict inequality
  return static_cast<long>(c);
}

TracePlan trace_exact_min_samples(const WeightVector& spectrum, double epsilon,
                                  double delta, double eval_tol) {
  if (!(delta > 0.0 && delta < 1.0))
    raise(Errc::InvalidArgument, "trace_exact_min_samples: delta in (0,1)");
  TracePlan plan;
  plan.spectrum = spectrum;
  plan.trace = spectrum.sum();
  plan.spectral_norm = spectrum.max();
  plan.epsilon = epsilon;
  plan.delta = delta;
  plan.effective_rank = plan.trace / plan.spectral_norm;
  plan.bound_samples = trace_bound_samples(plan.trace, plan.spectral_norm, epsilon, delta);

  auto ok = [&](long n) {
    return trace_tail(spectrum, n, epsilon, TailSide::Lower, eval_tol) <= delta &&
           trace_tail(spectrum, n, epsilon, TailSide::Upper, eval_tol) <= delta;
  };

  long hi = 1;
  while (!ok(hi)) {
    if (hi >= kSampleCap)
      raise(Errc::Unreachable,
            "trace_exact_min_samples: tails stay above delta up to the sample cap");
    hi = std::min(kSampleCap, hi * 2);
  }
  long lo = hi / 2;
  while (hi - lo > 1 && lo >= 1) {
    long mid = lo + (hi - lo) / 2;
    if (ok(mid))
      hi = mid;
    else
      lo = mid;
  }
  // Concentration makes both tails non-increasing in N in practice; the
  // bisection assumed it, so recheck below the candidate.
  while (hi > 1 && ok(hi - 1)) --hi;
  plan.exact_samples = hi;
  return plan;
}

const char* skewness_relation_name(SkewnessRelation r) {
  switch (r) {
    case SkewnessRelation::OrderedByTheorem1:     return "OrderedByTheorem1";
    case SkewnessRelation::Equal:                 return "Equal";
    case SkewnessRelation::IncomparableByTheorem: return "IncomparableByTheorem";
  }
  return "Unknown";
}

SkewnessReport skewness_compare(const WeightVector& spectrum1,
                                const WeightVector& spectrum2, long n_samples,
                                double epsilon, double eval_tol) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    raise(Errc::InvalidArgument, "skewness_compare: epsilon in (0,1)");
  if (n_samples < 1) raise(Errc::InvalidArgument, "skewness_compare: N >= 1");
  double t1 = spectrum1.sum(), t2 = spectrum2.sum();
  if (std::fabs(t1 - t2) > 1e-10 * std::max(t1, t2))
    raise(Errc::TraceMismatch, "skewness_compare: traces must agree");

  SkewnessReport rep;
  rep.sample_size_ok = static_cast<double>(n_samples) > 2.0 / epsilon;
  rep.lower_tail_1 = trace_tail(spectrum1, n_samples, epsilon, TailSide::Lower, eval_tol);
  rep.lower_tail_2 = trace_tail(spectrum2, n_samples, epsilon, TailSide::Lower, eval_tol);

  if (spectrum1.same_entries(spectrum2, 1e-12 * std::max(t1, t2))) {
    rep.relation = SkewnessRelation::Equal;
    return rep;
  }
  MajorizationRelation rel = is_majorized(spectrum2, spectrum1);
  if (rep.sample_size_ok &&
      (rel.kind == MajorKind::Strict || rel.kind == MajorKind::Equal)) {
    // x = (1-eps) tr sits below the order-reversal threshold
    // ((N/2 - 1)/(N/2)) tr exactly when N > 2/eps.
    rep.relation = SkewnessRelation::OrderedByTheorem1;
  } else {
    rep.relation = SkewnessRelation::IncomparableByTheorem;
  }
  return rep;
}

}  // namespace gschur
