#include "gschur/schur_order.hpp"

#include <algorithm>
#include <cmath>

#include "gschur/convolution.hpp"
#include "gschur/errors.hpp"
#include "gschur/majorization.hpp"

namespace gschur {

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::MuGE:      return "MuGE";
    case Relation::MuLE:      return "MuLE";
    case Relation::Equal:     return "Equal";
    case Relation::Undecided: return "Undecided";
  }
  return "Unknown";
}

const char* decided_by_name(DecidedBy d) {
  switch (d) {
    case DecidedBy::Theorem1:   return "Theorem1";
    case DecidedBy::Corollary2: return "Corollary2";
    case DecidedBy::Corollary3: return "Corollary3";
    case DecidedBy::Bock:       return "Bock";
    case DecidedBy::Bakirov:    return "Bakirov";
    case DecidedBy::Numeric:    return "Numeric";
    case DecidedBy::None:       return "None";
  }
  return "Unknown";
}

Thresholds theorem1_thresholds(std::size_t n, double alpha, double beta,
                               double s_lambda, double s_mu, bool weak) {
  if (n < 2) raise(Errc::InvalidArgument, "theorem1_thresholds: n >= 2 required");
  if (!(alpha > 0.0) || !(beta > 0.0))
    raise(Errc::NonpositiveShapeOrRate, "theorem1_thresholds: alpha, beta > 0");
  if (!weak) {
    double s = std::max(s_lambda, s_mu);
    if (std::fabs(s_lambda - s_mu) > 1e-9 * std::max(s, 1e-300))
      raise(Errc::InvalidArgument,
            "theorem1_thresholds: strict order requires equal sums");
  }
  Thresholds t;
  t.concave = (2.0 * alpha + 1.0) * s_lambda / (2.0 * beta);
  if (n == 2) {
    t.convex = alpha * s_mu / beta;
  } else if (alpha > 1.0) {
    t.convex = (alpha - 1.0) * s_mu / beta;
  }
  return t;
}

OrderVerdict analytic_verdict(const WeightVector& mu, const WeightVector& lambda,
                              double alpha, double beta, double x) {
  if (!(x > 0.0)) raise(Errc::InvalidArgument, "analytic_verdict: x > 0 required");
  if (!(alpha > 0.0) || !(beta > 0.0))
    raise(Errc::NonpositiveShapeOrRate, "analytic_verdict: alpha, beta > 0");

  const std::size_t n = std::max(mu.size(), lambda.size());
  MajorizationRelation rel = is_majorized(mu, lambda);

  OrderVerdict v;
  if (rel.kind == MajorKind::Equal) {
    // Identical distributions; the degenerate order mu ≺ lambda ≺ mu.
    v.relation = Relation::Equal;
    v.decided_by = DecidedBy::Theorem1;
    if (n >= 2) {
      Thresholds t = theorem1_thresholds(n, alpha, beta, lambda.sum(), mu.sum(), false);
      v.concave_threshold = t.concave;
      v.convex_threshold = t.convex;
    }
    return v;
  }
  if (rel.kind == MajorKind::Incomparable)
    raise(Errc::NotComparable,
          "analytic_verdict: vectors are incomparable under both orders");

  const bool strict = rel.kind == MajorKind::Strict;
  Thresholds t = theorem1_thresholds(std::max<std::size_t>(n, 2), alpha, beta,
                                     lambda.sum(), mu.sum(), !strict);
  v.concave_threshold = t.concave;
  v.convex_threshold = t.convex;

  const DecidedBy major_rule = strict ? DecidedBy::Theorem1 : DecidedBy::Corollary2;
  if (t.concave && x > *t.concave) {
    v.relation = Relation::MuGE;
    v.decided_by = major_rule;
    return v;
  }
  if (t.convex && x < *t.convex) {
    v.relation = Relation::MuLE;
    v.decided_by = major_rule;
    return v;
  }

  // Chi-squared special case (degree one): concavity for x > 2s, any n >= 1.
  if (strict && alpha == 0.5 && beta == 0.5 && x > 2.0 * lambda.sum()) {
    v.relation = Relation::MuGE;
    v.decided_by = DecidedBy::Bakirov;
    return v;
  }

  // Componentwise thresholds: n >= 3 and strictly positive lambda.
  if (strict && n >= 3 && lambda.padded(n).min() > 0.0) {
    double lmax = lambda.max(), lmin = lambda.padded(n).min();
    double c = static_cast<double>(n) * alpha + 1.0;
    if (x > c * lmax / beta) {
      v.relation = Relation::MuGE;
      v.decided_by = DecidedBy::Bock;
      return v;
    }
    if (x < c * lmin / beta) {
      v.relation = Relation::MuLE;
      v.decided_by = DecidedBy::Bock;
      return v;
    }
  }
  return v;  // Undecided / None
}

ImprovementRegion improvement_region(const WeightVector& lambda, double alpha,
                                     std::size_t n) {
  if (n < 3) raise(Errc::InvalidArgument, "improvement_region: n >= 3 required");
  if (n != lambda.size())
    raise(Errc::InvalidArgument, "improvement_region: n must equal the vector length");
  if (!(alpha > 0.0))
    raise(Errc::NonpositiveShapeOrRate, "improvement_region: alpha > 0");

  const double s = lambda.sum();
  const double nn = static_cast<double>(n);
  ImprovementRegion r{};
  r.concave_sharper = lambda.max() > (s / nn) * (alpha + 0.5) / (alpha + 1.0 / nn);
  r.convex_sharper = lambda.min() < (s / nn) * (alpha - 1.0) / (alpha + 1.0 / nn);
  r.bock_applicable = lambda.min() > 0.0;
  return r;
}

OrderVerdict compare_numeric(const WeightVector& mu, const WeightVector& lambda,
                             double alpha, double beta, double x, double eval_tol) {
  if (!(x > 0.0)) raise(Errc::InvalidArgument, "compare_numeric: x > 0 required");
  OrderVerdict v;
  v.decided_by = DecidedBy::Numeric;
  if (mu.same_entries(lambda)) {
    v.relation = Relation::Equal;
    v.numeric_gap = 0.0;
    v.numeric_gap_error = 0.0;
    return v;
  }
  GammaConvolution cm = GammaConvolution::iid(mu, alpha, beta, eval_tol);
  GammaConvolution cl = GammaConvolution::iid(lambda, alpha, beta, eval_tol);
  double gap = cm.cdf(x) - cl.cdf(x);
  v.numeric_gap = gap;
  v.numeric_gap_error = 2.0 * eval_tol;
  if (gap > 2.0 * eval_tol) {
    v.relation = Relation::MuGE;
  } else if (gap < -2.0 * eval_tol) {
    v.relation = Relation::MuLE;
  } else {
    v.relation = Relation::Undecided;
  }
  return v;
}

OrderVerdict infinite_verdict(const SummableSequence& mu, const SummableSequence& lambda,
                              double alpha, double beta, double x, double tail_tol) {
  if (!(x > 0.0)) raise(Errc::InvalidArgument, "infinite_verdict: x > 0 required");
  if (!(tail_tol > 0.0))
    raise(Errc::InvalidArgument, "infinite_verdict: tail_tol must be positive");
  if (!mu.entry || !lambda.entry)
    raise(Errc::InvalidArgument, "infinite_verdict: missing entry generator");
  if (!mu.tail_bound || !lambda.tail_bound)
    raise(Errc::TailBoundMissing, "infinite_verdict: certified tail bound required");

  constexpr std::size_t kMaxPrefix = 1 << 22;
  auto truncate = [&](const SummableSequence& s, std::vector<double>& prefix,
                      double& partial, double& tail) {
    std::size_t m = 1;
    while (s.tail_bound(m) > tail_tol) {
      m *= 2;
      if (m > kMaxPrefix)
        raise(Errc::TailBoundMissing,
              "infinite_verdict: tail bound does not reach tail_tol");
    }
    prefix.resize(m);
    partial = 0.0;
    double carry = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double e = s.entry(i);
      if (!(e >= 0.0))
        raise(Errc::InvalidArgument, "infinite_verdict: entries must be nonnegative");
      prefix[i] = e;
      double y = e - carry;
      double t = partial + y;
      carry = (t - partial) - y;
      partial = t;
    }
    tail = s.tail_bound(m);
  };

  std::vector<double> pm, pl;
  double sm = 0.0, sl = 0.0, tm = 0.0, tl = 0.0;
  truncate(mu, pm, sm, tm);
  truncate(lambda, pl, sl, tl);

  OrderVerdict v;
  v.decided_by = DecidedBy::Corollary3;
  v.concave_threshold = (2.0 * alpha + 1.0) * (sl + tl) / (2.0 * beta);
  if (alpha > 1.0) v.convex_threshold = (alpha - 1.0) * std::max(sm - tm, 0.0) / beta;

  // Equality up to the declared tails: identical prefixes.
  if (pm.size() == pl.size() && pm == pl) {
    v.relation = Relation::Equal;
    return v;
  }

  // Dominance of the sorted prefixes at tail_tol resolution. This is a
  // sanity filter, not an exact certificate: when both sums converge the
  // asymptotic partial-sum gap drops below any declared tail mass, so the
  // check tolerates a one-tail slack. The thresholds themselves already use
  // the tail-widened sums.
  std::sort(pm.begin(), pm.end(), std::greater<double>());
  std::sort(pl.begin(), pl.end(), std::greater<double>());
  std::size_t n = std::max(pm.size(), pl.size());
  pm.resize(n, 0.0);
  pl.resize(n, 0.0);
  bool dominated = true;
  double am = 0.0, al = 0.0;
  for (std::size_t k = 0; k < n && dominated; ++k) {
    am += pm[k];
    al += pl[k];
    if (am > al + tm + tl) dominated = false;
  }
  if (!dominated) {
    v.decided_by = DecidedBy::None;
    return v;  // Undecided: dominance not certifiable at this truncation
  }

  if (x > *v.concave_threshold) {
    v.relation = Relation::MuGE;
    return v;
  }
  if (v.convex_threshold && x < *v.convex_threshold) {
    v.relation = Relation::MuLE;
    return v;
  }
  v.decided_by = DecidedBy::None;
  return v;
}

}  // namespace gschur
