#include "gschur/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gschur/convolution.hpp"
#include "gschur/crossings.hpp"
#include "gschur/errors.hpp"
#include "gschur/majorization.hpp"
#include "gschur/mc.hpp"
#include "gschur/planners.hpp"
#include "gschur/schur_order.hpp"
#include "gschur/special.hpp"

namespace gschur::verify {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * ((static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53);
}

WeightVector random_weight_vector(std::mt19937_64& rng, std::size_t n, double s,
                                  double lo_entry, double hi_entry) {
  std::vector<double> e(n);
  double sum = 0.0;
  for (double& v : e) {
    v = uniform(rng, lo_entry, hi_entry);
    sum += v;
  }
  for (double& v : e) v *= s / sum;
  return WeightVector(std::move(e));
}

StrictPair random_strict_pair(std::mt19937_64& rng, std::size_t n, double s) {
  for (;;) {
    WeightVector lambda = random_weight_vector(rng, n, s);
    if (n > 1 && lambda.max() - lambda.min() < 0.05 * s / static_cast<double>(n))
      continue;  // too close to the equal vector; the mix would be near-degenerate
    double t = uniform(rng, 0.15, 0.85);
    std::vector<double> mu(n);
    double eq = s / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) mu[i] = t * lambda[i] + (1.0 - t) * eq;
    return {WeightVector(std::move(mu)), std::move(lambda)};
  }
}

int count_filtered_maxima(const std::vector<double>& values, double noise) {
  int maxima = 0;
  int state = 0;  // 0 unknown, +1 rising confirmed, -1 falling confirmed
  double anchor = values.empty() ? 0.0 : values.front();
  for (std::size_t i = 1; i < values.size(); ++i) {
    double v = values[i];
    if (state >= 0) {
      if (v < anchor - noise) {
        if (state == 1) ++maxima;
        state = -1;
        anchor = v;
      } else if (v > anchor) {
        state = state == 0 ? 1 : state;
        anchor = v;
      }
    } else {
      if (v > anchor + noise) {
        state = 1;
        anchor = v;
      } else if (v < anchor) {
        anchor = v;
      }
    }
    if (state == 1 && v > anchor) anchor = v;
  }
  return maxima;
}

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void add(std::vector<CheckResult>& out, const std::string& name, bool pass,
         const std::string& detail) {
  out.push_back({name, pass, detail});
}

// ---- appendix suite -------------------------------------------------------

void suite_appendix(std::vector<CheckResult>& out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);

  // Density vanishes at the origin once the total shape clears 1.
  {
    bool ok = true;
    std::string detail;
    for (int rep = 0; rep < 6 && ok; ++rep) {
      std::size_t n = 2 + rng() % 3;
      std::vector<GammaTerm> ts;
      for (std::size_t i = 0; i < n; ++i)
        ts.push_back({uniform(rng, 0.2, 1.0), uniform(rng, 0.8, 2.5),
                      uniform(rng, 0.5, 3.0)});
      GammaConvolution c = GammaConvolution::make(ts);
      if (c.total_shape() < 2.0) {
        --rep;
        continue;
      }
      double p0 = c.pdf(1e-8 * c.mean());
      if (!(p0 < 1e-4)) {
        ok = false;
        detail = "pdf near origin = " + fmt(p0);
      }
    }
    add(out, "appendix/density-vanishes-at-origin", ok, detail);
  }

  // Mode of Y + lambda*psi strictly increasing in lambda (common rate).
  {
    bool ok = true;
    std::string detail;
    for (int rep = 0; rep < 5 && ok; ++rep) {
      double alpha = uniform(rng, 0.6, 2.5);
      std::size_t n = 1 + rng() % 3;
      std::vector<GammaTerm> base;
      for (std::size_t i = 0; i < n; ++i)
        base.push_back({uniform(rng, 0.3, 1.0), uniform(rng, 0.5, 1.5), alpha});
      {
        double rho = 0.0;
        for (auto& t : base) rho += t.shape;
        if (rho <= 1.1) {
          base.push_back({uniform(rng, 0.3, 1.0), 1.2, alpha});
        }
      }
      double prev = -1.0, prev_tol = 0.0;
      for (int g = 1; g <= 10; ++g) {
        std::vector<GammaTerm> ts = base;
        ts.push_back({0.1 * g, 1.0, alpha});
        GammaConvolution c = GammaConvolution::make(ts);
        double m = c.mode();
        if (prev >= 0.0 && !(m > prev + 2.0 * std::max(prev_tol, c.mode_tolerance()))) {
          ok = false;
          detail = "mode stalled at lambda=" + fmt(0.1 * g) + ": " + fmt(prev) +
                   " -> " + fmt(m);
          break;
        }
        prev = m;
        prev_tol = c.mode_tolerance();
      }
    }
    add(out, "appendix/mode-increasing-in-psi-weight", ok, detail);
  }

  // Mode of lambda xi1 + (1-lambda) xi2 stays in [1, (2a+1)/(2a)], with the
  // stated values at lambda in {0, 1/2, 1}.
  {
    bool ok = true;
    std::string detail;
    for (double alpha : {0.5, 1.0, 2.0, 5.0}) {
      double hi = (2.0 * alpha + 1.0) / (2.0 * alpha);
      for (int g = 0; g <= 10 && ok; ++g) {
        double lam = 0.1 * g;
        std::vector<GammaTerm> ts;
        if (lam > 0.0) ts.push_back({lam, 1.0 + alpha, alpha});
        if (lam < 1.0) ts.push_back({1.0 - lam, 1.0 + alpha, alpha});
        GammaConvolution c = GammaConvolution::make(ts);
        double m = c.mode();
        double mtol = c.mode_tolerance();
        if (m < 1.0 - mtol || m > hi + mtol) {
          ok = false;
          detail = "alpha=" + fmt(alpha) + " lambda=" + fmt(lam) + " mode=" + fmt(m);
        }
        if (ok && (g == 0 || g == 10) && std::fabs(m - 1.0) > mtol) {
          ok = false;
          detail = "endpoint mode " + fmt(m) + " != 1";
        }
        if (ok && g == 5 && std::fabs(m - hi) > mtol) {
          ok = false;
          detail = "midpoint mode " + fmt(m) + " != " + fmt(hi);
        }
      }
    }
    add(out, "appendix/two-component-mode-interval", ok, detail);
  }

  // Extremal modes under sum(nu)=1, alpha=beta: the top pair bounds the mode
  // from above, the bottom pair (alpha>1) from below.
  {
    bool ok = true;
    std::string detail;
    for (int rep = 0; rep < 6 && ok; ++rep) {
      double alpha = uniform(rng, 0.8, 3.0);
      std::size_t n = 3 + rng() % 3;
      WeightVector nu = random_weight_vector(rng, n, 1.0);
      std::vector<GammaTerm> up;
      for (double v : nu.entries()) up.push_back({v, alpha, alpha});
      up.push_back({nu[0], 1.0, alpha});
      up.push_back({nu[1], 1.0, alpha});
      GammaConvolution cu = GammaConvolution::make(up);
      double hi = (2.0 * alpha + 1.0) / (2.0 * alpha);
      if (cu.mode() > hi + cu.mode_tolerance()) {
        ok = false;
        detail = "upper bound violated: " + fmt(cu.mode()) + " > " + fmt(hi);
        break;
      }
      if (alpha > 1.0) {
        std::vector<GammaTerm> dn;
        for (double v : nu.entries()) dn.push_back({v, alpha, alpha});
        dn.push_back({nu[n - 2], 1.0, alpha});
        dn.push_back({nu[n - 1], 1.0, alpha});
        GammaConvolution cd = GammaConvolution::make(dn);
        double lo = (alpha - 1.0) / alpha;
        if (cd.mode() < lo - cd.mode_tolerance()) {
          ok = false;
          detail = "lower bound violated: " + fmt(cd.mode()) + " < " + fmt(lo);
        }
      }
    }
    add(out, "appendix/extremal-mode-bounds", ok, detail);
  }

  // Density-difference identity at k=1.
  {
    bool ok = true;
    std::string detail;
    for (int rep = 0; rep < 10 && ok; ++rep) {
      double psi_rate = uniform(rng, 0.6, 2.5);
      std::size_t n = 1 + rng() % 2;
      std::vector<GammaTerm> base;
      for (std::size_t i = 0; i < n; ++i)
        base.push_back({uniform(rng, 0.3, 1.2), uniform(rng, 0.8, 2.5),
                        uniform(rng, 0.6, 2.0)});
      GammaConvolution c = GammaConvolution::make(base);
      double a = (rep % 3 == 0) ? 0.0 : uniform(rng, 0.05, 0.8);
      double b = uniform(rng, 0.05, 0.8);
      double x = uniform(rng, 0.4, 2.0) * c.mean();
      double res = derivative_identity_residual(c, a, b, psi_rate, x);
      if (!(std::fabs(res) < 1e-6)) {
        ok = false;
        detail = "residual " + fmt(res) + " at x=" + fmt(x);
      }
    }
    add(out, "appendix/density-difference-identity", ok, detail);
  }

  // Unimodality: one filtered maximum on a dense grid.
  {
    bool ok = true;
    std::string detail;
    for (int rep = 0; rep < 6 && ok; ++rep) {
      std::size_t n = 2 + rng() % 3;
      std::vector<GammaTerm> ts;
      for (std::size_t i = 0; i < n; ++i)
        ts.push_back({uniform(rng, 0.2, 1.0), uniform(rng, 0.5, 2.5),
                      uniform(rng, 0.5, 2.5)});
      GammaConvolution c = GammaConvolution::make(ts);
      std::vector<double> vals;
      double hi = c.mean() + 8.0 * c.stddev();
      for (int i = 1; i <= 400; ++i) vals.push_back(c.pdf(hi * i / 400.0));
      int peaks = count_filtered_maxima(vals, 4.0 * c.eval_tolerance());
      // A non-increasing density has its supremum at the origin: zero
      // interior maxima is consistent with unimodality.
      if (peaks > 1) {
        ok = false;
        detail = "found " + std::to_string(peaks) + " separated maxima";
      }
    }
    add(out, "appendix/unimodal-density", ok, detail);
  }
}

// ---- theorem1 suite -------------------------------------------------------

void suite_theorem1(std::vector<CheckResult>& out, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 1);

  {
    bool ok = true;
    std::string detail;
    for (int rep = 0; rep < 40 && ok; ++rep) {
      std::size_t n = 2 + rng() % 7;
      double alpha = uniform(rng, 0.5, 5.0);
      double s = uniform(rng, 0.5, 3.0);
      auto [mu, lambda] = random_strict_pair(rng, n, s);
      Thresholds t = theorem1_thresholds(n, alpha, 1.0, s, s, false);
      GammaConvolution cm = GammaConvolution::iid(mu, alpha, 1.0);
      GammaConvolution cl = GammaConvolution::iid(lambda, alpha, 1.0);
      double xc = 1.05 * *t.concave;
      if (!(cm.cdf(xc) >= cl.cdf(xc) - 4e-10)) {
        ok = false;
        detail = "concave side failed at x=" + fmt(xc);
        break;
      }
      if (t.convex) {
        double xv = 0.95 * *t.convex;
        if (xv > 0.0 && !(cm.cdf(xv) <= cl.cdf(xv) + 4e-10)) {
          ok = false;
          detail = "convex side failed at x=" + fmt(xv);
        }
      }
    }
    add(out, "theorem1/threshold-sampling", ok, detail);
  }

  {
    // Worked chain: alpha=2, beta=1, x=0.9 below the convex threshold 1.
    std::vector<WeightVector> chain = {
        WeightVector({1.0, 0.0, 0.0, 0.0}),
        WeightVector({2.0 / 3.0, 1.0 / 3.0, 0.0, 0.0}),
        WeightVector({3.0 / 6.0, 2.0 / 6.0, 1.0 / 6.0, 0.0}),
        WeightVector({0.4, 0.3, 0.2, 0.1})};
    bool ok = true;
    std::string detail;
    double prev = 2.0;
    for (const auto& v : chain) {
      double p = GammaConvolution::iid(v, 2.0, 1.0).cdf(0.9);
      if (!(prev >= p - 4e-10)) {
        ok = false;
        detail = "chain order violated: " + fmt(prev) + " < " + fmt(p);
      }
      prev = p;
      OrderVerdict verdict = analytic_verdict(v, chain.front(), 2.0, 1.0, 0.9);
      if (ok && verdict.relation != Relation::MuLE && verdict.relation != Relation::Equal) {
        ok = false;
        detail = "expected MuLE against the chain head";
      }
    }
    add(out, "theorem1/worked-chain", ok, detail);
  }

  {
    // Majorization thresholds beat the componentwise rule exactly where the
    // sharpness conditions say so.
    bool ok = true;
    std::string detail;
    for (int rep = 0; rep < 60 && ok; ++rep) {
      std::size_t n = 3 + rng() % 5;
      double alpha = uniform(rng, 0.5, 5.0);
      WeightVector lambda = random_weight_vector(rng, n, uniform(rng, 0.5, 3.0));
      ImprovementRegion r = improvement_region(lambda, alpha, n);
      double t1 = (2.0 * alpha + 1.0) * lambda.sum() / 2.0;
      double bock = (static_cast<double>(n) * alpha + 1.0) * lambda.max();
      if (r.concave_sharper != (t1 < bock)) {
        ok = false;
        detail = "concave flag disagrees with thresholds";
      }
      if (ok && alpha > 1.0) {
        double t1v = (alpha - 1.0) * lambda.sum();
        double bockv = (static_cast<double>(n) * alpha + 1.0) * lambda.min();
        if (r.convex_sharper != (t1v > bockv)) {
          ok = false;
          detail = "convex flag disagrees with thresholds";
        }
      }
    }
    add(out, "theorem1/improvement-region-coherence", ok, detail);
  }

  {
    // Analytic verdicts never contradict the numerics.
    bool ok = true;
    std::string detail;
    for (int rep = 0; rep < 25 && ok; ++rep) {
      std::size_t n = 2 + rng() % 5;
      double alpha = uniform(rng, 0.5, 4.0);
      double s = uniform(rng, 0.5, 2.0);
      auto [mu, lambda] = random_strict_pair(rng, n, s);
      double x = uniform(rng, 0.05, 3.5) * s;
      OrderVerdict a = analytic_verdict(mu, lambda, alpha, 1.0, x);
      if (a.relation == Relation::Undecided) continue;
      OrderVerdict m = compare_numeric(mu, lambda, alpha, 1.0, x);
      if ((a.relation == Relation::MuGE && m.relation == Relation::MuLE) ||
          (a.relation == Relation::MuLE && m.relation == Relation::MuGE)) {
        ok = false;
        detail = "analytic " + std::string(relation_name(a.relation)) +
                 " vs numeric " + relation_name(m.relation) + " at x=" + fmt(x);
      }
    }
    add(out, "theorem1/analytic-numeric-consistency", ok, detail);
  }
}

// ---- bakirov suite --------------------------------------------------------

void suite_bakirov(std::vector<CheckResult>& out, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 2);
  bool ok = true;
  std::string detail;
  for (int rep = 0; rep < 100 && ok; ++rep) {
    double s = uniform(rng, 1e-3, 1e3);
    Thresholds t = theorem1_thresholds(2 + rng() % 6, 0.5, 0.5, s, s, false);
    if (*t.concave != 2.0 * s) {
      ok = false;
      detail = "threshold " + fmt(*t.concave) + " != 2s for s=" + fmt(s);
    }
  }
  add(out, "bakirov/concave-threshold-coincides", ok, detail);

  {
    auto [mu, lambda] = random_strict_pair(rng, 4, 1.0);
    OrderVerdict v = analytic_verdict(mu, lambda, 0.5, 0.5, 2.5);
    bool pass = v.relation == Relation::MuGE;
    add(out, "bakirov/chi-squared-verdict", pass,
        pass ? "" : "expected MuGE above 2s");
  }
}

// ---- crossings suite ------------------------------------------------------

void suite_crossings(std::vector<CheckResult>& out, std::uint64_t seed,
                     unsigned threads) {
  std::mt19937_64 rng(seed + 3);
  bool ok = true;
  std::string detail;
  int n2_checked = 0;
  for (int rep = 0; rep < 10 && ok; ++rep) {
    std::size_t n = 2 + rng() % 4;
    double alpha = uniform(rng, 0.5, 5.0);
    double s = uniform(rng, 0.5, 2.0);
    auto [mu, lambda] = random_strict_pair(rng, n, s);
    ScanRange range = default_scan_range(mu, lambda, alpha, 1.0);
    CrossingReport rep_ =
        crossing_points(mu, lambda, alpha, 1.0, range.x_lo, range.x_hi, 512,
                        1e-8 * s, threads);
    if (rep_.crossings.empty()) {
      ok = false;
      detail = "no crossing found (n=" + std::to_string(n) + ")";
    } else if (n == 2) {
      ++n2_checked;
      if (rep_.crossings.size() != 1) {
        ok = false;
        detail = "n=2 pair with " + std::to_string(rep_.crossings.size()) +
                 " crossings";
      }
    }
  }
  add(out, "crossings/existence", ok,
      ok ? ("n=2 pairs seen: " + std::to_string(n2_checked)) : detail);
}

// ---- mc suite -------------------------------------------------------------

void suite_mc(std::vector<CheckResult>& out, std::uint64_t seed, unsigned threads) {
  std::mt19937_64 rng(seed + 4);
  int failures = 0;
  std::string detail;
  const int configs = 20;
  for (int rep = 0; rep < configs; ++rep) {
    std::size_t n = 1 + rng() % 6;
    double alpha = uniform(rng, 0.5, 5.0);
    double beta = uniform(rng, 0.5, 4.0);
    WeightVector w = random_weight_vector(rng, n, uniform(rng, 0.5, 2.0));
    GammaConvolution conv = GammaConvolution::iid(w, alpha, beta);
    std::vector<double> probes;
    for (double f : {0.25, 0.5, 0.75, 1.0, 1.3, 1.8, 2.5})
      probes.push_back(f * conv.mean());
    McReport r = validate_cdf(conv, 1000000, rng(), probes, 0.01, threads);
    if (!r.pass) {
      ++failures;
      detail += "config " + std::to_string(rep) + " gap " + fmt(r.max_abs_gap) +
                " band " + fmt(r.dkw_band) + "; ";
    }
  }
  add(out, "mc/dkw-validation", failures <= 1,
      "failures: " + std::to_string(failures) + "/" + std::to_string(configs) +
          (detail.empty() ? "" : " — " + detail));
}

// ---- planners suite -------------------------------------------------------

void suite_planners(std::vector<CheckResult>& out, std::uint64_t seed) {
  std::mt19937_64 rng(seed + 5);

  {
    bool ok = true;
    std::string detail;
    double prev = 1.0;
    for (long n = 1; n <= 50; ++n) {
      double p = signal_type1_prob(n, 1.5);
      if (!(p <= prev + 4e-10)) {
        ok = false;
        detail = "tail rose at N=" + std::to_string(n);
      }
      prev = p;
    }
    add(out, "planners/signal-monotone-chain", ok, detail);
  }

  {
    SignalPlan plan = signal_min_samples(1.5, 0.01);
    bool ok = plan.min_samples >= 1 && plan.type1_at_min <= 0.01;
    std::string detail = "N=" + std::to_string(plan.min_samples);
    for (long n = 1; ok && n < plan.min_samples; ++n)
      if (signal_type1_prob(n, 1.5) <= 0.01) {
        ok = false;
        detail = "N not minimal: " + std::to_string(n) + " already works";
      }
    add(out, "planners/signal-min-samples", ok, detail);
  }

  {
    bool ok = true;
    std::string detail;
    for (int rep = 0; rep < 10 && ok; ++rep) {
      std::size_t n = 2 + rng() % 10;
      WeightVector spec = random_weight_vector(rng, n, uniform(rng, 0.5, 5.0),
                                               0.05, 1.0);
      long nb = trace_bound_samples(spec.sum(), spec.max(), 0.25, 0.01);
      double lower = trace_tail(spec, nb, 0.25, TailSide::Lower);
      double upper = trace_tail(spec, nb, 0.25, TailSide::Upper);
      if (!(lower <= 0.01 && upper <= 0.01)) {
        ok = false;
        detail = "bound insufficient: tails " + fmt(lower) + ", " + fmt(upper);
      }
    }
    add(out, "planners/trace-bound-sufficiency", ok, detail);
  }

  {
    // The normalized worked-chain spectra behave as the skewness order says.
    std::vector<WeightVector> chain = {
        WeightVector({1.0, 0.0, 0.0, 0.0}),
        WeightVector({2.0 / 3.0, 1.0 / 3.0, 0.0, 0.0}),
        WeightVector({3.0 / 6.0, 2.0 / 6.0, 1.0 / 6.0, 0.0}),
        WeightVector({0.4, 0.3, 0.2, 0.1})};
    bool ok = true;
    std::string detail;
    for (std::size_t i = 0; i + 1 < chain.size() && ok; ++i) {
      SkewnessReport r = skewness_compare(chain[i], chain[i + 1], 8, 0.5);
      if (r.relation != SkewnessRelation::OrderedByTheorem1 ||
          !(r.lower_tail_2 <= r.lower_tail_1 + 4e-10)) {
        ok = false;
        detail = "link " + std::to_string(i) + " not ordered";
      }
    }
    add(out, "planners/skewness-chain-order", ok, detail);
  }
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"appendix", "theorem1", "bakirov", "crossings", "mc", "planners", "all"};
}

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed,
                                   unsigned threads) {
  std::vector<CheckResult> out;
  bool all = suite == "all";
  bool known = all;
  if (all || suite == "appendix") suite_appendix(out, seed), known = true;
  if (all || suite == "theorem1") suite_theorem1(out, seed), known = true;
  if (all || suite == "bakirov") suite_bakirov(out, seed), known = true;
  if (all || suite == "crossings") suite_crossings(out, seed, threads), known = true;
  if (all || suite == "mc") suite_mc(out, seed, threads), known = true;
  if (all || suite == "planners") suite_planners(out, seed), known = true;
  if (!known)
    raise(Errc::InvalidArgument, "unknown verify suite '" + suite + "'");
  return out;
}

}  // namespace gschur::verify
