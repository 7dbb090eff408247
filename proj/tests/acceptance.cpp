// Acceptance suite: every release criterion with its pinned tolerance, one
// PASS/FAIL line each. Exit code is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdarg>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "gschur/convolution.hpp"
#include "gschur/crossings.hpp"
#include "gschur/majorization.hpp"
#include "gschur/mc.hpp"
#include "gschur/planners.hpp"
#include "gschur/schur_order.hpp"
#include "gschur/special.hpp"
#include "gschur/verify.hpp"
#include "oracles.hpp"

using gschur::GammaConvolution;
using gschur::GammaTerm;
using gschur::WeightVector;
namespace gv = gschur::verify;

namespace {

int failures = 0;
unsigned g_threads = std::max(1u, std::thread::hardware_concurrency());

std::string fmt(const char* f, ...) {
  char buf[128];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

void report(int idx, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
  std::printf("%s criterion %2d: %-38s %s(%.1fs)\n", pass ? "PASS" : "FAIL", idx,
              name.c_str(), detail.empty() ? "" : (detail + " ").c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

template <typename F>
void criterion(int idx, const std::string& name, F&& body, double budget_s = 0.0) {
  auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool pass;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    pass = false;
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                    .count();
  if (pass && budget_s > 0.0 && secs >= budget_s) {
    pass = false;
    detail += fmt(" [over the %.0fs budget]", budget_s);
  }
  report(idx, name, pass, detail, secs);
}

// 1. Closed-form exactness against the independent quadrature oracle.
bool c1_closed_forms(std::string& detail) {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int rep = 0; rep < 1000; ++rep) {
    double alpha = gv::uniform(rng, 0.5, 30.0);
    double beta = gv::uniform(rng, 0.3, 4.0);
    double s = gv::uniform(rng, 0.2, 5.0);
    bool single = rep % 2 == 0;
    std::size_t n = single ? 1 : 2 + rng() % 5;
    std::vector<double> w(n, s / static_cast<double>(n));
    GammaConvolution conv = gschur::iid_convolution(WeightVector(w), alpha, beta);
    double x = gv::uniform(rng, 0.05, 2.5) * conv.mean();
    double a_eff = static_cast<double>(n) * alpha;
    double expect = oracle::reg_lower_gamma_quad(a_eff, x * static_cast<double>(n) * beta / s);
    worst = std::max(worst, std::fabs(conv.cdf(x) - expect));
  }
  detail = fmt("max |err| = %.2e", worst);
  return worst <= 1e-12;
}

// 2. Order above the concave threshold on random strict pairs.
bool c2_concave(std::string& detail) {
  std::mt19937_64 rng(202);
  double worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t n = 2 + rng() % 7;
    double alpha = gv::uniform(rng, 0.5, 5.0);
    double s = gv::uniform(rng, 0.5, 3.0);
    auto [mu, lambda] = gv::random_strict_pair(rng, n, s);
    double x = 1.05 * (2.0 * alpha + 1.0) * s / 2.0;
    double gap = gschur::iid_convolution(mu, alpha, 1.0).cdf(x) -
                 gschur::iid_convolution(lambda, alpha, 1.0).cdf(x);
    worst = std::min(worst, gap);
    if (gap < -4e-10) {
      detail = "violation at rep " + std::to_string(rep);
      return false;
    }
  }
  detail = fmt("min gap = %.2e", worst);
  return true;
}

// 3. Order below the convex threshold (alpha above 1).
bool c3_convex(std::string& detail) {
  std::mt19937_64 rng(303);
  double worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t n = 2 + rng() % 7;
    double alpha = gv::uniform(rng, 1.0 + 1e-6, 5.0);
    double s = gv::uniform(rng, 0.5, 3.0);
    auto [mu, lambda] = gv::random_strict_pair(rng, n, s);
    double thr = (n == 2) ? alpha * s : (alpha - 1.0) * s;
    double x = 0.95 * thr;
    if (x <= 0.0) continue;
    double gap = gschur::iid_convolution(mu, alpha, 1.0).cdf(x) -
                 gschur::iid_convolution(lambda, alpha, 1.0).cdf(x);
    worst = std::max(worst, gap);
    if (gap > 4e-10) {
      detail = "violation at rep " + std::to_string(rep);
      return false;
    }
  }
  detail = fmt("max gap = %.2e", worst);
  return true;
}

// 4. Worked chain, non-increasing CDFs at x = 0.9.
bool c4_chain(std::string& detail) {
  std::vector<WeightVector> chain = {
      WeightVector({1.0, 0.0, 0.0, 0.0}),
      WeightVector({2.0 / 3.0, 1.0 / 3.0, 0.0, 0.0}),
      WeightVector({3.0 / 6.0, 2.0 / 6.0, 1.0 / 6.0, 0.0}),
      WeightVector({0.4, 0.3, 0.2, 0.1})};
  double prev = 2.0;
  for (const auto& v : chain) {
    double p = gschur::iid_convolution(v, 2.0, 1.0).cdf(0.9);
    if (prev - p < -4e-10) {
      detail = "increase in chain order";
      return false;
    }
    prev = p;
  }
  return true;
}

// 5. Chi-squared threshold coincidence, machine exact.
bool c5_bakirov(std::string& detail) {
  std::mt19937_64 rng(505);
  for (int rep = 0; rep < 100; ++rep) {
    double s = gv::uniform(rng, 1e-3, 1e3);
    auto t = gschur::theorem1_thresholds(2 + rng() % 7, 0.5, 0.5, s, s, false);
    if (*t.concave != 2.0 * s) {
      detail = fmt("mismatch at s = %.6g", s);
      return false;
    }
  }
  return true;
}

// 6. Two-component equal-split modes.
bool c6_modes(std::string& detail) {
  for (double alpha : {0.5, 1.0, 2.0, 5.0}) {
    GammaConvolution half = gschur::make_convolution(
        {{0.5, 1.0 + alpha, alpha}, {0.5, 1.0 + alpha, alpha}});
    double want = (2.0 * alpha + 1.0) / (2.0 * alpha);
    if (std::fabs(half.mode() - want) > 1e-6) {
      detail = "midpoint mode off at alpha = " + std::to_string(alpha);
      return false;
    }
    for (double lam : {0.0, 1.0}) {
      std::vector<GammaTerm> ts;
      if (lam > 0.0) ts.push_back({lam, 1.0 + alpha, alpha});
      if (lam < 1.0) ts.push_back({1.0 - lam, 1.0 + alpha, alpha});
      if (std::fabs(gschur::make_convolution(ts).mode() - 1.0) > 1e-6) {
        detail = "endpoint mode off at alpha = " + std::to_string(alpha);
        return false;
      }
    }
  }
  return true;
}

// 7. Mode strictly increasing in the appended-term weight, 20 random bases.
bool c7_mode_monotone(std::string& detail) {
  std::mt19937_64 rng(707);
  for (int rep = 0; rep < 20; ++rep) {
    double alpha = gv::uniform(rng, 0.6, 3.0);
    std::size_t n = 1 + rng() % 3;
    std::vector<GammaTerm> base;
    double rho = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      base.push_back({gv::uniform(rng, 0.3, 1.0), gv::uniform(rng, 0.5, 1.8), alpha});
      rho += base.back().shape;
    }
    if (rho <= 1.1) {
      base.push_back({gv::uniform(rng, 0.3, 1.0), 1.3, alpha});
    }
    double prev = -1.0, prev_tol = 0.0;
    for (int g = 1; g <= 10; ++g) {
      std::vector<GammaTerm> ts = base;
      ts.push_back({0.1 * g, 1.0, alpha});
      GammaConvolution c = gschur::make_convolution(ts);
      double m = c.mode();
      double tol = std::max(prev_tol, c.mode_tolerance());
      if (prev >= 0.0 && !(m > prev + 2.0 * tol)) {
        detail = "rep " + std::to_string(rep) + " stalled at grid " + std::to_string(g);
        return false;
      }
      prev = m;
      prev_tol = c.mode_tolerance();
    }
  }
  return true;
}

// 8. Density-difference identity residual at 50 random configurations.
bool c8_identity(std::string& detail) {
  std::mt19937_64 rng(808);
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    double psi_rate = gv::uniform(rng, 0.5, 2.5);
    std::size_t n = 1 + rng() % 2;
    std::vector<GammaTerm> base;
    for (std::size_t i = 0; i < n; ++i)
      base.push_back({gv::uniform(rng, 0.3, 1.2), gv::uniform(rng, 0.8, 2.5),
                      gv::uniform(rng, 0.6, 2.0)});
    GammaConvolution c = gschur::make_convolution(base);
    double a = (rep % 4 == 0) ? 0.0 : gv::uniform(rng, 0.05, 0.8);
    double b = gv::uniform(rng, 0.05, 0.8);
    double x = gv::uniform(rng, 0.4, 2.0) * c.mean();
    double res = std::fabs(gschur::derivative_identity_residual(c, a, b, psi_rate, x));
    worst = std::max(worst, res);
  }
  detail = fmt("max |residual| = %.2e", worst);
  return worst <= 1e-6;
}

// 9. Crossing existence: 50 strict non-permutation pairs.
bool c9_crossings(std::string& detail) {
  std::mt19937_64 rng(909);
  for (int rep = 0; rep < 50; ++rep) {
    std::size_t n = (rep < 20) ? 2 : 3 + rng() % 4;
    double alpha = gv::uniform(rng, 0.5, 5.0);
    double s = gv::uniform(rng, 0.5, 2.0);
    auto [mu, lambda] = gv::random_strict_pair(rng, n, s);
    auto range = gschur::default_scan_range(mu, lambda, alpha, 1.0);
    auto t = gschur::theorem1_thresholds(n, alpha, 1.0, s, s, false);
    double x_lo = t.convex ? range.x_lo : 1e-3 * s;
    auto rep_ = gschur::crossing_points(mu, lambda, alpha, 1.0, x_lo, range.x_hi,
                                        512, 1e-8 * s, g_threads);
    if (rep_.crossings.empty()) {
      detail = "no crossing, rep " + std::to_string(rep);
      return false;
    }
    if (n == 2 && rep_.crossings.size() != 1) {
      detail = "n=2 multiplicity " + std::to_string(rep_.crossings.size());
      return false;
    }
  }
  return true;
}

// 10. Monte Carlo cross-validation, 20 configurations at n = 1e6.
bool c10_mc(std::string& detail) {
  std::mt19937_64 rng(1010);
  int fails = 0;
  for (int rep = 0; rep < 20; ++rep) {
    std::size_t n = 1 + rng() % 6;
    double alpha = gv::uniform(rng, 0.5, 5.0);
    double beta = gv::uniform(rng, 0.5, 4.0);
    WeightVector w = gv::random_weight_vector(rng, n, gv::uniform(rng, 0.5, 2.0));
    GammaConvolution conv = gschur::iid_convolution(w, alpha, beta);
    std::vector<double> probes;
    for (double f : {0.25, 0.5, 0.75, 1.0, 1.3, 1.8, 2.5})
      probes.push_back(f * conv.mean());
    if (!gschur::validate_cdf(conv, 1000000, rng(), probes, 0.01, g_threads).pass)
      ++fails;
  }
  detail = std::to_string(fails) + " of 20 outside the band";
  return fails <= 1;
}

// 11. Signal planner: monotone chain and certified-minimal sample size.
bool c11_signal(std::string& detail) {
  double prev = 1.0;
  for (long n = 1; n <= 50; ++n) {
    double p = gschur::signal_type1_prob(n, 1.5);
    if (p > prev + 4e-10) {
      detail = "chain rose at N = " + std::to_string(n);
      return false;
    }
    prev = p;
  }
  gschur::SignalPlan plan = gschur::signal_min_samples(1.5, 0.01);
  if (plan.type1_at_min > 0.01) {
    detail = "tail above delta at the minimum";
    return false;
  }
  for (long n = 1; n < plan.min_samples; ++n) {
    if (gschur::signal_type1_prob(n, 1.5) <= 0.01) {
      detail = "smaller N already works: " + std::to_string(n);
      return false;
    }
  }
  detail = "N = " + std::to_string(plan.min_samples);
  return true;
}

// 12. Trace planner: bound sufficiency on 50 random spectra and the
// skewness ordering along the normalized chain.
bool c12_trace(std::string& detail) {
  std::mt19937_64 rng(1212);
  for (int rep = 0; rep < 50; ++rep) {
    std::size_t n = 2 + rng() % 11;
    WeightVector spec = gv::random_weight_vector(rng, n, gv::uniform(rng, 0.5, 5.0),
                                                 0.05, 1.0);
    long nb = gschur::trace_bound_samples(spec.sum(), spec.max(), 0.25, 0.01);
    if (gschur::trace_tail(spec, nb, 0.25, gschur::TailSide::Lower) > 0.01 ||
        gschur::trace_tail(spec, nb, 0.25, gschur::TailSide::Upper) > 0.01) {
      detail = "bound insufficient at rep " + std::to_string(rep);
      return false;
    }
  }
  std::vector<WeightVector> chain = {
      WeightVector({1.0, 0.0, 0.0, 0.0}),
      WeightVector({2.0 / 3.0, 1.0 / 3.0, 0.0, 0.0}),
      WeightVector({3.0 / 6.0, 2.0 / 6.0, 1.0 / 6.0, 0.0}),
      WeightVector({0.4, 0.3, 0.2, 0.1})};
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    auto r = gschur::skewness_compare(chain[i], chain[i + 1], 8, 0.5);
    if (r.relation != gschur::SkewnessRelation::OrderedByTheorem1 ||
        r.lower_tail_2 > r.lower_tail_1 + 4e-10) {
      detail = "chain link " + std::to_string(i) + " not ordered";
      return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  criterion(1, "closed-form exactness", c1_closed_forms, 5.0);
  criterion(2, "concave-side ordering", c2_concave, 120.0);
  criterion(3, "convex-side ordering", c3_convex);
  criterion(4, "worked four-vector chain", c4_chain);
  criterion(5, "chi-squared threshold coincidence", c5_bakirov);
  criterion(6, "two-component mode values", c6_modes);
  criterion(7, "mode monotone in appended weight", c7_mode_monotone);
  criterion(8, "density-difference identity", c8_identity);
  criterion(9, "crossing existence and uniqueness", c9_crossings);
  criterion(10, "Monte Carlo DKW validation", c10_mc, 180.0);
  criterion(11, "signal planner chain and minimality", c11_signal);
  criterion(12, "trace bound sufficiency and skewness", c12_trace);

  std::printf("%s: %d of 12 criteria failed\n", failures == 0 ? "OK" : "FAILED",
              failures);
  return failures;
}
