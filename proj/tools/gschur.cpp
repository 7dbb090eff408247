#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gschur/convolution.hpp"
#include "gschur/crossings.hpp"
#include "gschur/errors.hpp"
#include "gschur/json_io.hpp"
#include "gschur/majorization.hpp"
#include "gschur/planners.hpp"
#include "gschur/schur_order.hpp"
#include "gschur/spectrum_io.hpp"
#include "gschur/verify.hpp"

namespace {

using gschur::json;

// 12 significant digits, positional where reasonable, trailing zeros kept.
std::string sig12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  if (v == 0.0) {
    std::snprintf(buf, sizeof buf, "%.12f", 0.0);
    return buf;
  }
  int e = static_cast<int>(std::floor(std::log10(std::fabs(v))));
  if (e >= -5 && e <= 14) {
    int decimals = 11 - e;
    if (decimals < 0) decimals = 0;
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  } else {
    std::snprintf(buf, sizeof buf, "%.11e", v);
  }
  return buf;
}

gschur::WeightVector parse_weights(const std::string& csv) {
  std::vector<double> vals;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    std::size_t pos = 0;
    double v;
    try {
      v = std::stod(cur, &pos);
    } catch (const std::exception&) {
      gschur::raise(gschur::Errc::ParseError, "cannot parse weight '" + cur + "'");
    }
    if (pos != cur.size())
      gschur::raise(gschur::Errc::ParseError, "cannot parse weight '" + cur + "'");
    vals.push_back(v);
    cur.clear();
  };
  for (char ch : csv) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      flush();
    } else {
      cur.push_back(ch);
    }
  }
  flush();
  if (vals.empty()) gschur::raise(gschur::Errc::ParseError, "empty weight list");
  return gschur::WeightVector(std::move(vals));
}

struct WeightsOpt {
  std::string inline_csv;
  std::string file;

  gschur::WeightVector resolve(const char* what) const {
    if (!inline_csv.empty() && !file.empty())
      gschur::raise(gschur::Errc::InvalidArgument,
                    std::string(what) + ": give weights inline or as a file, not both");
    if (!inline_csv.empty()) return parse_weights(inline_csv);
    if (!file.empty())
      return gschur::ingest_spectrum(file, gschur::SpectrumFormat::List).spectrum;
    gschur::raise(gschur::Errc::InvalidArgument,
                  std::string(what) + ": weights required");
  }
};

void emit(const json& j, bool json_mode, const std::string& text) {
  if (json_mode) {
    json out = j;
    out["schema"] = gschur::kSchemaVersion;
    std::cout << out.dump() << "\n";
  } else {
    std::cout << text << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distribution functions, Schur-order verdicts, CDF crossing scans "
               "and sample-size planners for weighted convolutions of gamma "
               "random variables."};
  app.require_subcommand(1);

  bool json_mode = false;
  double eval_tol = gschur::GammaConvolution::kDefaultEvalTol;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::uint64_t seed = 42;
  app.add_flag("--json", json_mode, "emit one JSON object per result");
  app.add_option("--eval-tol", eval_tol,
                 "certified absolute error for cdf/pdf evaluation (default 1e-10)");
  app.add_option("--threads", threads,
                 "worker threads for grid scans and sampling (default: hardware)");
  app.add_option("--seed", seed, "RNG seed for randomized suites (default 42)");

  // ---- cdf / pdf / mode ----
  struct DistArgs {
    WeightsOpt weights;
    double alpha = 1.0, beta = 1.0, x = 1.0;
    double mode_tol = 0.0;
  } dist;
  auto add_dist_opts = [&](CLI::App* sub, bool needs_x) {
    sub->add_option("--weights", dist.weights.inline_csv, "comma-separated weights");
    sub->add_option("--weights-file", dist.weights.file,
                    "file with one weight per line (or comma-separated)");
    sub->add_option("--alpha", dist.alpha, "common gamma shape")->required();
    sub->add_option("--beta", dist.beta, "common gamma rate")->required();
    if (needs_x) sub->add_option("--x", dist.x, "evaluation point")->required();
  };
  CLI::App* cmd_cdf = app.add_subcommand("cdf", "Pr(sum_i w_i X_i < x)");
  add_dist_opts(cmd_cdf, true);
  CLI::App* cmd_pdf = app.add_subcommand("pdf", "density of sum_i w_i X_i at x");
  add_dist_opts(cmd_pdf, true);
  CLI::App* cmd_mode = app.add_subcommand("mode", "mode of sum_i w_i X_i");
  add_dist_opts(cmd_mode, false);
  cmd_mode->add_option("--mode-tol", dist.mode_tol,
                       "absolute mode tolerance (default 1e-8 * mean)");

  // ---- compare ----
  struct CompareArgs {
    std::string mu, lambda;
    double alpha = 1.0, beta = 1.0, x = 1.0;
    bool numeric = false;
  } cmp;
  CLI::App* cmd_cmp = app.add_subcommand(
      "compare", "Schur-order verdict for P(mu;...) vs P(lambda;...)");
  cmd_cmp->add_option("--mu", cmp.mu, "comma-separated mu weights")->required();
  cmd_cmp->add_option("--lambda", cmp.lambda, "comma-separated lambda weights")
      ->required();
  cmd_cmp->add_option("--alpha", cmp.alpha, "common gamma shape")->required();
  cmd_cmp->add_option("--beta", cmp.beta, "common gamma rate")->required();
  cmd_cmp->add_option("--x", cmp.x, "evaluation point")->required();
  cmd_cmp->add_flag("--numeric", cmp.numeric,
                    "fall back to the numerical comparison instead of the "
                    "analytic rules");

  // ---- crossings ----
  struct CrossArgs {
    std::string mu, lambda;
    double alpha = 1.0, beta = 1.0;
    double x_lo = 0.0, x_hi = 0.0;
    std::size_t grid = 512;
    double refine_tol = 0.0;
    std::string csv;
  } cr;
  CLI::App* cmd_cr = app.add_subcommand(
      "crossings", "sign changes of P(mu;..,x) - P(lambda;..,x) over an x range");
  cmd_cr->add_option("--mu", cr.mu, "comma-separated mu weights")->required();
  cmd_cr->add_option("--lambda", cr.lambda, "comma-separated lambda weights")
      ->required();
  cmd_cr->add_option("--alpha", cr.alpha, "common gamma shape")->required();
  cmd_cr->add_option("--beta", cr.beta, "common gamma rate")->required();
  cmd_cr->add_option("--x-lo", cr.x_lo, "scan start (default from thresholds)");
  cmd_cr->add_option("--x-hi", cr.x_hi, "scan end (default from thresholds)");
  cmd_cr->add_option("--grid", cr.grid, "grid intervals (default 512)");
  cmd_cr->add_option("--refine-tol", cr.refine_tol,
                     "crossing bracket width (default 1e-8 * sum)");
  cmd_cr->add_option("--csv", cr.csv,
                     "write the grid scan as CSV (x,P_mu,P_lambda,D); '-' for stdout");

  // ---- plan-signal ----
  struct SignalArgs {
    double x = 0.0, delta = 0.0;
  } sig;
  CLI::App* cmd_sig = app.add_subcommand(
      "plan-signal", "smallest N keeping the detector's Type-I error below delta");
  cmd_sig->add_option("--x", sig.x, "detection threshold")->required();
  cmd_sig->add_option("--delta", sig.delta, "Type-I tolerance")->required();

  // ---- plan-trace ----
  struct TraceArgs {
    WeightsOpt spectrum;
    std::string format = "auto";
    double epsilon = 0.0, delta = 0.0;
  } tra;
  CLI::App* cmd_tra = app.add_subcommand(
      "plan-trace", "sample sizes for the Gaussian trace estimator");
  cmd_tra->add_option("--spectrum", tra.spectrum.inline_csv,
                      "comma-separated eigenvalues");
  cmd_tra->add_option("--spectrum-file", tra.spectrum.file,
                      "eigenvalue list or dense symmetric matrix file");
  cmd_tra->add_option("--format", tra.format,
                      "spectrum file format: auto|list|matrix (default auto)");
  cmd_tra->add_option("--epsilon", tra.epsilon, "relative accuracy")->required();
  cmd_tra->add_option("--delta", tra.delta, "per-tail failure probability")
      ->required();

  // ---- verify ----
  std::string suite = "all";
  CLI::App* cmd_ver = app.add_subcommand("verify", "run a named property suite");
  cmd_ver->add_option("--suite", suite,
                      "appendix|theorem1|bakirov|crossings|mc|planners|all");

  for (CLI::App* sub : {cmd_cdf, cmd_pdf, cmd_mode, cmd_cmp, cmd_cr, cmd_sig,
                        cmd_tra, cmd_ver})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // help/version exit 0; any parse problem exits 2
  }

  try {
    if (*cmd_cdf || *cmd_pdf) {
      gschur::WeightVector w = dist.weights.resolve("cdf/pdf");
      gschur::GammaConvolution conv =
          gschur::GammaConvolution::iid(w, dist.alpha, dist.beta, eval_tol);
      double v = *cmd_cdf ? conv.cdf(dist.x) : conv.pdf(dist.x);
      json j{{"value", v},
             {"x", dist.x},
             {"alpha", dist.alpha},
             {"beta", dist.beta},
             {"weights", w.entries()},
             {"eval_tolerance", eval_tol}};
      emit(j, json_mode, sig12(v));
    } else if (*cmd_mode) {
      gschur::WeightVector w = dist.weights.resolve("mode");
      gschur::GammaConvolution conv =
          gschur::GammaConvolution::iid(w, dist.alpha, dist.beta, eval_tol);
      double mt = dist.mode_tol > 0.0 ? dist.mode_tol : conv.mode_tolerance();
      double v = conv.mode(mt);
      json j{{"value", v},
             {"alpha", dist.alpha},
             {"beta", dist.beta},
             {"weights", w.entries()},
             {"mode_tolerance", mt}};
      emit(j, json_mode, sig12(v));
    } else if (*cmd_cmp) {
      gschur::WeightVector mu = parse_weights(cmp.mu);
      gschur::WeightVector lambda = parse_weights(cmp.lambda);
      gschur::OrderVerdict v =
          cmp.numeric
              ? gschur::compare_numeric(mu, lambda, cmp.alpha, cmp.beta, cmp.x,
                                        eval_tol)
              : gschur::analytic_verdict(mu, lambda, cmp.alpha, cmp.beta, cmp.x);
      std::string text = std::string("relation=") + gschur::relation_name(v.relation) +
                         " decided_by=" + gschur::decided_by_name(v.decided_by);
      if (v.concave_threshold)
        text += " concave_threshold=" + sig12(*v.concave_threshold);
      if (v.convex_threshold)
        text += " convex_threshold=" + sig12(*v.convex_threshold);
      if (v.numeric_gap) text += " gap=" + sig12(*v.numeric_gap);
      emit(json(v), json_mode, text);
    } else if (*cmd_cr) {
      gschur::WeightVector mu = parse_weights(cr.mu);
      gschur::WeightVector lambda = parse_weights(cr.lambda);
      double s = lambda.sum();
      if (cr.x_lo <= 0.0 || cr.x_hi <= 0.0) {
        gschur::ScanRange r = gschur::default_scan_range(mu, lambda, cr.alpha, cr.beta);
        if (cr.x_lo <= 0.0) cr.x_lo = r.x_lo;
        if (cr.x_hi <= 0.0) cr.x_hi = r.x_hi;
      }
      if (cr.refine_tol <= 0.0) cr.refine_tol = 1e-8 * s;
      gschur::CrossingReport rep =
          gschur::crossing_points(mu, lambda, cr.alpha, cr.beta, cr.x_lo, cr.x_hi,
                                  cr.grid, cr.refine_tol, threads, eval_tol);
      if (!cr.csv.empty()) {
        std::vector<gschur::ScanPoint> pts = gschur::scan_difference(
            mu, lambda, cr.alpha, cr.beta, cr.x_lo, cr.x_hi, cr.grid, threads,
            eval_tol);
        std::ostream* os = &std::cout;
        std::ofstream file;
        if (cr.csv != "-") {
          file.open(cr.csv);
          if (!file)
            gschur::raise(gschur::Errc::InvalidArgument,
                          "cannot open CSV output '" + cr.csv + "'");
          os = &file;
        }
        *os << "x,P_mu,P_lambda,D\n";
        for (const auto& p : pts)
          *os << sig12(p.x) << ',' << sig12(p.p_mu) << ',' << sig12(p.p_lambda)
              << ',' << sig12(p.d) << "\n";
      }
      std::string text = "crossings=" + std::to_string(rep.crossings.size());
      for (const auto& c : rep.crossings) text += " x=" + sig12(c.x);
      text += " min_gap=" + sig12(rep.min_gap_detected);
      // CSV-to-stdout keeps stdout machine-readable: no text summary then.
      if (cr.csv != "-" || json_mode) emit(json(rep), json_mode, text);
    } else if (*cmd_sig) {
      gschur::SignalPlan plan = gschur::signal_min_samples(sig.x, sig.delta);
      std::string text = "min_samples=" + std::to_string(plan.min_samples) +
                         " type1_at_min=" + sig12(plan.type1_at_min) +
                         " monotone_region=" +
                         (plan.monotone_region ? "true" : "false");
      emit(json(plan), json_mode, text);
    } else if (*cmd_tra) {
      gschur::WeightVector spectrum = [&] {
        if (!tra.spectrum.file.empty()) {
          gschur::SpectrumFormat f = gschur::SpectrumFormat::Auto;
          if (tra.format == "list") f = gschur::SpectrumFormat::List;
          else if (tra.format == "matrix") f = gschur::SpectrumFormat::Matrix;
          else if (tra.format != "auto")
            gschur::raise(gschur::Errc::InvalidArgument,
                          "unknown --format '" + tra.format + "'");
          return gschur::ingest_spectrum(tra.spectrum.file, f).spectrum;
        }
        return tra.spectrum.resolve("plan-trace");
      }();
      gschur::TracePlan plan =
          gschur::trace_exact_min_samples(spectrum, tra.epsilon, tra.delta, eval_tol);
      std::string text = "exact_samples=" + std::to_string(plan.exact_samples) +
                         " bound_samples=" + std::to_string(plan.bound_samples) +
                         " effective_rank=" + sig12(plan.effective_rank);
      emit(json(plan), json_mode, text);
    } else if (*cmd_ver) {
      std::vector<gschur::verify::CheckResult> results =
          gschur::verify::run_suite(suite, seed, threads);
      int failed = 0;
      for (const auto& r : results) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty()) std::cout << " — " << r.detail;
        std::cout << "\n";
        if (!r.pass) ++failed;
      }
      if (failed > 0) {
        json err{{"schema", gschur::kSchemaVersion},
                 {"error", "VerificationFailed"},
                 {"message", std::to_string(failed) + " check(s) failed"}};
        std::cerr << err.dump() << "\n";
        return 1;
      }
    }
  } catch (const gschur::DomainError& e) {
    json err{{"schema", gschur::kSchemaVersion},
             {"error", gschur::errc_name(e.code())},
             {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err{{"schema", gschur::kSchemaVersion},
             {"error", "Internal"},
             {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
