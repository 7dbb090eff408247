#include "gschur/convolution.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>

#include "gschur/errors.hpp"
#include "gschur/special.hpp"

namespace gschur {
namespace detail {

namespace {
constexpr double kScaleMergeRelTol = 1e-12;
constexpr int kRefreshInterval = 1024;  // bound drift of the recurrence-updated terms
}  // namespace

// Append-only coefficient store with lock-free reads. Chunk pointers are
// atomics; values below count() are never modified after publication.
class CoefStore {
 public:
  static constexpr std::size_t kChunkSize = 8192;
  static constexpr std::size_t kMaxChunks =
      (GammaConvolution::kMaxSeriesTerms + kChunkSize - 1) / kChunkSize;

  CoefStore() {
    for (auto& c : chunks_) c.store(nullptr, std::memory_order_relaxed);
  }
  ~CoefStore() {
    for (auto& c : chunks_) delete c.load(std::memory_order_relaxed);
  }
  CoefStore(const CoefStore&) = delete;
  CoefStore& operator=(const CoefStore&) = delete;

  std::size_t count() const { return count_.load(std::memory_order_acquire); }

  // Mixture weight d_i and cumulative weight sum_{j<=i} d_j; requires i < count().
  double d(std::size_t i) const { return chunk(i)->d[i % kChunkSize]; }
  double cumw(std::size_t i) const { return chunk(i)->cw[i % kChunkSize]; }

  // Writer side; caller holds the generation mutex.
  void append(double dk, double cw) {
    std::size_t i = count_.load(std::memory_order_relaxed);
    std::size_t ci = i / kChunkSize;
    Chunk* c = chunks_[ci].load(std::memory_order_relaxed);
    if (c == nullptr) {
      c = new Chunk();
      chunks_[ci].store(c, std::memory_order_release);
    }
    c->d[i % kChunkSize] = dk;
    c->cw[i % kChunkSize] = cw;
    count_.store(i + 1, std::memory_order_release);
  }

 private:
  struct Chunk {
    double d[kChunkSize];
    double cw[kChunkSize];
  };
  const Chunk* chunk(std::size_t i) const {
    return chunks_[i / kChunkSize].load(std::memory_order_acquire);
  }
  std::array<std::atomic<Chunk*>, kMaxChunks> chunks_;
  std::atomic<std::size_t> count_{0};
};

// Series state for a multi-term convolution. The density is expanded on the
// smallest effective scale theta1:
//   f(x) = sum_k d_k gammapdf(rho + k, scale theta1)(x),   d_k >= 0, sum = 1.
// The generating function of the d_k is f(t) = d_0 prod_j (1 - c_j t)^{-a_j}
// with c_j = 1 - theta1/theta_j in [0, 1). Two coefficient recursions:
//  - up to 40 distinct scales: the first-order ODE f' Q = f R with
//    Q = prod (1 - c_j t) gives a short linear recurrence (O(m) per term);
//  - more scales: the positive full-history recursion from
//    d/dt log f = sum_i w_{i+1} t^i, w_i = sum_j a_j c_j^i (O(k) per term),
//    which avoids forming the degree-m polynomial Q.
// Internally the recursion runs on values scaled by 2^{-wexp} so that a
// denormal-small leading weight d_0 does not flush the whole stream to zero;
// published coefficients are the true d_k (harmlessly 0 when below range).
struct SeriesCache {
  static constexpr std::size_t kOdeMaxGroups = 40;

  double theta1 = 0.0;
  double rho = 0.0;
  double log_d0 = 0.0;
  bool classic = false;

  // ODE path.
  std::vector<double> q;  // Q coefficients, q[0] = 1
  std::vector<double> r;  // R coefficients, degree < q degree

  // Classic path: per-group shape and c.
  std::vector<double> ca, cc;

  CoefStore store;

  // Generation state (guarded by gen_mu).
  std::mutex gen_mu;
  std::vector<double> hist;  // d_k * 2^{-wexp}
  long long wexp = 0;
  std::vector<double> w;  // classic path: w_i = sum_j a_j c_j^i, i >= 1 (w[0] = w_1)
  std::vector<double> pw;  // classic path: running a_j c_j^i
  std::size_t w_live = 0;  // prefix of w that is still nonzero
  double cum = 0.0, cum_carry = 0.0;

  void init(const std::vector<double>& shapes, const std::vector<double>& thetas);
  // Extends the published stream to at least n coefficients.
  void ensure(std::size_t n);

 private:
  void publish_scaled(double scaled);
  void step();
};

void SeriesCache::init(const std::vector<double>& shapes,
                       const std::vector<double>& thetas) {
  theta1 = *std::min_element(thetas.begin(), thetas.end());
  rho = 0.0;
  for (double a : shapes) rho += a;

  std::vector<double> a_act, c_act;
  log_d0 = 0.0;
  for (std::size_t j = 0; j < shapes.size(); ++j) {
    double c = 1.0 - theta1 / thetas[j];
    if (c <= 0.0) continue;  // the base-scale group contributes a unit factor
    a_act.push_back(shapes[j]);
    c_act.push_back(c);
    log_d0 += shapes[j] * std::log1p(-c);
  }

  classic = a_act.size() > kOdeMaxGroups;
  if (!classic) {
    // Q = prod (1 - c_j t); R = sum_j a_j c_j prod_{l != j} (1 - c_l t).
    q.assign(1, 1.0);
    for (double c : c_act) {
      q.push_back(0.0);
      for (std::size_t i = q.size() - 1; i >= 1; --i) q[i] -= c * q[i - 1];
    }
    r.assign(c_act.empty() ? 1 : c_act.size(), 0.0);
    for (std::size_t j = 0; j < c_act.size(); ++j) {
      std::vector<double> pj(1, 1.0);
      for (std::size_t l = 0; l < c_act.size(); ++l) {
        if (l == j) continue;
        pj.push_back(0.0);
        for (std::size_t i = pj.size() - 1; i >= 1; --i) pj[i] -= c_act[l] * pj[i - 1];
      }
      for (std::size_t i = 0; i < pj.size(); ++i) r[i] += a_act[j] * c_act[j] * pj[i];
    }
  } else {
    ca = a_act;
    cc = c_act;
    pw.assign(ca.size(), 0.0);
    for (std::size_t j = 0; j < ca.size(); ++j) pw[j] = ca[j];
  }

  // Scaled start: hist[0] = d_0 * 2^{-wexp} in [1, 2).
  double e = log_d0 / std::numbers::ln2_v<double>;
  wexp = static_cast<long long>(std::floor(e));
  hist.assign(1, std::exp(log_d0 - static_cast<double>(wexp) * std::numbers::ln2_v<double>));
  publish_scaled(hist[0]);
}

void SeriesCache::publish_scaled(double scaled) {
  double dk = std::ldexp(scaled, static_cast<int>(std::clamp<long long>(wexp, -2100, 2100)));
  double y = dk - cum_carry;
  double t = cum + y;
  cum_carry = (t - cum) - y;
  cum = t;
  store.append(dk, cum);
}

void SeriesCache::step() {
  const std::size_t k = hist.size() - 1;  // producing d_{k+1}
  if (k + 1 >= GammaConvolution::kMaxSeriesTerms)
    raise(Errc::SeriesDivergence,
          "series coefficient cap reached (pathological weight-scale spread)");

  double acc = 0.0;
  if (!classic) {
    const std::size_t L = q.size() - 1;
    double rhs = 0.0;
    const std::size_t ir = std::min(k + 1, r.size());
    for (std::size_t i = 0; i < ir; ++i) rhs += r[i] * hist[k - i];
    double sub = 0.0;
    const std::size_t iq = std::min(k, L);
    for (std::size_t i = 1; i <= iq; ++i)
      sub += q[i] * static_cast<double>(k + 1 - i) * hist[k + 1 - i];
    acc = (rhs - sub) / static_cast<double>(k + 1);
  } else {
    // w_{i} = sum_j a_j c_j^i; extend to i = k+1.
    double wk = 0.0;
    for (std::size_t j = 0; j < ca.size(); ++j) {
      pw[j] *= cc[j];
      wk += pw[j];
    }
    w.push_back(wk);  // w[k] = w_{k+1}
    if (wk != 0.0) w_live = w.size();
    double s = 0.0;
    for (std::size_t i = 1; i <= w_live; ++i) s += w[i - 1] * hist[k + 1 - i];
    acc = s / static_cast<double>(k + 1);
  }
  if (acc < 0.0) acc = 0.0;  // coefficients are nonnegative; rounding only

  // Keep the rolling scale in a sane band.
  if (acc > 0x1p500) {
    for (double& h : hist) h *= 0x1p-512;
    acc *= 0x1p-512;
    wexp += 512;
  } else if (acc != 0.0 && acc < 0x1p-500 && cum < 0.5) {
    for (double& h : hist) h *= 0x1p512;
    acc *= 0x1p512;
    wexp -= 512;
  }
  hist.push_back(acc);
  publish_scaled(acc);
}

void SeriesCache::ensure(std::size_t n) {
  if (store.count() >= n) return;
  std::lock_guard<std::mutex> lock(gen_mu);
  while (store.count() < n) step();
}

}  // namespace detail

namespace {

double kahan_add(double& sum, double& carry, double x) {
  double y = x - carry;
  double t = sum + y;
  carry = (t - sum) - y;
  sum = t;
  return sum;
}

// Upper bound on the series term values across all shapes, used to certify
// the pdf remainder before the shape passes the peak at y = x/theta. The
// values g_a(x) = y^a e^{-y} / (x Gamma(a)) obey g_a <= sqrt(y/(2 pi))/x up
// to a (1 + O(1/y)) factor; the constant here is generous and is unit-tested
// against dense (a, y) grids.
double sup_gamma_term(double y, double x) {
  return (std::sqrt(std::max(y, 1.0)) + 2.0) / x;
}

}  // namespace

double GammaConvolution::stddev() const noexcept { return std::sqrt(var_); }

GammaConvolution GammaConvolution::make(const std::vector<GammaTerm>& input,
                                        double eval_tolerance) {
  if (input.empty()) raise(Errc::AllWeightsZero, "make_convolution: no terms");
  if (!(eval_tolerance > 0.0))
    raise(Errc::InvalidArgument, "make_convolution: eval_tolerance must be positive");

  double total_weight = 0.0, carry = 0.0;
  std::vector<GammaTerm> kept;
  for (const GammaTerm& t : input) {
    if (!std::isfinite(t.weight) || t.weight < 0.0)
      raise(Errc::InvalidArgument, "make_convolution: weights must be finite and >= 0");
    if (!std::isfinite(t.shape) || !std::isfinite(t.rate) || t.shape <= 0.0 || t.rate <= 0.0)
      raise(Errc::NonpositiveShapeOrRate,
            "make_convolution: shapes and rates must be positive");
    kahan_add(total_weight, carry, t.weight);
    if (t.weight > 0.0) kept.push_back(t);
  }
  if (kept.empty())
    raise(Errc::AllWeightsZero, "make_convolution: all weights are zero");

  // Canonical order: ascending effective scale. Makes construction (and
  // therefore evaluation) permutation-invariant to the bit.
  std::sort(kept.begin(), kept.end(), [](const GammaTerm& a, const GammaTerm& b) {
    double sa = a.weight / a.rate, sb = b.weight / b.rate;
    if (sa != sb) return sa < sb;
    if (a.shape != b.shape) return a.shape < b.shape;
    return a.weight < b.weight;
  });

  // Merge equal effective scales (exact gamma additivity).
  std::vector<GammaTerm> merged;
  for (const GammaTerm& t : kept) {
    if (!merged.empty()) {
      double s0 = merged.back().weight / merged.back().rate;
      double s1 = t.weight / t.rate;
      if (std::fabs(s1 - s0) <= detail::kScaleMergeRelTol * std::max(s0, s1)) {
        merged.back().shape += t.shape;
        continue;
      }
    }
    merged.push_back(t);
  }

  GammaConvolution conv;
  conv.terms_ = std::move(merged);
  conv.total_weight_ = total_weight;
  conv.eval_tol_ = eval_tolerance;
  double rho = 0.0, rc = 0.0, mean = 0.0, mc = 0.0, var = 0.0, vc = 0.0;
  for (const GammaTerm& t : conv.terms_) {
    kahan_add(rho, rc, t.shape);
    kahan_add(mean, mc, t.weight * t.shape / t.rate);
    kahan_add(var, vc, t.weight * t.weight * t.shape / (t.rate * t.rate));
  }
  conv.total_shape_ = rho;
  conv.mean_ = mean;
  conv.var_ = var;

  if (conv.terms_.size() > 1) {
    std::vector<double> shapes, thetas;
    for (const GammaTerm& t : conv.terms_) {
      shapes.push_back(t.shape);
      thetas.push_back(t.weight / t.rate);
    }
    conv.cache_ = std::make_shared<detail::SeriesCache>();
    conv.cache_->init(shapes, thetas);
  }
  return conv;
}

GammaConvolution GammaConvolution::iid(const WeightVector& weights, double shape,
                                       double rate, double eval_tolerance) {
  if (!(weights.sum() > 0.0))
    raise(Errc::AllWeightsZero, "iid_convolution: weight sum must be positive");
  std::vector<GammaTerm> terms;
  terms.reserve(weights.size());
  for (double w : weights.entries()) terms.push_back({w, shape, rate});
  return make(terms, eval_tolerance);
}

GammaConvolution GammaConvolution::with_tolerance(double eval_tolerance) const {
  if (!(eval_tolerance > 0.0))
    raise(Errc::InvalidArgument, "with_tolerance: eval_tolerance must be positive");
  GammaConvolution c = *this;
  c.eval_tol_ = eval_tolerance;
  return c;
}

double GammaConvolution::cdf(double x) const {
  if (std::isnan(x)) raise(Errc::InvalidArgument, "cdf: x is NaN");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (!cache_) {
    const GammaTerm& t = terms_.front();
    return reg_lower_gamma(total_shape_, x * t.rate / t.weight);
  }
  return series_cdf(x, nullptr);
}

double GammaConvolution::series_cdf(double x, double* terms_used) const {
  detail::SeriesCache& S = *cache_;
  const double tol = 0.5 * eval_tol_;
  const double y = x / S.theta1;
  const double ln_y = std::log(y);

  double sum = 0.0, carry = 0.0;
  // P_k = P(rho + k, y), downdated via P(a+1,y) = P(a,y) - y^a e^{-y}/Gamma(a+1).
  double P = reg_lower_gamma(S.rho, y);
  double lgt = S.rho * ln_y - y - lgamma_pos(S.rho + 1.0);

  for (std::size_t k = 0;; ++k) {
    if (k >= kMaxSeriesTerms)
      raise(Errc::SeriesDivergence, "cdf: series term cap reached before the "
                                    "remainder bound met eval_tolerance");
    S.ensure(k + 1);
    double dk = S.store.d(k);
    kahan_add(sum, carry, dk * P);

    // Advance to P_{k+1}.
    if ((k + 1) % detail::kRefreshInterval == 0) {
      P = reg_lower_gamma(S.rho + static_cast<double>(k + 1), y);
      lgt = (S.rho + static_cast<double>(k + 1)) * ln_y - y -
            lgamma_pos(S.rho + static_cast<double>(k + 2));
    } else {
      P -= std::exp(lgt);
      if (P < 0.0) P = 0.0;
      lgt += ln_y - std::log(S.rho + static_cast<double>(k + 1));
    }

    double residual = 1.0 - S.store.cumw(k);
    if (residual < 0.0) residual = 0.0;
    if (residual * P <= tol) {
      if (terms_used) *terms_used = static_cast<double>(k + 1);
      break;
    }
  }
  return std::clamp(sum, 0.0, 1.0);
}

double GammaConvolution::pdf(double x) const {
  if (std::isnan(x)) raise(Errc::InvalidArgument, "pdf: x is NaN");
  if (x < 0.0 || std::isinf(x)) return 0.0;
  if (!cache_) {
    const GammaTerm& t = terms_.front();
    return gamma_pdf(total_shape_, t.rate / t.weight, x);
  }
  if (x == 0.0) {
    if (total_shape_ > 1.0) return 0.0;
    if (total_shape_ < 1.0) return std::numeric_limits<double>::infinity();
    return std::exp(cache_->log_d0) / cache_->theta1;
  }
  return series_pdf(x, nullptr);
}

double GammaConvolution::series_pdf(double x, double* terms_used) const {
  detail::SeriesCache& S = *cache_;
  const double tol = 0.5 * eval_tol_;
  const double y = x / S.theta1;
  const double ln_y = std::log(y);

  double sum = 0.0, carry = 0.0;
  // g_k = density of Gamma(rho + k, scale theta1) at x; g_{k+1}/g_k = y/(rho+k).
  double lgg = (S.rho - 1.0) * ln_y - y - lgamma_pos(S.rho) - std::log(S.theta1);
  double g = std::exp(lgg);

  for (std::size_t k = 0;; ++k) {
    if (k >= kMaxSeriesTerms)
      raise(Errc::SeriesDivergence, "pdf: series term cap reached before the "
                                    "remainder bound met eval_tolerance");
    S.ensure(k + 1);
    double dk = S.store.d(k);
    kahan_add(sum, carry, dk * g);

    // Advance to g_{k+1}.
    if ((k + 1) % detail::kRefreshInterval == 0) {
      lgg = (S.rho + static_cast<double>(k)) * ln_y - y -
            lgamma_pos(S.rho + static_cast<double>(k + 1)) - std::log(S.theta1);
    } else {
      lgg += ln_y - std::log(S.rho + static_cast<double>(k));
    }
    g = std::exp(lgg);

    double residual = 1.0 - S.store.cumw(k);
    if (residual < 0.0) residual = 0.0;
    // Past the density peak in shape, g_{k+1} dominates the tail terms;
    // before it, fall back to the uniform bound over shapes.
    double bound = (S.rho + static_cast<double>(k) + 1.0 > y)
                       ? g
                       : sup_gamma_term(y, x);
    if (residual * bound <= tol) {
      if (terms_used) *terms_used = static_cast<double>(k + 1);
      break;
    }
  }
  return std::max(sum, 0.0);
}

std::size_t GammaConvolution::adaptive_pdf_terms(double x) const {
  double n = 0.0;
  series_pdf(x, &n);
  return static_cast<std::size_t>(n);
}

double GammaConvolution::pdf_fixed_terms(double x, std::size_t n_terms) const {
  detail::SeriesCache& S = *cache_;
  if (x <= 0.0) {
    return pdf(std::max(x, 0.0));
  }
  S.ensure(n_terms);
  const double y = x / S.theta1;
  const double ln_y = std::log(y);
  double lgg = (S.rho - 1.0) * ln_y - y - lgamma_pos(S.rho) - std::log(S.theta1);
  double g = std::exp(lgg);
  double sum = 0.0, carry = 0.0;
  for (std::size_t k = 0; k < n_terms; ++k) {
    kahan_add(sum, carry, S.store.d(k) * g);
    if ((k + 1) % detail::kRefreshInterval == 0) {
      lgg = (S.rho + static_cast<double>(k)) * ln_y - y -
            lgamma_pos(S.rho + static_cast<double>(k + 1)) - std::log(S.theta1);
    } else {
      lgg += ln_y - std::log(S.rho + static_cast<double>(k));
    }
    g = std::exp(lgg);
  }
  return std::max(sum, 0.0);
}

double GammaConvolution::mode(double mode_tol) const {
  if (!(mode_tol > 0.0)) raise(Errc::InvalidArgument, "mode: tolerance must be positive");
  if (!cache_) {
    const GammaTerm& t = terms_.front();
    if (total_shape_ <= 1.0) return 0.0;
    return (total_shape_ - 1.0) * t.weight / t.rate;
  }
  if (total_shape_ < 1.0) return 0.0;  // density decreasing from +inf at 0+

  const double bracket = mean_ + 12.0 * stddev();
  // Pin a term count valid across the whole bracket so the searched function
  // is smooth; the adaptive stop count varies with x by whole terms.
  std::size_t nt = 0;
  for (double p : {0.02, 0.1, 0.25, 0.5, 0.75, 1.0}) {
    nt = std::max(nt, adaptive_pdf_terms(p * bracket));
  }
  nt = std::max(nt, adaptive_pdf_terms(std::min(mean_, bracket)));
  nt += nt / 8 + 32;
  auto f = [&](double x) { return pdf_fixed_terms(x, nt); };

  // Golden-section on -f over [0, bracket]; unimodality makes this global.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = bracket;
  double c1 = hi - gr * (hi - lo), c2 = lo + gr * (hi - lo);
  double f1 = f(c1), f2 = f(c2);
  const double golden_tol = std::max(1e-6 * mean_, 64.0 * mode_tol);
  while (hi - lo > golden_tol) {
    if (f1 < f2) {
      lo = c1;
      c1 = c2;
      f1 = f2;
      c2 = lo + gr * (hi - lo);
      f2 = f(c2);
    } else {
      hi = c2;
      c2 = c1;
      f2 = f1;
      c1 = hi - gr * (hi - lo);
      f1 = f(c1);
    }
  }
  double m = 0.5 * (lo + hi);

  // Refine by bisecting the sign of a finite-difference derivative.
  const double h = 1e-5 * mean_;
  auto dfd = [&](double x) { return f(x + h) - f(x - h); };
  double a = std::max(h, lo - 4.0 * h);
  double b = std::min(bracket, hi + 4.0 * h);
  double da = dfd(a), db = dfd(b);
  int guard = 0;
  while (da <= 0.0 && a > h && ++guard < 64) {  // widen toward 0
    a = std::max(h, 0.5 * a);
    da = dfd(a);
  }
  guard = 0;
  while (db >= 0.0 && b < bracket && ++guard < 64) {
    b = std::min(bracket, b + (b - a));
    db = dfd(b);
  }
  if (da > 0.0 && db < 0.0) {
    while (b - a > 0.25 * mode_tol) {
      double mid = 0.5 * (a + b);
      double dm = dfd(mid);
      if (dm > 0.0)
        a = mid;
      else
        b = mid;
    }
    m = 0.5 * (a + b);
  } else if (da <= 0.0) {
    // No interior rise detected down to x = h: the density is non-increasing
    // on (0, bracket) and the supremum sits at the origin.
    m = 0.0;
  }
  if (m <= mode_tol && f(1e-3 * mode_tol + 1e-300) >= f(std::max(m, h)))
    m = 0.0;
  return m;
}

double derivative_identity_residual(const GammaConvolution& base, double a, double b,
                                    double psi_rate, double x) {
  if (!(psi_rate > 0.0))
    raise(Errc::NonpositiveShapeOrRate, "derivative_identity_residual: psi rate");
  if (!(x > 0.0)) raise(Errc::InvalidArgument, "derivative_identity_residual: x > 0");
  if (!(a >= 0.0) || !(b >= 0.0))
    raise(Errc::InvalidArgument, "derivative_identity_residual: a, b >= 0");

  auto with_psi = [&](std::initializer_list<double> weights) {
    std::vector<GammaTerm> ts = base.terms();
    for (double w : weights) ts.push_back({w, 1.0, psi_rate});
    return GammaConvolution::make(ts, base.eval_tolerance());
  };
  GammaConvolution xa = with_psi({a});
  GammaConvolution xb = with_psi({b});
  GammaConvolution xab = with_psi({a, b});

  const double h = std::max(1e-6, 1e-6 * x);
  double dfdx;
  if (xab.cache_) {
    // Matched truncation depth keeps the finite difference free of the
    // adaptive stop's term-count jitter.
    std::size_t nt = std::max(xab.adaptive_pdf_terms(x + h),
                              xab.adaptive_pdf_terms(std::max(x - h, 0.5 * h)));
    nt += 16;
    dfdx = (xab.pdf_fixed_terms(x + h, nt) - xab.pdf_fixed_terms(x - h, nt)) / (2.0 * h);
  } else {
    dfdx = (xab.pdf(x + h) - xab.pdf(x - h)) / (2.0 * h);
  }
  return xa.pdf(x) - xb.pdf(x) - (b - a) / psi_rate * dfdx;
}

}  // namespace gschur
