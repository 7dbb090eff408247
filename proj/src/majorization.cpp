#include "gschur/majorization.hpp"

#include <algorithm>
#include <cmath>

#include "gschur/errors.hpp"

namespace gschur {

namespace {

double comparison_tol(const WeightVector& mu, const WeightVector& lambda) {
  return 1e-12 * std::max({mu.sum(), lambda.sum(), 1e-300});
}

MajorizationRelation classify(const WeightVector& mu_in, const WeightVector& lambda_in) {
  std::size_t n = std::max(mu_in.size(), lambda_in.size());
  WeightVector mu = mu_in.padded(n);
  WeightVector lambda = lambda_in.padded(n);
  const double tol = comparison_tol(mu, lambda);

  std::vector<double> pm = mu.partial_sums();
  std::vector<double> pl = lambda.partial_sums();
  std::vector<double> gaps(n);
  bool dominated = true;
  for (std::size_t k = 0; k < n; ++k) {
    gaps[k] = pl[k] - pm[k];
    if (gaps[k] < -tol) dominated = false;
  }

  if (mu.same_entries(lambda, tol)) return {MajorKind::Equal, std::move(gaps)};
  if (dominated) {
    if (std::fabs(gaps[n - 1]) <= tol) return {MajorKind::Strict, std::move(gaps)};
    return {MajorKind::Weak, std::move(gaps)};
  }
  return {MajorKind::Incomparable, std::move(gaps)};
}

}  // namespace

const char* major_kind_name(MajorKind k) {
  switch (k) {
    case MajorKind::Strict:       return "Strict";
    case MajorKind::Weak:         return "Weak";
    case MajorKind::Equal:        return "Equal";
    case MajorKind::Incomparable: return "Incomparable";
  }
  return "Unknown";
}

MajorizationRelation is_majorized(const WeightVector& mu, const WeightVector& lambda) {
  return classify(mu, lambda);
}

MajorizationRelation is_weakly_majorized(const WeightVector& mu,
                                         const WeightVector& lambda) {
  return classify(mu, lambda);
}

std::vector<WeightVector> t_transform_chain(const WeightVector& mu_in,
                                            const WeightVector& lambda_in) {
  std::size_t n = std::max(mu_in.size(), lambda_in.size());
  WeightVector mu = mu_in.padded(n);
  WeightVector lambda = lambda_in.padded(n);
  const double tol = comparison_tol(mu, lambda);

  MajorizationRelation rel = classify(mu, lambda);
  if (rel.kind == MajorKind::Equal) return {lambda};
  if (rel.kind != MajorKind::Strict)
    raise(Errc::NotMajorized, "t_transform_chain: mu must be strictly majorized by lambda");

  std::vector<WeightVector> chain;
  chain.push_back(lambda);
  std::vector<double> eta = lambda.entries();
  const std::vector<double>& target = mu.entries();

  for (std::size_t step = 0; step < n + 1; ++step) {
    // Largest j with eta_j > mu_j, then first k > j with eta_k < mu_k.
    std::ptrdiff_t j = -1, k = -1;
    for (std::size_t i = 0; i < n; ++i)
      if (eta[i] > target[i] + tol) j = static_cast<std::ptrdiff_t>(i);
    if (j < 0) break;  // converged
    for (std::size_t i = static_cast<std::size_t>(j) + 1; i < n; ++i)
      if (eta[i] < target[i] - tol) {
        k = static_cast<std::ptrdiff_t>(i);
        break;
      }
    if (k < 0) break;  // equal totals guarantee a recipient; tolerance slack only
    double delta = std::min(eta[j] - target[j], target[k] - eta[k]);
    eta[j] -= delta;
    eta[k] += delta;
    chain.emplace_back(eta);
  }
  // A Strict pair needs at least one transfer, so the chain has >= 2 vectors;
  // snap the floating-point residue of the endpoint to mu exactly.
  chain.back() = mu;
  return chain;
}

}  // namespace gschur
