#ifndef GSCHUR_MAJORIZATION_HPP
#define GSCHUR_MAJORIZATION_HPP

#include <vector>

#include "gschur/weight_vector.hpp"

namespace gschur {

enum class MajorKind { Strict, Weak, Equal, Incomparable };

// Outcome of comparing mu against lambda in the majorization order.
//   Strict       mu ≺ lambda (partial-sum dominance, equal totals)
//   Weak         mu ≺w lambda only (dominance, totals differ)
//   Equal        sorted entries coincide
//   Incomparable some partial sum of mu exceeds the corresponding sum of
//                lambda beyond tolerance (includes the reversed order)
// partial_sum_gaps[k] = sum of the k+1 largest lambda entries minus the
// k+1 largest mu entries, after zero-padding to a common length.
struct MajorizationRelation {
  MajorKind kind;
  std::vector<double> partial_sum_gaps;
};

const char* major_kind_name(MajorKind k);

// Shorter vector is zero-padded; comparisons use absolute tolerance
// 1e-12 * max(sum_mu, sum_lambda).
MajorizationRelation is_majorized(const WeightVector& mu, const WeightVector& lambda);
MajorizationRelation is_weakly_majorized(const WeightVector& mu,
                                         const WeightVector& lambda);

// Deterministic chain lambda = eta_1 ≻ eta_2 ≻ ... ≻ eta_r = mu where
// consecutive vectors differ in exactly two coordinates (classic
// Marshall–Olkin transfer: move mass from the largest index where the
// current vector exceeds mu to the first later index where it falls short).
// Requires is_majorized(mu, lambda) = Strict or Equal; Equal gives a chain
// of length one.
std::vector<WeightVector> t_transform_chain(const WeightVector& mu,
                                            const WeightVector& lambda);

}  // namespace gschur

#endif  // GSCHUR_MAJORIZATION_HPP
