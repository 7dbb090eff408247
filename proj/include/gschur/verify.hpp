#ifndef GSCHUR_VERIFY_HPP
#define GSCHUR_VERIFY_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gschur/weight_vector.hpp"

namespace gschur::verify {

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

// Suites: "appendix", "theorem1", "bakirov", "crossings", "mc", "planners",
// or "all". Unknown names raise InvalidArgument.
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed,
                                   unsigned threads);

std::vector<std::string> suite_names();

// Deterministic input generators shared with the test harnesses.
double uniform(std::mt19937_64& rng, double lo, double hi);

// n entries from U[lo_entry, hi_entry], sorted non-increasing, scaled to sum s.
WeightVector random_weight_vector(std::mt19937_64& rng, std::size_t n, double s,
                                  double lo_entry = 0.1, double hi_entry = 1.0);

// A strict majorization pair (mu ambiguity-free below lambda): lambda random,
// mu a proper convex mix of lambda with the equal-weight vector.
struct StrictPair {
  WeightVector mu;
  WeightVector lambda;
};
StrictPair random_strict_pair(std::mt19937_64& rng, std::size_t n, double s);

// Local maxima of a sampled sequence, counting only direction changes whose
// rise and fall both exceed `noise`: the unimodality check's filter.
int count_filtered_maxima(const std::vector<double>& values, double noise);

}  // namespace gschur::verify

#endif  // GSCHUR_VERIFY_HPP
