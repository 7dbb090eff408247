#include <limits>

#include <doctest.h>

#include "gschur/errors.hpp"
#include "gschur/weight_vector.hpp"

using gschur::WeightVector;

TEST_CASE("weight vector sorts non-increasing and sums") {
  WeightVector w({0.3, 0.7, 0.0, 0.5});
  CHECK(w.entries() == std::vector<double>{0.7, 0.5, 0.3, 0.0});
  CHECK(w.sum() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(w.max() == 0.7);
  CHECK(w.min() == 0.0);
}

TEST_CASE("weight vector rejects bad entries") {
  CHECK_THROWS_AS(WeightVector(std::vector<double>{}), gschur::DomainError);
  CHECK_THROWS_AS(WeightVector({0.5, -0.1}), gschur::DomainError);
  CHECK_THROWS_AS(WeightVector({std::numeric_limits<double>::infinity()}),
                  gschur::DomainError);
}

TEST_CASE("padding keeps order and sum") {
  WeightVector w({1.0, 2.0});
  WeightVector p = w.padded(4);
  CHECK(p.size() == 4);
  CHECK(p.entries() == std::vector<double>{2.0, 1.0, 0.0, 0.0});
  CHECK(p.sum() == w.sum());
}

TEST_CASE("partial sums accumulate the sorted prefix") {
  WeightVector w({0.1, 0.4, 0.5});
  auto ps = w.partial_sums();
  CHECK(ps[0] == doctest::Approx(0.5));
  CHECK(ps[1] == doctest::Approx(0.9));
  CHECK(ps[2] == doctest::Approx(1.0));
}

TEST_CASE("same_entries is permutation-blind by construction") {
  WeightVector a({0.2, 0.8});
  WeightVector b({0.8, 0.2});
  CHECK(a.same_entries(b));
  CHECK_FALSE(a.same_entries(WeightVector({0.8, 0.19})));
}
