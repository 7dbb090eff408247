#include "gschur/weight_vector.hpp"

#include <algorithm>
#include <cmath>

#include "gschur/errors.hpp"

namespace gschur {

namespace {
double kahan_sum(const std::vector<double>& v) {
  double s = 0.0, carry = 0.0;
  for (double x : v) {
    double y = x - carry;
    double t = s + y;
    carry = (t - s) - y;
    s = t;
  }
  return s;
}
}  // namespace

WeightVector::WeightVector(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) raise(Errc::InvalidArgument, "WeightVector: empty entry list");
  for (double e : entries_) {
    if (!(e >= 0.0) || std::isinf(e))
      raise(Errc::InvalidArgument, "WeightVector: entries must be finite and nonnegative");
  }
  std::sort(entries_.begin(), entries_.end(), std::greater<double>());
  sum_ = kahan_sum(entries_);
}

WeightVector WeightVector::padded(std::size_t n) const {
  if (n <= size()) return *this;
  std::vector<double> e = entries_;
  e.resize(n, 0.0);
  return WeightVector(std::move(e));
}

bool WeightVector::same_entries(const WeightVector& other, double atol) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (std::fabs(entries_[i] - other.entries_[i]) > atol) return false;
  return true;
}

std::vector<double> WeightVector::partial_sums() const {
  std::vector<double> ps(size());
  double s = 0.0, carry = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    double y = entries_[i] - carry;
    double t = s + y;
    carry = (t - s) - y;
    s = t;
    ps[i] = s;
  }
  return ps;
}

}  // namespace gschur
