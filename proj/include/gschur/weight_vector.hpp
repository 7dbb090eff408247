#ifndef GSCHUR_WEIGHT_VECTOR_HPP
#define GSCHUR_WEIGHT_VECTOR_HPP

#include <cstddef>
#include <vector>

namespace gschur {

// Nonnegative weights stored sorted non-increasing, with their sum.
// Immutable after construction.
class WeightVector {
 public:
  // Empty placeholder; every validated instance comes from the vector
  // constructor. Deserialization targets need this.
  WeightVector() = default;

  explicit WeightVector(std::vector<double> entries);

  const std::vector<double>& entries() const noexcept { return entries_; }
  double sum() const noexcept { return sum_; }
  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  double max() const { return entries_.front(); }
  double min() const { return entries_.back(); }

  // Zero-pad to length n (n >= size()); entries stay sorted.
  WeightVector padded(std::size_t n) const;

  // Entrywise equality of the sorted representations, within atol.
  bool same_entries(const WeightVector& other, double atol = 0.0) const;

  // Partial sums of the sorted entries: result[k] = sum of the k+1 largest.
  std::vector<double> partial_sums() const;

 private:
  std::vector<double> entries_;
  double sum_ = 0.0;
};

}  // namespace gschur

#endif  // GSCHUR_WEIGHT_VECTOR_HPP
