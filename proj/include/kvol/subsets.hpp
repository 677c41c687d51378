#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kvol/scalar.hpp"

namespace kvol {

/// A sorted k-element subset of {1,...,n} together with its 0-based position
/// in the lexicographic order of all k-subsets. These index exterior-algebra
/// basis elements e_I and the row/column selections of matrix minors.
class SubsetIndex {
 public:
  /// Elements must be strictly increasing and lie in [1, ambient].
  SubsetIndex(std::vector<int> elements, int ambient);

  static SubsetIndex from_rank(int ambient, int k, std::uint64_t rank);

  const std::vector<int>& elements() const { return elements_; }
  int ambient() const { return ambient_; }
  int size() const { return static_cast<int>(elements_.size()); }
  std::uint64_t rank() const { return rank_; }

  bool operator==(const SubsetIndex& other) const {
    return ambient_ == other.ambient_ && elements_ == other.elements_;
  }

 private:
  std::vector<int> elements_;
  int ambient_ = 0;
  std::uint64_t rank_ = 0;
};

/// Exact binomial coefficient; never overflows.
Integer binomial(int n, int k);

/// Binomial as an index-sized integer. Overflow is an explicit error,
/// never a wraparound.
std::uint64_t binomial_u64(int n, int k);

/// All k-subsets of {1,...,n} in strictly increasing lexicographic order,
/// each carrying its rank. k = 0 yields the single empty subset.
std::vector<SubsetIndex> k_subsets(int n, int k);

SubsetIndex unrank(int n, int k, std::uint64_t rank);

/// Serializes as comma-separated 1-based elements in braces, e.g. "{1,3,4}".
std::string to_string(const SubsetIndex& s);

}  // namespace kvol
