#include "kvol/subsets.hpp"

#include <limits>
#include <stdexcept>

namespace kvol {

namespace {

void check_domain(int n, int k) {
  if (n < 0 || k < 0) {
    throw std::domain_error("subset parameters must be non-negative");
  }
  if (k > n) {
    throw std::domain_error("k-subsets require k <= n (got k=" +
                            std::to_string(k) + ", n=" + std::to_string(n) +
                            ")");
  }
}

// Lexicographic rank via the combinatorial number system: count the
// subsets that precede by choosing a smaller element at some position.
std::uint64_t rank_of(std::span<const int> elements, int n) {
  const int k = static_cast<int>(elements.size());
  std::uint64_t r = 0;
  int prev = 0;
  for (int i = 0; i < k; ++i) {
    for (int v = prev + 1; v < elements[i]; ++v) {
      r += binomial_u64(n - v, k - 1 - i);
    }
    prev = elements[i];
  }
  return r;
}

}  // namespace

SubsetIndex::SubsetIndex(std::vector<int> elements, int ambient)
    : elements_(std::move(elements)), ambient_(ambient) {
  check_domain(ambient_, static_cast<int>(elements_.size()));
  int prev = 0;
  for (int e : elements_) {
    if (e <= prev || e > ambient_) {
      throw std::domain_error(
          "subset elements must be strictly increasing within [1, n]");
    }
    prev = e;
  }
  rank_ = rank_of(elements_, ambient_);
}

SubsetIndex SubsetIndex::from_rank(int ambient, int k, std::uint64_t rank) {
  return unrank(ambient, k, rank);
}

Integer binomial(int n, int k) {
  check_domain(n, k);
  if (k > n - k) k = n - k;
  Integer c = 1;
  for (int i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;  // exact: C(m, i) is an integer at every step
  }
  return c;
}

std::uint64_t binomial_u64(int n, int k) {
  Integer c = binomial(n, k);
  if (c > std::numeric_limits<std::uint64_t>::max()) {
    throw std::overflow_error("binomial(" + std::to_string(n) + "," +
                              std::to_string(k) +
                              ") does not fit a 64-bit index");
  }
  return c.convert_to<std::uint64_t>();
}

std::vector<SubsetIndex> k_subsets(int n, int k) {
  check_domain(n, k);
  const std::uint64_t count = binomial_u64(n, k);
  std::vector<SubsetIndex> out;
  out.reserve(count);

  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;

  for (std::uint64_t r = 0; r < count; ++r) {
    out.push_back(SubsetIndex(cur, n));
    // lexicographic successor
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

SubsetIndex unrank(int n, int k, std::uint64_t rank) {
  check_domain(n, k);
  const std::uint64_t count = binomial_u64(n, k);
  if (rank >= count) {
    throw std::domain_error("rank " + std::to_string(rank) +
                            " out of range for C(" + std::to_string(n) + "," +
                            std::to_string(k) + ")");
  }
  std::vector<int> elements;
  elements.reserve(k);
  int v = 1;
  std::uint64_t r = rank;
  for (int i = 0; i < k; ++i) {
    for (;; ++v) {
      const std::uint64_t block = binomial_u64(n - v, k - 1 - i);
      if (r < block) break;
      r -= block;
    }
    elements.push_back(v);
    ++v;
  }
  return SubsetIndex(std::move(elements), n);
}

std::string to_string(const SubsetIndex& s) {
  std::string out = "{";
  const auto& e = s.elements();
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(e[i]);
  }
  out += "}";
  return out;
}

}  // namespace kvol
