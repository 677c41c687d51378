#include <doctest.h>

#include "kvol/subsets.hpp"
#include "oracles.hpp"

using namespace kvol;

TEST_CASE("k_subsets enumerates in lexicographic order with ranks") {
  const auto subsets = k_subsets(3, 2);
  REQUIRE(subsets.size() == 3);
  CHECK(subsets[0].elements() == std::vector<int>{1, 2});
  CHECK(subsets[1].elements() == std::vector<int>{1, 3});
  CHECK(subsets[2].elements() == std::vector<int>{2, 3});
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    CHECK(subsets[i].rank() == i);
  }
}

TEST_CASE("k = 0 yields the single empty subset") {
  const auto subsets = k_subsets(5, 0);
  REQUIRE(subsets.size() == 1);
  CHECK(subsets[0].elements().empty());
  CHECK(subsets[0].rank() == 0);
  CHECK(to_string(subsets[0]) == "{}");
}

TEST_CASE("(5,3) matches brute-force bitmask enumeration") {
  const auto subsets = k_subsets(5, 3);
  const auto expected = oracles::bitmask_subsets(5, 3);
  REQUIRE(subsets.size() == 10);
  REQUIRE(subsets.size() == expected.size());
  CHECK(subsets.front().elements() == std::vector<int>{1, 2, 3});
  CHECK(subsets.back().elements() == std::vector<int>{3, 4, 5});
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    CHECK(subsets[i].elements() == expected[i]);
  }
}

TEST_CASE("rank and unrank are inverse") {
  CHECK(SubsetIndex({1, 2}, 3).rank() == 0);
  CHECK(unrank(3, 2, 2).elements() == std::vector<int>{2, 3});
  CHECK(unrank(8, 4, 37).rank() == 37);

  SUBCASE("round-trip over all ranks of C(8,4)") {
    for (std::uint64_t r = 0; r < 70; ++r) {
      const auto s = unrank(8, 4, r);
      CHECK(s.rank() == r);
      CHECK(SubsetIndex(s.elements(), 8).rank() == r);
    }
  }
}

TEST_CASE("binomial values") {
  CHECK(binomial(7, 0) == 1);
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(20, 10) == 184756);
  CHECK(binomial_u64(20, 10) == oracles::pascal_binomial(20, 10));
  // far past any fixed width; Pascal recurrence cross-checks exactness
  CHECK(binomial(200, 100) == binomial(199, 99) + binomial(199, 100));
  CHECK(binomial(200, 100) > boost::multiprecision::pow(Integer(10), 58));
}

TEST_CASE("binomial_u64 overflows explicitly, never wraps") {
  CHECK_THROWS_AS((void)binomial_u64(300, 150), std::overflow_error);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS((void)k_subsets(3, 4), std::domain_error);
  CHECK_THROWS_AS((void)k_subsets(0, 1), std::domain_error);
  CHECK_THROWS_AS((void)k_subsets(-1, 0), std::domain_error);
  CHECK_THROWS_AS((void)unrank(3, 2, 3), std::domain_error);
  CHECK_THROWS_AS(SubsetIndex({2, 2}, 3), std::domain_error);
  CHECK_THROWS_AS(SubsetIndex({0, 1}, 3), std::domain_error);
  CHECK_THROWS_AS(SubsetIndex({1, 4}, 3), std::domain_error);
}

TEST_CASE("exhaustive invariants for n <= 12") {
  for (int n = 0; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto subsets = k_subsets(n, k);
      REQUIRE(subsets.size() == binomial_u64(n, k));
      for (std::size_t i = 0; i < subsets.size(); ++i) {
        CHECK(subsets[i].rank() == i);
        CHECK(unrank(n, k, i).elements() == subsets[i].elements());
        if (i > 0) {
          CHECK(subsets[i - 1].elements() < subsets[i].elements());
        }
      }
    }
  }
}

TEST_CASE("serialization uses 1-based braces") {
  CHECK(to_string(SubsetIndex({1, 3, 4}, 5)) == "{1,3,4}");
}
