#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sqmult/repr.hpp"

using namespace sqmult::repr;
using Pairs = std::vector<SquarePair>;
using Splits = std::vector<FourSplit>;
using Ints = std::vector<std::uint64_t>;

namespace {

// Plain reachability table: reach[k][n] iff n is a sum of exactly k nonzero
// squares. Shares no code with the library search.
std::vector<std::vector<bool>> reach_table(std::uint64_t max_n, unsigned max_k) {
  std::vector<std::vector<bool>> reach(max_k + 1, std::vector<bool>(max_n + 1, false));
  reach[0][0] = true;
  for (unsigned k = 1; k <= max_k; ++k)
    for (std::uint64_t n = 1; n <= max_n; ++n)
      for (std::uint64_t a = 1; a * a <= n && !reach[k][n]; ++a)
        if (reach[k - 1][n - a * a]) reach[k][n] = true;
  return reach;
}

}  // namespace

TEST_CASE("two_square_reps") {
  CHECK(two_square_reps(2) == Pairs{{1, 1}});
  CHECK(two_square_reps(3).empty());
  CHECK(two_square_reps(25) == Pairs{{3, 4}});
  CHECK(two_square_reps(50) == Pairs{{1, 7}, {5, 5}});
  CHECK(two_square_reps(1).empty());
  CHECK(two_square_reps(325) == two_square_reps(325));
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    auto reps = two_square_reps(n);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      CHECK(reps[i].value() == n);
      CHECK(reps[i].a <= reps[i].b);
      if (i > 0) CHECK(reps[i - 1].a < reps[i].a);
    }
  }
}

TEST_CASE("is_two_square") {
  CHECK_FALSE(is_two_square(9));
  CHECK(is_two_square(8));
  CHECK_FALSE(is_two_square(11));
  CHECK_FALSE(is_two_square(4));

  SquareSums small(50);
  for (std::uint64_t n = 1; n <= 500; ++n)
    CHECK(small.is_two_square(n) == !two_square_reps(n).empty());
}

TEST_CASE("four_splits") {
  CHECK(four_splits(4) == Splits{{2, 2}});
  CHECK(four_splits(7) == Splits{{2, 5}});
  CHECK(four_splits(33) == Splits{{8, 25}, {13, 20}});
  CHECK(four_splits(29).empty());
  CHECK(four_splits(2).empty());

  auto reach = reach_table(5000, 4);
  for (std::uint64_t n = 2; n <= 5000; ++n) {
    auto splits = four_splits(n);
    REQUIRE(splits.empty() == !reach[4][n]);
    for (std::size_t i = 0; i < splits.size(); ++i) {
      CHECK(splits[i].total() == n);
      CHECK(splits[i].s <= splits[i].t);
      if (i > 0) CHECK(splits[i - 1].s < splits[i].s);
    }
  }
}

TEST_CASE("brute_k_squares") {
  CHECK(brute_k_squares(1, 1));
  CHECK_FALSE(brute_k_squares(33, 5));
  CHECK_FALSE(brute_k_squares(96, 4));
  CHECK(brute_k_squares(12, 4));
  CHECK_THROWS_AS(brute_k_squares(0, 3), std::invalid_argument);

  auto reach = reach_table(600, 8);
  SquareSumOracle oracle(600, 8);
  for (unsigned k = 1; k <= 8; ++k)
    for (std::uint64_t n = 1; n <= 600; ++n) CHECK(oracle.representable(n, k) == reach[k][n]);
}

TEST_CASE("oracle falls back to a sparse memo for large ranges") {
  SquareSumOracle oracle(400000, 4);
  CHECK_FALSE(oracle.representable(2 * 4 * 4 * 4 * 4 * 4 * 4 * 4 * 4, 4));  // 2*4^8
  CHECK(oracle.representable(399999, 4));
}

TEST_CASE("dubouis_predict") {
  CHECK_FALSE(dubouis_predict(41, 4));
  CHECK(dubouis_predict(12, 4));
  CHECK_FALSE(dubouis_predict(128, 4));
  CHECK(dubouis_predict(4, 4));
  CHECK(dubouis_predict(64, 4));
  CHECK_FALSE(dubouis_predict(14 * 4 * 4 * 4, 4));
  CHECK_THROWS_AS(dubouis_predict(10, 3), std::invalid_argument);
}

TEST_CASE("exceptions_up_to") {
  CHECK(exceptions_up_to(4, 100) == Ints{1, 2, 3, 5, 6, 8, 9, 11, 14, 17, 24, 29, 32, 41, 56, 96});
  CHECK(exceptions_up_to(5, 40) == Ints{1, 2, 3, 4, 6, 7, 9, 10, 12, 15, 18, 33});
  CHECK(exceptions_up_to(6, 20) == Ints{1, 2, 3, 4, 5, 7, 8, 10, 11, 13, 16, 19});
  CHECK_THROWS_AS(exceptions_up_to(2, 10), std::invalid_argument);
}

TEST_CASE("closed form agrees with exhaustive search") {
  auto reach = reach_table(1500, 12);
  for (unsigned k = 4; k <= 12; ++k)
    for (std::uint64_t n = 1; n <= 1500; ++n) REQUIRE(dubouis_predict(n, k) == reach[k][n]);
}
