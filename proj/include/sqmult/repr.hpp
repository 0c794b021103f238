#pragma once

#include <cstdint>
#include <set>
#include <unordered_map>
#include <vector>

namespace sqmult::repr {

/// n = a^2 + b^2 with 1 <= a <= b.
struct SquarePair {
  std::uint64_t a = 1;
  std::uint64_t b = 1;

  std::uint64_t value() const { return a * a + b * b; }
  friend bool operator==(const SquarePair&, const SquarePair&) = default;
};

/// n = s + t with s <= t and both s and t sums of two nonzero squares.
struct FourSplit {
  std::uint64_t s = 0;
  std::uint64_t t = 0;

  std::uint64_t total() const { return s + t; }
  friend bool operator==(const FourSplit&, const FourSplit&) = default;
};

/// Integers that are not sums of exactly k nonzero squares.
/// Each geometric seed g stands for the family g * 4^m, m >= 0.
struct ExceptionSpec {
  unsigned k = 4;
  std::set<std::uint64_t> finite_exceptions;
  std::set<std::uint64_t> geometric_seeds;

  /// Throws std::invalid_argument for k < 4.
  static ExceptionSpec for_k(unsigned k);

  bool excludes(std::uint64_t n) const;
};

std::uint64_t isqrt(std::uint64_t n);

/// All (a, b), 1 <= a <= b, a^2 + b^2 = n, ascending in a.
std::vector<SquarePair> two_square_reps(std::uint64_t n);

bool is_two_square(std::uint64_t n);

/// All splits n = s + t (s <= t) into two sums of two nonzero squares, ascending in s.
std::vector<FourSplit> four_splits(std::uint64_t n);

/// True iff n is a sum of exactly k nonzero squares, by exhaustive search.
/// Never consults ExceptionSpec.
bool brute_k_squares(std::uint64_t n, unsigned k);

/// Closed-form prediction of whether n is a sum of k nonzero squares (k >= 4).
bool dubouis_predict(std::uint64_t n, unsigned k);

/// Every n <= limit that dubouis_predict rejects, ascending.
std::vector<std::uint64_t> exceptions_up_to(unsigned k, std::uint64_t limit);

/// Membership table for sums of two nonzero squares, built once and then
/// read-only. Queries above the bound fall back to direct enumeration.
class SquareSums {
 public:
  explicit SquareSums(std::uint64_t bound);

  std::uint64_t bound() const { return bound_; }
  bool is_two_square(std::uint64_t n) const;
  std::vector<FourSplit> four_splits(std::uint64_t n) const;

  /// Shared table covering the desk-scale range used by the free functions.
  static const SquareSums& shared();

 private:
  std::uint64_t bound_;
  std::vector<bool> member_;
};

/// Memoized search for sums of exactly k nonzero squares. The memo is keyed by
/// (n, k, cap) where cap bounds the largest root still allowed, so each
/// representation is explored once in non-increasing order.
class SquareSumOracle {
 public:
  SquareSumOracle(std::uint64_t max_n, unsigned max_k);

  bool representable(std::uint64_t n, unsigned k);

 private:
  bool search(std::uint64_t n, unsigned k, std::uint64_t cap);
  std::size_t slot(std::uint64_t n, unsigned k, std::uint64_t cap) const;

  std::uint64_t max_n_;
  unsigned max_k_;
  std::uint64_t max_cap_;
  std::vector<std::uint8_t> memo_;  // 0 unknown, 1 false, 2 true
  std::unordered_map<std::size_t, bool> sparse_memo_;  // used when the dense table would be too large
};

}  // namespace sqmult::repr
