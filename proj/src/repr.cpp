#include "sqmult/repr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sqmult::repr {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

ExceptionSpec ExceptionSpec::for_k(unsigned k) {
  if (k < 4)
    throw std::invalid_argument("no closed-form exception list for k = " + std::to_string(k) +
                                " (k must be >= 4)");
  ExceptionSpec spec;
  spec.k = k;
  if (k == 4) {
    spec.finite_exceptions = {1, 3, 5, 9, 11, 17, 29, 41};
    spec.geometric_seeds = {2, 6, 14};
    return spec;
  }
  for (std::uint64_t i = 1; i < k; ++i) spec.finite_exceptions.insert(i);
  for (std::uint64_t offset : {1, 2, 4, 5, 7, 10, 13}) spec.finite_exceptions.insert(k + offset);
  if (k == 5) spec.finite_exceptions.insert(33);
  return spec;
}

bool ExceptionSpec::excludes(std::uint64_t n) const {
  if (finite_exceptions.count(n)) return true;
  if (geometric_seeds.empty() || n == 0) return false;
  while (n % 4 == 0) n /= 4;
  return geometric_seeds.count(n) > 0;
}

std::vector<SquarePair> two_square_reps(std::uint64_t n) {
  std::vector<SquarePair> reps;
  for (std::uint64_t a = 1; 2 * a * a <= n; ++a) {
    std::uint64_t rest = n - a * a;
    std::uint64_t b = isqrt(rest);
    if (b * b == rest) reps.push_back({a, b});
  }
  return reps;
}

namespace {

bool two_square_direct(std::uint64_t n) {
  for (std::uint64_t a = 1; 2 * a * a <= n; ++a) {
    std::uint64_t rest = n - a * a;
    std::uint64_t b = isqrt(rest);
    if (b * b == rest) return true;
  }
  return false;
}

}  // namespace

SquareSums::SquareSums(std::uint64_t bound) : bound_(bound), member_(bound + 1, false) {
  for (std::uint64_t a = 1; 2 * a * a <= bound; ++a)
    for (std::uint64_t b = a; a * a + b * b <= bound; ++b) member_[a * a + b * b] = true;
}

bool SquareSums::is_two_square(std::uint64_t n) const {
  if (n <= bound_) return member_[n];
  return two_square_direct(n);
}

std::vector<FourSplit> SquareSums::four_splits(std::uint64_t n) const {
  std::vector<FourSplit> splits;
  for (std::uint64_t s = 2; 2 * s <= n; ++s)
    if (is_two_square(s) && is_two_square(n - s)) splits.push_back({s, n - s});
  return splits;
}

const SquareSums& SquareSums::shared() {
  static const SquareSums table(1u << 16);
  return table;
}

bool is_two_square(std::uint64_t n) { return SquareSums::shared().is_two_square(n); }

std::vector<FourSplit> four_splits(std::uint64_t n) { return SquareSums::shared().four_splits(n); }

SquareSumOracle::SquareSumOracle(std::uint64_t max_n, unsigned max_k)
    : max_n_(max_n), max_k_(max_k), max_cap_(isqrt(max_n)) {
  constexpr std::size_t kDenseLimit = std::size_t{1} << 26;
  std::size_t cells = (max_n + 1) * (max_k + 1) * (max_cap_ + 1);
  if (cells <= kDenseLimit) memo_.assign(cells, 0);
}

std::size_t SquareSumOracle::slot(std::uint64_t n, unsigned k, std::uint64_t cap) const {
  return (n * (max_k_ + 1) + k) * (max_cap_ + 1) + cap;
}

bool SquareSumOracle::representable(std::uint64_t n, unsigned k) {
  if (n > max_n_ || k > max_k_)
    throw std::out_of_range("oracle sized for n <= " + std::to_string(max_n_) +
                            ", k <= " + std::to_string(max_k_));
  return search(n, k, isqrt(n));
}

bool SquareSumOracle::search(std::uint64_t n, unsigned k, std::uint64_t cap) {
  if (k == 0) return n == 0;
  if (n < k) return false;
  cap = std::min(cap, isqrt(n - (k - 1)));
  if (cap == 0 || n > k * cap * cap) return false;
  const std::size_t key = slot(n, k, cap);
  if (!memo_.empty()) {
    if (memo_[key] != 0) return memo_[key] == 2;
  } else if (auto it = sparse_memo_.find(key); it != sparse_memo_.end()) {
    return it->second;
  }
  bool found = false;
  for (std::uint64_t a = cap; a >= 1 && !found; --a) found = search(n - a * a, k - 1, a);
  if (!memo_.empty())
    memo_[key] = found ? 2 : 1;
  else
    sparse_memo_[key] = found;
  return found;
}

bool brute_k_squares(std::uint64_t n, unsigned k) {
  if (n == 0 || k == 0) throw std::invalid_argument("brute_k_squares needs n >= 1 and k >= 1");
  SquareSumOracle oracle(n, k);
  return oracle.representable(n, k);
}

bool dubouis_predict(std::uint64_t n, unsigned k) {
  return !ExceptionSpec::for_k(k).excludes(n);
}

std::vector<std::uint64_t> exceptions_up_to(unsigned k, std::uint64_t limit) {
  const auto spec = ExceptionSpec::for_k(k);
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= limit; ++n)
    if (spec.excludes(n)) out.push_back(n);
  return out;
}

}  // namespace sqmult::repr
