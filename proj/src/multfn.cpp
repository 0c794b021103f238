#include "sqmult/multfn.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace sqmult::multfn {

std::vector<std::uint64_t> prime_power_parts(std::uint64_t n) {
  std::vector<std::uint64_t> parts;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    std::uint64_t q = 1;
    while (n % p == 0) {
      n /= p;
      q *= p;
    }
    parts.push_back(q);
  }
  if (n > 1) parts.push_back(n);
  return parts;
}

FactorSieve::FactorSieve(std::uint64_t bound) : bound_(bound), spf_(bound + 1, 0) {
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (spf_[i] != 0) continue;
    for (std::uint64_t j = i; j <= bound; j += i)
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
  }
}

std::uint64_t FactorSieve::smallest_factor(std::uint64_t n) const {
  if (n < 2 || n > bound_)
    throw std::out_of_range("smallest_factor(" + std::to_string(n) + ") outside [2, " +
                            std::to_string(bound_) + "]");
  return spf_[n];
}

bool FactorSieve::is_prime_power(std::uint64_t n) const {
  if (n < 2) return false;
  std::uint64_t p = smallest_factor(n);
  while (n % p == 0) n /= p;
  return n == 1;
}

std::vector<PrimePower> FactorSieve::factorize(std::uint64_t n) const {
  if (n == 0 || n > bound_)
    throw std::out_of_range("cannot factorize " + std::to_string(n) + " with sieve bound " +
                            std::to_string(bound_));
  std::vector<PrimePower> parts;
  while (n > 1) {
    PrimePower pp{spf_[n], 0, 1};
    while (n % pp.prime == 0) {
      n /= pp.prime;
      pp.value *= pp.prime;
      ++pp.exponent;
    }
    parts.push_back(pp);
  }
  return parts;
}

MultFn::MultFn(std::uint64_t bound) : sieve_(bound) {
  if (bound == 0) throw std::invalid_argument("MultFn bound must be positive");
}

MultFn::MultFn(std::uint64_t bound, const PrimePowerRule& rule) : MultFn(bound) {
  for (std::uint64_t q = 2; q <= bound; ++q) {
    if (!sieve_.is_prime_power(q)) continue;
    auto parts = sieve_.factorize(q);
    Rational value = rule(parts.front());
    if (value != 0) values_.emplace(q, value);
  }
}

void MultFn::set_prime_power(std::uint64_t q, const Rational& value) {
  if (q < 2 || q > bound() || !sieve_.is_prime_power(q))
    throw std::invalid_argument(std::to_string(q) + " is not a prime power within the bound");
  if (value == 0)
    values_.erase(q);
  else
    values_[q] = value;
}

Rational MultFn::evaluate(std::uint64_t n) const {
  if (n == 0 || n > bound())
    throw std::out_of_range("evaluate(" + std::to_string(n) + ") outside [1, " +
                            std::to_string(bound()) + "]");
  Rational product = 1;
  for (const auto& part : sieve_.factorize(n)) {
    auto it = values_.find(part.value);
    if (it == values_.end()) return 0;
    product *= it->second;
  }
  return product;
}

std::vector<Rational> MultFn::table(std::uint64_t limit) const {
  std::vector<Rational> out(limit + 1, 0);
  for (std::uint64_t n = 1; n <= limit; ++n) out[n] = evaluate(n);
  return out;
}

std::string_view to_string(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::identity: return "identity";
    case FamilyTag::zero: return "zero";
    case FamilyTag::case3: return "case3";
    case FamilyTag::case4: return "case4";
    case FamilyTag::case5: return "case5";
    case FamilyTag::case_f3_only: return "case_f3_only";
  }
  return "unknown";
}

std::optional<FamilyTag> family_tag_from_string(std::string_view text) {
  for (auto tag : {FamilyTag::identity, FamilyTag::zero, FamilyTag::case3, FamilyTag::case4,
                   FamilyTag::case5, FamilyTag::case_f3_only})
    if (to_string(tag) == text) return tag;
  return std::nullopt;
}

void FamilySpec::validate() const {
  const auto need = [&](const Rational& value, const char* name) {
    if (value == 0)
      throw std::invalid_argument(std::string(to_string(tag)) + " requires " + name + " != 0");
  };
  switch (tag) {
    case FamilyTag::identity:
    case FamilyTag::zero: break;
    case FamilyTag::case3:
      need(y, "y = f(3)");
      need(w, "w = f(9)");
      break;
    case FamilyTag::case4: need(w, "w = f(9)"); break;
    case FamilyTag::case5: need(v, "v = f(11)"); break;
    case FamilyTag::case_f3_only: need(y, "y = f(3)"); break;
  }
}

MultFn make_family(const FamilySpec& spec, std::uint64_t bound) {
  spec.validate();
  if (spec.tag == FamilyTag::identity)
    return MultFn(bound, [](const PrimePower& pp) { return Rational(pp.value); });

  MultFn f(bound);
  const auto put = [&](std::uint64_t q, const Rational& value) {
    if (q <= bound) f.set_prime_power(q, value);
  };
  switch (spec.tag) {
    case FamilyTag::case3:
      put(3, spec.y);
      put(9, spec.w);
      break;
    case FamilyTag::case4: put(9, spec.w); break;
    case FamilyTag::case5: put(11, spec.v); break;
    case FamilyTag::case_f3_only: put(3, spec.y); break;
    default: break;
  }
  return f;
}

MultFn make_power_function(unsigned exponent, std::uint64_t bound) {
  return MultFn(bound, [exponent](const PrimePower& pp) {
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), pp.value, exponent);
    return Rational(v);
  });
}

namespace {

template <typename Work>
std::vector<Violation> run_partitioned(std::uint64_t first, std::uint64_t last, unsigned jobs,
                                       Work work) {
  std::vector<Violation> merged;
  if (first > last) return merged;
  jobs = std::max(1u, jobs);
  const std::uint64_t span = last - first + 1;
  if (jobs == 1 || span < 2 * jobs) {
    work(first, last, merged);
  } else {
    std::vector<std::vector<Violation>> parts(jobs);
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (span + jobs - 1) / jobs;
    for (unsigned j = 0; j < jobs; ++j) {
      std::uint64_t lo = first + j * chunk;
      if (lo > last) break;
      std::uint64_t hi = std::min(last, lo + chunk - 1);
      threads.emplace_back([&, j, lo, hi] { work(lo, hi, parts[j]); });
    }
    for (auto& t : threads) t.join();
    for (auto& part : parts) merged.insert(merged.end(), part.begin(), part.end());
  }
  std::sort(merged.begin(), merged.end(), [](const Violation& a, const Violation& b) {
    const auto key = [](const Violation& v) {
      if (const auto* s = std::get_if<repr::FourSplit>(&v.split)) return s->s;
      return std::get<CoprimePair>(v.split).m;
    };
    return std::pair(a.n, key(a)) < std::pair(b.n, key(b));
  });
  return merged;
}

}  // namespace

std::vector<Violation> check_functional_equation(std::span<const Rational> table,
                                                 std::uint64_t bound, unsigned jobs) {
  if (table.empty() || bound >= table.size())
    throw std::invalid_argument("value table does not cover bound " + std::to_string(bound));
  repr::SquareSums sums(bound);
  return run_partitioned(2, bound, jobs, [&](std::uint64_t lo, std::uint64_t hi,
                                             std::vector<Violation>& out) {
    Rational rhs;
    for (std::uint64_t n = lo; n <= hi; ++n) {
      for (const auto& split : sums.four_splits(n)) {
        rhs = table[split.s] + table[split.t];
        if (table[n] != rhs) out.push_back({n, split, table[n], rhs});
      }
    }
  });
}

std::vector<Violation> check_functional_equation(const MultFn& f, std::uint64_t bound,
                                                 unsigned jobs) {
  if (bound > f.bound())
    throw std::invalid_argument("check bound " + std::to_string(bound) +
                                " exceeds function bound " + std::to_string(f.bound()));
  auto table = f.table(bound);
  return check_functional_equation(std::span<const Rational>(table), bound, jobs);
}

std::vector<Violation> check_multiplicativity(std::span<const Rational> table) {
  if (table.size() < 2 || table[1] != 1)
    throw std::invalid_argument("a multiplicative table must have f(1) = 1");
  const std::uint64_t bound = table.size() - 1;
  std::vector<Violation> out;
  for (std::uint64_t m = 2; m * (m + 1) <= bound; ++m) {
    for (std::uint64_t mp = m + 1; m * mp <= bound; ++mp) {
      if (std::gcd(m, mp) != 1) continue;
      Rational rhs = table[m] * table[mp];
      if (table[m * mp] != rhs) out.push_back({m * mp, CoprimePair{m, mp}, table[m * mp], rhs});
    }
  }
  return out;
}

}  // namespace sqmult::multfn
