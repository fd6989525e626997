#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace friablelab {

inline constexpr std::uint64_t kDefaultFactorCap = 200'000'000;

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Smallest-prime-factor table for 2..limit, built by a linear sieve.
// Immutable once constructed; safe to share between threads.
class FactorTable {
 public:
  // Throws CapacityError unless 2 <= limit <= cap.
  explicit FactorTable(std::uint64_t limit, std::uint64_t cap = kDefaultFactorCap);

  std::uint64_t limit() const { return limit_; }

  // Smallest prime factor of n, 2 <= n <= limit. spf(1) is reported as 1.
  std::uint32_t spf(std::uint64_t n) const;
  bool is_prime(std::uint64_t n) const;

  // All primes <= limit in increasing order.
  std::span<const std::uint32_t> primes() const { return primes_; }
  // Primes p <= bound (bound clamped to the table limit).
  std::span<const std::uint32_t> primes_up_to(double bound) const;

  // Prime factorization with strictly increasing primes; empty for n = 1.
  std::vector<PrimePower> factorize(std::uint64_t n) const;

  // Largest prime factor, with the convention P+(1) = 1.
  std::uint64_t largest_prime_factor(std::uint64_t n) const;

  // lpf[n] = P+(n) for 0 <= n <= up_to, built in one pass from spf.
  // lpf[0] = 0, lpf[1] = 1.
  std::vector<std::uint32_t> largest_prime_factors(std::uint64_t up_to) const;

  // Cached P+ table over the whole range, built on first use (thread-safe).
  std::span<const std::uint32_t> lpf() const;

  // Distinct primes dividing n.
  std::vector<std::uint64_t> distinct_primes(std::uint64_t n) const;

 private:
  void check(std::uint64_t n) const;

  struct LpfCache {
    std::once_flag once;
    std::vector<std::uint32_t> values;
  };

  std::uint64_t limit_;
  std::shared_ptr<LpfCache> lpf_cache_ = std::make_shared<LpfCache>();
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

FactorTable build_factor_table(std::uint64_t limit, std::uint64_t cap = kDefaultFactorCap);

std::vector<PrimePower> factorize(std::uint64_t n, const FactorTable& t);

struct ArithValues {
  std::uint64_t tau;
  std::uint64_t phi;
  int mu;
  unsigned omega;
  std::uint64_t p_plus;
  std::uint64_t p_minus;
};

ArithValues arith_functions(std::uint64_t n, const FactorTable& t);

std::uint64_t euler_phi(std::uint64_t n, const FactorTable& t);
std::uint64_t divisor_count(std::uint64_t n, const FactorTable& t);
// All positive divisors of n in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t n, const FactorTable& t);

std::uint64_t gcd(std::int64_t a, std::int64_t b);

// a^{-1} mod q in [0, q). q = 1 gives 0. Throws NonInvertibleError when
// gcd(a, q) > 1 and DomainError for q = 0.
std::uint64_t mod_inverse(std::int64_t a, std::uint64_t q);

// Representative of a mod q in [0, q).
std::uint64_t mod_reduce(std::int64_t a, std::uint64_t q);

// (a * b) mod q without overflow.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t q);

// Multiplication that throws CapacityError on 64-bit overflow.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

// Divisor count and distinct prime count by trial division, for moduli that
// may lie outside any table.
std::uint64_t divisor_count_trial(std::uint64_t n);

}  // namespace friablelab
