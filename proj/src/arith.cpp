#include "friablelab/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "friablelab/errors.hpp"

namespace friablelab {

FactorTable::FactorTable(std::uint64_t limit, std::uint64_t cap) : limit_(limit) {
  if (limit < 2 || limit > cap) {
    throw CapacityError("factor table limit " + std::to_string(limit) +
                        " outside [2, " + std::to_string(cap) + "]");
  }
  spf_.assign(limit + 1, 0);
  // Linear sieve: every composite n is crossed out exactly once, by its
  // smallest prime factor.
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    const std::uint32_t si = spf_[i];
    for (std::uint32_t p : primes_) {
      if (p > si || static_cast<std::uint64_t>(p) * i > limit) break;
      spf_[static_cast<std::uint64_t>(p) * i] = p;
    }
  }
}

void FactorTable::check(std::uint64_t n) const {
  if (n == 0 || n > limit_) {
    throw CapacityError(std::to_string(n) + " outside factor table [1, " +
                        std::to_string(limit_) + "]");
  }
}

std::uint32_t FactorTable::spf(std::uint64_t n) const {
  check(n);
  return n == 1 ? 1 : spf_[n];
}

bool FactorTable::is_prime(std::uint64_t n) const {
  check(n);
  return n >= 2 && spf_[n] == n;
}

std::span<const std::uint32_t> FactorTable::primes_up_to(double bound) const {
  if (!(bound >= 2.0)) return {};
  auto end = std::upper_bound(primes_.begin(), primes_.end(),
                              bound >= static_cast<double>(limit_)
                                  ? static_cast<std::uint32_t>(limit_)
                                  : static_cast<std::uint32_t>(std::floor(bound)));
  return {primes_.data(), static_cast<std::size_t>(end - primes_.begin())};
}

std::vector<PrimePower> FactorTable::factorize(std::uint64_t n) const {
  check(n);
  std::vector<PrimePower> out;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  return out;
}

std::uint64_t FactorTable::largest_prime_factor(std::uint64_t n) const {
  check(n);
  std::uint64_t best = 1;
  while (n > 1) {
    best = spf_[n];
    n /= spf_[n];
  }
  return best;
}

std::vector<std::uint32_t> FactorTable::largest_prime_factors(std::uint64_t up_to) const {
  if (up_to > limit_) {
    throw CapacityError("largest-prime-factor table up to " + std::to_string(up_to) +
                        " exceeds factor table limit " + std::to_string(limit_));
  }
  std::vector<std::uint32_t> lpf(up_to + 1, 0);
  if (up_to >= 1) lpf[1] = 1;
  for (std::uint64_t n = 2; n <= up_to; ++n) {
    lpf[n] = std::max(spf_[n], lpf[n / spf_[n]]);
  }
  return lpf;
}

std::span<const std::uint32_t> FactorTable::lpf() const {
  std::call_once(lpf_cache_->once,
                 [this] { lpf_cache_->values = largest_prime_factors(limit_); });
  return lpf_cache_->values;
}

std::vector<std::uint64_t> FactorTable::distinct_primes(std::uint64_t n) const {
  std::vector<std::uint64_t> out;
  for (const auto& pp : factorize(n)) out.push_back(pp.prime);
  return out;
}

FactorTable build_factor_table(std::uint64_t limit, std::uint64_t cap) {
  return FactorTable(limit, cap);
}

std::vector<PrimePower> factorize(std::uint64_t n, const FactorTable& t) {
  return t.factorize(n);
}

ArithValues arith_functions(std::uint64_t n, const FactorTable& t) {
  const auto f = t.factorize(n);
  ArithValues v{1, n, 1, 0, 1, 1};
  for (const auto& [p, e] : f) {
    v.tau *= e + 1;
    v.phi = v.phi / p * (p - 1);
    v.mu = e > 1 ? 0 : -v.mu;
    ++v.omega;
  }
  if (!f.empty()) {
    v.p_minus = f.front().prime;
    v.p_plus = f.back().prime;
  }
  return v;
}

std::uint64_t euler_phi(std::uint64_t n, const FactorTable& t) {
  std::uint64_t phi = n;
  for (const auto& pp : t.factorize(n)) phi = phi / pp.prime * (pp.prime - 1);
  return phi;
}

std::uint64_t divisor_count(std::uint64_t n, const FactorTable& t) {
  std::uint64_t tau = 1;
  for (const auto& pp : t.factorize(n)) tau *= pp.exponent + 1;
  return tau;
}

std::vector<std::uint64_t> divisors(std::uint64_t n, const FactorTable& t) {
  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : t.factorize(n)) {
    const std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t gcd(std::int64_t a, std::int64_t b) {
  std::uint64_t x = a < 0 ? 0 - static_cast<std::uint64_t>(a) : static_cast<std::uint64_t>(a);
  std::uint64_t y = b < 0 ? 0 - static_cast<std::uint64_t>(b) : static_cast<std::uint64_t>(b);
  return std::gcd(x, y);
}

std::uint64_t mod_reduce(std::int64_t a, std::uint64_t q) {
  if (q == 0) throw DomainError("modulus must be positive");
  if (a >= 0) return static_cast<std::uint64_t>(a) % q;
  const std::uint64_t r = (0 - static_cast<std::uint64_t>(a)) % q;
  return r == 0 ? 0 : q - r;
}

std::uint64_t mod_inverse(std::int64_t a, std::uint64_t q) {
  if (q == 0) throw DomainError("modulus must be positive");
  if (q == 1) return 0;
  const std::uint64_t r = mod_reduce(a, q);
  // Extended Euclid on (r, q) in signed 128-bit to stay exact.
  __int128 old_r = r, cur_r = q, old_s = 1, cur_s = 0;
  while (cur_r != 0) {
    const __int128 quo = old_r / cur_r;
    __int128 tmp = old_r - quo * cur_r;
    old_r = cur_r;
    cur_r = tmp;
    tmp = old_s - quo * cur_s;
    old_s = cur_s;
    cur_s = tmp;
  }
  if (old_r != 1) {
    throw NonInvertibleError(std::to_string(a) + " is not invertible modulo " +
                             std::to_string(q));
  }
  __int128 inv = old_s % static_cast<__int128>(q);
  if (inv < 0) inv += q;
  return static_cast<std::uint64_t>(inv);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t q) {
  std::uint64_t result = 1 % q;
  base %= q;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, q);
    base = mul_mod(base, base, q);
    exp >>= 1;
  }
  return result;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw CapacityError("64-bit overflow in " + std::to_string(a) + " * " + std::to_string(b));
  }
  return out;
}

std::uint64_t divisor_count_trial(std::uint64_t n) {
  if (n == 0) throw DomainError("divisor count of 0");
  std::uint64_t tau = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    tau *= e + 1;
  }
  if (n > 1) tau *= 2;
  return tau;
}

}  // namespace friablelab
