#include <numeric>

#include "doctest.h"
#include "friablelab/arith.hpp"
#include "friablelab/errors.hpp"

using namespace friablelab;

namespace {

std::uint64_t trial_spf(std::uint64_t n) {
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return p;
  }
  return n;
}

int brute_mu(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

}  // namespace

TEST_CASE("smallest prime factors") {
  const FactorTable t(10);
  const std::uint32_t expect[] = {2, 3, 2, 5, 2, 7, 2, 3, 2};
  for (std::uint64_t n = 2; n <= 10; ++n) CHECK(t.spf(n) == expect[n - 2]);
  CHECK(FactorTable(2).spf(2) == 2);
  CHECK(FactorTable(30030).spf(30030) == 2);

  const FactorTable big(100'000);
  for (std::uint64_t n = 2; n <= 100'000; ++n) REQUIRE(big.spf(n) == trial_spf(n));
  CHECK(big.primes().size() == 9592);
}

TEST_CASE("capacity limits") {
  CHECK_THROWS_AS(FactorTable(1), CapacityError);
  CHECK_THROWS_AS(FactorTable(1000, 100), CapacityError);
  const FactorTable t(100);
  CHECK_THROWS_AS(t.factorize(101), CapacityError);
  CHECK_THROWS_AS(arith_functions(1000, t), CapacityError);
}

TEST_CASE("factorize") {
  const FactorTable t(100'000);
  CHECK(t.factorize(12) == std::vector<PrimePower>{{2, 2}, {3, 1}});
  CHECK(t.factorize(1).empty());
  CHECK(t.factorize(97) == std::vector<PrimePower>{{97, 1}});
  for (std::uint64_t n = 1; n <= 100'000; ++n) {
    std::uint64_t prod = 1, last = 0;
    for (auto [p, e] : t.factorize(n)) {
      REQUIRE(p > last);
      REQUIRE(trial_spf(p) == p);
      last = p;
      for (unsigned i = 0; i < e; ++i) prod *= p;
    }
    REQUIRE(prod == n);
  }
}

TEST_CASE("arithmetic functions") {
  const FactorTable t(10'000);
  const auto a = arith_functions(12, t);
  CHECK(a.tau == 6);
  CHECK(a.phi == 4);
  CHECK(a.mu == 0);
  CHECK(a.omega == 2);
  CHECK(a.p_plus == 3);
  CHECK(a.p_minus == 2);
  const auto one = arith_functions(1, t);
  CHECK(one.tau == 1);
  CHECK(one.phi == 1);
  CHECK(one.mu == 1);
  CHECK(one.omega == 0);
  CHECK(one.p_plus == 1);
  CHECK(one.p_minus == 1);
  CHECK(arith_functions(30, t).mu == -1);
  CHECK(arith_functions(30, t).omega == 3);

  for (std::uint64_t n = 1; n <= 10'000; ++n) {
    std::uint64_t phi_sum = 0;
    int mu_sum = 0;
    std::uint64_t tau = 0, phi = 0;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (std::gcd(d, n) == 1) ++phi;
      if (n % d) continue;
      ++tau;
      phi_sum += euler_phi(d, t);
      mu_sum += arith_functions(d, t).mu;
    }
    REQUIRE(phi_sum == n);
    REQUIRE(mu_sum == (n == 1 ? 1 : 0));
    REQUIRE(euler_phi(n, t) == phi);
    REQUIRE(divisor_count(n, t) == tau);
    REQUIRE(divisor_count_trial(n) == tau);
    REQUIRE(arith_functions(n, t).mu == brute_mu(n));
    if (n >= 2) REQUIRE(arith_functions(n, t).p_minus == t.spf(n));
  }
}

TEST_CASE("divisors") {
  const FactorTable t(5000);
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    std::vector<std::uint64_t> brute;
    for (std::uint64_t d = 1; d <= n; ++d) {
      if (n % d == 0) brute.push_back(d);
    }
    REQUIRE(divisors(n, t) == brute);
  }
}

TEST_CASE("modular arithmetic") {
  CHECK(mod_inverse(3, 7) == 5);
  for (std::uint64_t q = 2; q <= 50; ++q) CHECK(mod_inverse(1, q) == 1);
  CHECK(mod_inverse(-1, 5) == 4);
  CHECK(mod_inverse(5, 1) == 0);
  CHECK_THROWS_AS(mod_inverse(4, 6), NonInvertibleError);
  CHECK_THROWS_AS(mod_inverse(1, 0), DomainError);
  for (std::uint64_t q = 1; q <= 200; ++q) {
    for (std::int64_t a = -300; a <= 300; ++a) {
      if (gcd(a, static_cast<std::int64_t>(q)) != 1) continue;
      REQUIRE(mul_mod(mod_reduce(a, q), mod_inverse(a, q), q) == 1 % q);
    }
  }
  CHECK(mod_reduce(-7, 5) == 3);
  CHECK(gcd(-12, 18) == 6);
  CHECK(gcd(0, 0) == 0);
  const std::uint64_t big = (std::uint64_t{1} << 62) + 57;
  CHECK(mul_mod(big - 1, big - 1, big) == 1);
  CHECK(pow_mod(2, 10, 1000) == 24);
  CHECK(pow_mod(3, 0, 7) == 1);
  CHECK(checked_mul(1u << 31, 1u << 31) == std::uint64_t{1} << 62);
  CHECK_THROWS_AS(checked_mul(std::uint64_t{1} << 40, std::uint64_t{1} << 40), CapacityError);
}
