#include "friablelab/smooth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <unordered_map>

#include "friablelab/errors.hpp"
#include "friablelab/parallel.hpp"

namespace friablelab {

namespace {

std::uint64_t checked_range(double x, const FactorTable& t) {
  const std::uint64_t n = floor_count(x);
  if (n > t.limit()) {
    throw CapacityError("x = " + std::to_string(n) + " exceeds factor table limit " +
                        std::to_string(t.limit()));
  }
  return n;
}

// Memoized Psi(X, p_k) over the first k primes.
class PsiRecurrence {
 public:
  explicit PsiRecurrence(std::span<const std::uint32_t> primes) : primes_(primes) {}

  std::uint64_t eval(std::uint64_t X, std::size_t k) {
    if (X == 0) return 0;
    if (k == 0) return 1;
    const std::uint64_t p = primes_[k - 1];
    if (p >= X) return X;
    if (k == 1) return static_cast<std::uint64_t>(std::bit_width(X));  // 1, 2, 4, ..., 2^j <= X
    const std::uint64_t key = X * (primes_.size() + 1) + k;
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const std::uint64_t v = eval(X, k - 1) + eval(X / p, k);
    memo_.emplace(key, v);
    return v;
  }

 private:
  std::span<const std::uint32_t> primes_;
  std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

}  // namespace

std::uint64_t floor_count(double x) {
  if (!(x >= 1.0)) return 0;
  return static_cast<std::uint64_t>(std::floor(x));
}

bool is_smooth(std::uint64_t n, double y, const FactorTable& t) {
  return static_cast<double>(t.largest_prime_factor(n)) <= y;
}

std::uint64_t psi(double x, double y, const FactorTable& t, PsiMethod method) {
  if (method == PsiMethod::scan) {
    const std::uint64_t X = checked_range(x, t);
    const auto lpf = t.lpf();
    std::uint64_t count = 0;
    for (std::uint64_t n = 1; n <= X; ++n) count += static_cast<double>(lpf[n]) <= y;
    return count;
  }
  const std::uint64_t X = floor_count(x);
  if (X == 0) return 0;
  if (y >= static_cast<double>(X)) return X;
  if (y > static_cast<double>(t.limit())) {
    throw CapacityError("recurrence needs primes up to " + std::to_string(y) +
                        " beyond factor table limit " + std::to_string(t.limit()));
  }
  const auto primes = t.primes_up_to(y);
  PsiRecurrence rec(primes);
  return rec.eval(X, primes.size());
}

std::uint64_t psi_coprime(double x, double y, std::uint64_t q, const FactorTable& t) {
  if (q == 0) throw DomainError("modulus must be positive");
  const std::uint64_t X = checked_range(x, t);
  const auto lpf = t.lpf();
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= X; ++n) {
    if (static_cast<double>(lpf[n]) <= y && std::gcd(n, q) == 1) ++count;
  }
  return count;
}

std::uint64_t psi_progression(double x, double y, std::int64_t a, std::uint64_t q,
                              const FactorTable& t) {
  const std::uint64_t r = mod_reduce(a, q);
  const std::uint64_t X = checked_range(x, t);
  const auto lpf = t.lpf();
  std::uint64_t count = 0;
  for (std::uint64_t n = r == 0 ? q : r; n <= X; n += q) {
    if (static_cast<double>(lpf[n]) <= y) ++count;
  }
  return count;
}

double ProgressionErrorRow::abs_error() const {
  const std::uint64_t mag = error_numerator < 0 ? 0 - static_cast<std::uint64_t>(error_numerator)
                                                : static_cast<std::uint64_t>(error_numerator);
  return static_cast<double>(mag) / static_cast<double>(phi_q);
}

ProgressionErrorRow progression_error(double x, double y, std::int64_t a, std::uint64_t q,
                                      const FactorTable& t) {
  if (q == 0) throw DomainError("modulus must be positive");
  if (gcd(a, static_cast<std::int64_t>(q)) != 1) {
    throw DomainError("E(x,y;a,q) needs gcd(a, q) = 1, got a = " + std::to_string(a) +
                      ", q = " + std::to_string(q));
  }
  ProgressionErrorRow row{};
  row.q = q;
  row.a = mod_reduce(a, q);
  row.psi_aq = psi_progression(x, y, a, q, t);
  row.psi_q = psi_coprime(x, y, q, t);
  row.phi_q = q == 1 ? 1 : euler_phi(q, t);
  row.error_numerator = static_cast<std::int64_t>(checked_mul(row.phi_q, row.psi_aq)) -
                        static_cast<std::int64_t>(row.psi_q);
  return row;
}

std::uint64_t modulus_bound(double x, double theta) {
  if (!(x >= 1.0)) return 0;
  const double v = std::exp(theta * std::log(x));
  // pow() can land an ulp or two below an exact integer such as 10^4^(1/2).
  return static_cast<std::uint64_t>(std::floor(v * (1.0 + 1e-12)));
}

ErrorProfile error_profile(double x, double y, std::int64_t a, std::span<const double> theta_grid,
                           ProfileMode mode, const FactorTable& t, std::int64_t a2,
                           unsigned threads) {
  if (mode == ProfileMode::fixed_a && (a == 0 || a2 == 0)) {
    throw DomainError("error profile needs a nonzero residue");
  }
  ErrorProfile prof{x, y, a, a2, mode, 0, {}};
  if (theta_grid.empty()) return prof;
  for (double th : theta_grid) {
    if (!(th > 0.0 && th < 1.0)) throw DomainError("theta must lie in (0, 1)");
  }

  const std::uint64_t X = checked_range(x, t);
  const auto lpf = t.lpf();
  std::vector<std::uint32_t> smooth;
  for (std::uint64_t n = 1; n <= X; ++n) {
    if (static_cast<double>(lpf[n]) <= y) smooth.push_back(static_cast<std::uint32_t>(n));
  }
  prof.psi = smooth.size();

  std::uint64_t q_max = 0;
  for (double th : theta_grid) q_max = std::max(q_max, modulus_bound(x, th));
  if (q_max > t.limit()) throw CapacityError("modulus range exceeds factor table");

  // term[q] = |E| for the class of interest (fixed_a) or the max over
  // reduced classes (max_a); zero for skipped q.
  std::vector<double> term(q_max + 1, 0.0);
  parallel_for(1, q_max + 1, threads, [&](std::size_t qi) {
    const std::uint64_t q = qi;
    if (mode == ProfileMode::fixed_a &&
        (gcd(a, static_cast<std::int64_t>(q)) != 1 || gcd(a2, static_cast<std::int64_t>(q)) != 1)) {
      return;
    }
    std::vector<std::uint64_t> counts(q, 0);
    for (std::uint32_t n : smooth) ++counts[n % q];
    std::uint64_t psi_q = 0;
    for (std::uint64_t b = 0; b < q; ++b) {
      if (std::gcd(b, q) == 1) psi_q += counts[b];
    }
    const std::uint64_t phi = q == 1 ? 1 : euler_phi(q, t);
    auto abs_num = [&](std::uint64_t cnt) {
      const std::uint64_t lhs = phi * cnt;
      return lhs >= psi_q ? lhs - psi_q : psi_q - lhs;
    };
    std::uint64_t num = 0;
    if (mode == ProfileMode::fixed_a) {
      const std::uint64_t cls = q == 1 ? 0 : mul_mod(mod_reduce(a, q), mod_inverse(a2, q), q);
      num = abs_num(counts[cls]);
    } else {
      for (std::uint64_t b = 0; b < q; ++b) {
        if (std::gcd(b, q) == 1) num = std::max(num, abs_num(counts[b]));
      }
    }
    term[q] = static_cast<double>(num) / static_cast<double>(phi);
  });

  for (double th : theta_grid) {
    ErrorProfileRow row{th, modulus_bound(x, th), 0.0, 0.0};
    for (std::uint64_t q = 1; q <= row.Q; ++q) row.sum_abs_E += term[q];
    row.normalized = prof.psi == 0 ? 0.0 : row.sum_abs_E / static_cast<double>(prof.psi);
    prof.rows.push_back(row);
  }
  return prof;
}

CanonicalTriple canonical_triple(std::uint64_t n, double y, double N1, double N2,
                                 const FactorTable& t) {
  if (!(N1 >= 1.0 && N2 >= 1.0)) throw DomainError("N1, N2 must be >= 1");
  const auto f = t.factorize(n);
  if (!f.empty() && static_cast<double>(f.back().prime) > y) {
    throw DomainError(std::to_string(n) + " is not y-smooth");
  }
  if (!(static_cast<long double>(n) > static_cast<long double>(y) * N1 * N2)) {
    throw DomainError(std::to_string(n) + " does not exceed y*N1*N2");
  }
  std::vector<std::uint64_t> primes;  // with multiplicity, nonincreasing
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    for (unsigned e = 0; e < it->exponent; ++e) primes.push_back(it->prime);
  }
  std::size_t i = 0;
  auto take_prefix = [&](double bound) {
    std::uint64_t prod = 1;
    while (i < primes.size() && !(static_cast<double>(prod) > bound)) prod *= primes[i++];
    if (!(static_cast<double>(prod) > bound)) {
      throw DomainError("prime factors of " + std::to_string(n) + " exhausted");
    }
    return prod;
  };
  CanonicalTriple tr{};
  tr.n2 = take_prefix(N2);
  tr.n1 = take_prefix(N1);
  tr.n0 = n / (tr.n1 * tr.n2);
  return tr;
}

bool is_admissible_triple(const CanonicalTriple& tr, double y, double N1, double N2,
                          const FactorTable& t) {
  if (tr.n0 == 0 || tr.n1 == 0 || tr.n2 == 0) return false;
  const auto n2 = arith_functions(tr.n2, t);
  const auto n1 = arith_functions(tr.n1, t);
  const auto n0 = arith_functions(tr.n0, t);
  const auto le = [](double a, double b) { return static_cast<long double>(a) <= b; };
  return static_cast<double>(tr.n2) > N2 &&
         le(static_cast<double>(tr.n2), N2 * static_cast<double>(n2.p_minus)) &&
         le(static_cast<double>(n2.p_plus), y) && static_cast<double>(tr.n1) > N1 &&
         le(static_cast<double>(tr.n1), N1 * static_cast<double>(n1.p_minus)) &&
         n1.p_plus <= n2.p_minus && n0.p_plus <= n1.p_minus;
}

}  // namespace friablelab
