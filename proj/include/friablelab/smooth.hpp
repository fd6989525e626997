#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "friablelab/arith.hpp"

namespace friablelab {

// Number of integers n with 1 <= n <= x, i.e. floor(x) clamped at 0.
std::uint64_t floor_count(double x);

bool is_smooth(std::uint64_t n, double y, const FactorTable& t);

enum class PsiMethod { scan, recurrence };

// Psi(x, y) = #{n <= x : P+(n) <= y}.
//  scan:       walks n <= x through the factor table (x <= t.limit()).
//  recurrence: Psi(x, p_k) = Psi(x, p_{k-1}) + Psi(x/p_k, p_k), memoized; only
//              needs the primes <= min(x, y) from the table.
std::uint64_t psi(double x, double y, const FactorTable& t, PsiMethod method = PsiMethod::scan);

// Smooth n <= x with gcd(n, q) = 1.
std::uint64_t psi_coprime(double x, double y, std::uint64_t q, const FactorTable& t);

// Smooth n <= x with n = a (mod q).
std::uint64_t psi_progression(double x, double y, std::int64_t a, std::uint64_t q,
                              const FactorTable& t);

// E(x,y;a,q) = Psi(x,y;a,q) - Psi_q(x,y)/phi(q), held exactly as
// error_numerator / phi_q.
struct ProgressionErrorRow {
  std::uint64_t q;
  std::uint64_t a;  // reduced representative in [0, q)
  std::uint64_t psi_aq;
  std::uint64_t psi_q;
  std::uint64_t phi_q;
  std::int64_t error_numerator;  // phi_q * psi_aq - psi_q

  double psi_q_over_phi() const { return static_cast<double>(psi_q) / static_cast<double>(phi_q); }
  double error() const {
    return static_cast<double>(error_numerator) / static_cast<double>(phi_q);
  }
  double abs_error() const;
};

// Throws DomainError when gcd(a, q) > 1.
ProgressionErrorRow progression_error(double x, double y, std::int64_t a, std::uint64_t q,
                                      const FactorTable& t);

enum class ProfileMode { fixed_a, max_a };

struct ErrorProfileRow {
  double theta;
  std::uint64_t Q;
  double sum_abs_E;
  double normalized;  // sum_abs_E / Psi(x, y)
};

struct ErrorProfile {
  double x;
  double y;
  std::int64_t a1;
  std::int64_t a2;
  ProfileMode mode;
  std::uint64_t psi;
  std::vector<ErrorProfileRow> rows;
};

// floor(x^theta), robust against pow() landing just below an exact integer.
std::uint64_t modulus_bound(double x, double theta);

// For each theta: sum over q <= x^theta of |E(x,y; a1*inv(a2), q)| over
// q with gcd(q, a1*a2) = 1 (fixed_a), or of max_{(b,q)=1} |E(x,y;b,q)|
// (max_a). Rows follow theta_grid order. Per-q terms are reduced in
// increasing q whatever the thread count, so output is thread-independent.
ErrorProfile error_profile(double x, double y, std::int64_t a, std::span<const double> theta_grid,
                           ProfileMode mode, const FactorTable& t, std::int64_t a2 = 1,
                           unsigned threads = 1);

struct CanonicalTriple {
  std::uint64_t n0;
  std::uint64_t n1;
  std::uint64_t n2;

  friend bool operator==(const CanonicalTriple&, const CanonicalTriple&) = default;
};

// The factorization n = n0*n1*n2 with
//   N2 < n2 <= N2*P-(n2), P+(n2) <= y,
//   N1 < n1 <= N1*P-(n1), P+(n1) <= P-(n2),
//   P+(n0) <= P-(n1).
// Requires P+(n) <= y and n > y*N1*N2 (DomainError otherwise).
CanonicalTriple canonical_triple(std::uint64_t n, double y, double N1, double N2,
                                 const FactorTable& t);

// True when (n0, n1, n2) satisfies the admissibility conditions above.
bool is_admissible_triple(const CanonicalTriple& tr, double y, double N1, double N2,
                          const FactorTable& t);

}  // namespace friablelab
