#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "friablelab/characters.hpp"

namespace friablelab {

inline constexpr std::uint64_t kDispersionCap = 64;
inline constexpr double kDispersionCharCutoffCap = 16;

// alpha[i] = alpha_{M+1+i} on (M, 2M], likewise beta on (N, 2N] and lambda on
// (L, 2L]. Moduli r run over (R, 2R] with (r, a1 a2) = 1; Q_chi bounds the
// conductors entering omega.
struct TripleSequences {
  std::uint64_t M = 0, N = 0, L = 0;
  std::vector<cplx> alpha, beta, lambda;
  std::int64_t a1 = 1, a2 = 1;
  std::uint64_t R = 0;
  double Q_chi = 1;
  BumpSpec bump;
};

// Throws DomainError / CapacityError on malformed input.
void validate(const TripleSequences& ts);

// u_k = sum_{n l = k} beta_n lambda_l for k in (K, 4K], K = N L; u[i] = u_{K+1+i}.
struct Convolution {
  std::uint64_t K;
  std::vector<cplx> u;
  cplx at(std::uint64_t k) const { return k > K && k <= 4 * K ? u[k - K - 1] : cplx{}; }
};

Convolution convolve_u(std::span<const cplx> beta, std::uint64_t N, std::span<const cplx> lambda,
                       std::uint64_t L);

struct DispersionReport {
  double S1;
  cplx S2;
  double S3;
  double variance;  // S1 - 2 Re S2 + S3
  double scale;     // S1 + S3, the natural size for roundoff tolerances
  double delta;
  double cs_bound;  // sqrt(M R variance), with R the number of moduli summed
  std::uint64_t moduli;
};

// S1, S2, S3 through residue-class sums of u, then Delta by direct loops.
DispersionReport dispersion_terms(const TripleSequences& ts);

struct VarianceIdentity {
  double lhs;  // S1 - 2 Re S2 + S3
  double rhs;  // sum_r sum_{(m,r)=1} f(m) |A - B|^2, both computed from u_k directly
  double abs_err;
};

VarianceIdentity variance_identity_check(const TripleSequences& ts);

// Delta = sum_{R<r<=2R, (r,a1a2)=1} | sum_{m n l = a1 a2bar (r)} alpha beta lambda
//   - 1/phi(r) sum_{(mnl, r)=1} alpha beta lambda omega(m n l a1bar a2; r) |.
double dispersion_delta(const TripleSequences& ts);

double sine_integral(double x);

struct IndicatorFourier {
  double approx;
  double exact;
  double abs_err;
  double bound;  // (|theta| + 1/|theta|) / T
};

// 1/2 + (1/2 pi i) int_{1/T <= |t| <= T} e^{i theta t} dt / t
//   = 1/2 + sign(theta) (Si(|theta| T) - Si(|theta| / T)) / pi.
IndicatorFourier indicator_fourier(double theta, double T);

// Uniform double in [0, 1) from the top 53 bits of one generator output.
double uniform01(std::mt19937_64& rng);

// e(U) with U uniform, one generator draw per entry.
std::vector<cplx> random_unimodular(std::size_t n, std::mt19937_64& rng);

// alpha, beta, lambda drawn in that order from one mt19937_64(seed) stream;
// the result is validated.
TripleSequences random_triple(std::uint64_t M, std::uint64_t N, std::uint64_t L, std::uint64_t R,
                              double Q_chi, std::int64_t a1, std::int64_t a2, std::uint64_t seed);

struct IndexedValue {
  std::int64_t index;
  cplx value;
};

// CSV with header index,re,im. Throws ConfigError on malformed files.
std::vector<IndexedValue> read_sequence_csv(const std::string& path);
void write_sequence_csv(const std::string& path, std::span<const IndexedValue> rows);

// Places rows on (lo, lo + len]; ConfigError for indices outside that window.
std::vector<cplx> sequence_on_range(std::span<const IndexedValue> rows, std::uint64_t lo,
                                    std::uint64_t len);

}  // namespace friablelab
